#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hosc/cli.hpp"

namespace hosc {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
  std::string text = "invalid configuration:";
  for (const auto& p : parts) text += "\n  - " + p;
  return text;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::optional<double> read_number(const json& doc, const char* key, bool required,
                                  std::vector<std::string>& problems) {
  if (!doc.contains(key)) {
    if (required) problems.push_back(std::string("missing required key \"") + key + "\"");
    return std::nullopt;
  }
  const auto& v = doc.at(key);
  if (!v.is_number()) {
    problems.push_back(std::string("\"") + key + "\" must be a number");
    return std::nullopt;
  }
  return v.get<double>();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

json RunConfig::to_json() const {
  json terms_json = json::array();
  for (const auto& t : terms) {
    terms_json.push_back({t.point.a_x, t.point.a_xi, t.coefficient.real(), t.coefficient.imag()});
  }
  return {{"alpha", alpha},  {"c0", c0},   {"terms", terms_json},
          {"nmax", nmax},    {"tol", tol}, {"epsilon", contour_epsilon()}};
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "JSON parse error at line " << line << ", column " << column << ": " << e.what();
    throw ConfigError({msg.str()});
  }
  if (!doc.is_object()) throw ConfigError({"top level must be a JSON object"});

  std::vector<std::string> problems;
  static const std::set<std::string> known{"alpha", "c0", "terms", "nmax", "tol", "epsilon"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) problems.push_back("unknown key \"" + key + "\"");
  }

  RunConfig config;
  bool potential_parsed = true;
  if (auto a = read_number(doc, "alpha", true, problems)) {
    config.alpha = *a;
  } else {
    potential_parsed = false;
  }
  if (auto c = read_number(doc, "c0", false, problems)) config.c0 = *c;
  if (auto t = read_number(doc, "tol", false, problems)) {
    if (*t > 0.0 && std::isfinite(*t)) {
      config.tol = *t;
    } else {
      problems.push_back("\"tol\" must be positive");
    }
  }
  config.epsilon = read_number(doc, "epsilon", false, problems);

  if (!doc.contains("nmax")) {
    problems.push_back("missing required key \"nmax\"");
  } else if (const auto& n = doc.at("nmax"); !n.is_number_integer()) {
    problems.push_back("\"nmax\" must be an integer");
  } else if (n.get<long long>() < 1 || n.get<long long>() > kMaxBasisSize) {
    problems.push_back("\"nmax\" must lie in [1, " + std::to_string(kMaxBasisSize) + "]");
  } else {
    config.nmax = static_cast<int>(n.get<long long>());
  }

  if (!doc.contains("terms")) {
    problems.push_back("missing required key \"terms\"");
    potential_parsed = false;
  } else if (!doc.at("terms").is_array()) {
    problems.push_back("\"terms\" must be an array of [a_x, a_xi, re, im]");
    potential_parsed = false;
  } else {
    const auto& terms = doc.at("terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& t = terms[i];
      const bool ok = t.is_array() && t.size() == 4 &&
                      std::all_of(t.begin(), t.end(), [](const json& x) { return x.is_number(); });
      if (!ok) {
        problems.push_back("terms[" + std::to_string(i) + "] must be [a_x, a_xi, re, im]");
        potential_parsed = false;
        continue;
      }
      config.terms.push_back({{t[0].get<double>(), t[1].get<double>()},
                              Complex(t[2].get<double>(), t[3].get<double>())});
    }
  }
  if (config.epsilon && !(*config.epsilon > 0.0 && *config.epsilon < config.alpha)) {
    problems.push_back("\"epsilon\" must lie in (0, alpha)");
  }
  if (potential_parsed) {
    try {
      validate(config.potential());
    } catch (const ValidationError& e) {
      problems.insert(problems.end(), e.violations().begin(), e.violations().end());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace hosc
