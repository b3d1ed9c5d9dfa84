#include "hosc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hosc {

namespace {

constexpr int kMaxQlSweeps = 60;
constexpr double kGaugeTolerance = 1e-12;

inline double cj(double x) { return x; }
inline Complex cj(Complex z) { return std::conj(z); }
inline double re(double x) { return x; }
inline double re(Complex z) { return z.real(); }
inline double sq_abs(double x) { return x * x; }
inline double sq_abs(Complex z) { return std::norm(z); }
inline double unit_phase(double x) { return x < 0.0 ? -1.0 : 1.0; }
inline Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r == 0.0 ? Complex(1.0, 0.0) : z / r;
}

template <class T>
T dot_step(T* row, const T* pv, const T* pw, const T* v, T* p, T pvr, T pwr, T vr, std::size_t lo,
           std::size_t hi);

// One fused sweep over the strictly lower part [lo, hi) of a row: apply the
// pending rank-2 update, then accumulate both halves of the symmetric
// matrix-vector product with the new reflector.
template <>
double dot_step<double>(double* row, const double* pv, const double* pw, const double* v,
                        double* p, double pvr, double pwr, double vr, std::size_t lo,
                        std::size_t hi) {
  double acc = 0.0;
#pragma omp simd reduction(+ : acc)
  for (std::size_t c = lo; c < hi; ++c) {
    const double x = row[c] - (pvr * pw[c] + pwr * pv[c]);
    row[c] = x;
    acc += x * v[c];
    p[c] += x * vr;
  }
  return acc;
}

template <>
Complex dot_step<Complex>(Complex* row, const Complex* pv, const Complex* pw, const Complex* v,
                          Complex* p, Complex pvr, Complex pwr, Complex vr, std::size_t lo,
                          std::size_t hi) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (std::size_t c = lo; c < hi; ++c) {
    const Complex x = row[c] - (pvr * std::conj(pw[c]) + pwr * std::conj(pv[c]));
    row[c] = x;
    const Complex xv = x * v[c];
    acc_re += xv.real();
    acc_im += xv.imag();
    p[c] += std::conj(x) * vr;
  }
  return {acc_re, acc_im};
}

// Householder reduction of a Hermitian (or real symmetric) matrix stored
// row-major in a[0..n*n), lower triangle only, to tridiagonal form. Each
// step's rank-2 update is deferred and fused into the next step's
// matrix-vector product, so the trailing block is streamed once per step.
template <class T>
void tridiagonalize(T* a, std::size_t n, std::vector<double>& diag, std::vector<double>& off) {
  diag.assign(n, 0.0);
  off.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return;

  std::vector<T> pv(n), pw(n), v(n), p(n);
  bool pending = false;

  for (std::size_t i = 0; i < n; ++i) {
    if (pending) {
      for (std::size_t r = i; r < n; ++r) {
        a[r * n + i] -= pv[r] * cj(pw[i]) + pw[r] * cj(pv[i]);
      }
    }
    diag[i] = re(a[i * n + i]);
    if (i + 1 == n) break;

    const T x0 = a[(i + 1) * n + i];
    double sigma = 0.0;
    for (std::size_t r = i + 2; r < n; ++r) sigma += sq_abs(a[r * n + i]);

    bool reflect = sigma > 0.0;
    double scale = 0.0;
    if (reflect) {
      const double beta = std::sqrt(sq_abs(x0) + sigma);
      const T alpha = -unit_phase(x0) * beta;
      std::fill(v.begin(), v.end(), T{});
      v[i + 1] = x0 - alpha;
      for (std::size_t r = i + 2; r < n; ++r) v[r] = a[r * n + i];
      scale = 1.0 / (beta * (beta + std::abs(x0)));
      off[i] = beta;
    } else {
      off[i] = std::abs(x0);
    }

    if (reflect) std::fill(p.begin(), p.end(), T{});
    for (std::size_t r = i + 1; r < n; ++r) {
      T* row = a + r * n;
      const T pvr = pending ? pv[r] : T{};
      const T pwr = pending ? pw[r] : T{};
      if (reflect) {
        const T acc = dot_step<T>(row, pv.data(), pw.data(), v.data(), p.data(), pvr, pwr,
                                  v[r], i + 1, r);
        if (pending) row[r] -= pvr * cj(pw[r]) + pwr * cj(pv[r]);
        p[r] += acc + row[r] * v[r];
      } else if (pending) {
        for (std::size_t c = i + 1; c <= r; ++c) row[c] -= pvr * cj(pw[c]) + pwr * cj(pv[c]);
      }
    }

    if (reflect) {
      T vhp{};
      for (std::size_t r = i + 1; r < n; ++r) {
        p[r] *= scale;
        vhp += cj(v[r]) * p[r];
      }
      const double k = 0.5 * scale * re(vhp);
      for (std::size_t r = 0; r <= i; ++r) {
        pv[r] = T{};
        pw[r] = T{};
      }
      for (std::size_t r = i + 1; r < n; ++r) {
        pv[r] = v[r];
        pw[r] = p[r] - k * v[r];
      }
      pending = true;
    } else {
      pending = false;
    }
  }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  if (off.size() + 1 != n) throw std::invalid_argument("tridiagonal_eigenvalues: size mismatch");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (sweeps++ == kMaxQlSweeps) {
          throw std::runtime_error("tridiagonal_eigenvalues: QL iteration did not converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

HermitianEigenResult hermitian_eigenvalues(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  HermitianEigenResult result;
  if (n == 0) return result;

  // Diagonal gauge D with conj(D) A D real on the first subdiagonal.
  std::vector<Complex> phase(n, Complex(1.0, 0.0));
  double max_abs = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c <= r; ++c) max_abs = std::max(max_abs, std::abs(a(r, c)));
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex z = a(k + 1, k);
    const double mag = std::abs(z);
    phase[k + 1] = mag > std::numeric_limits<double>::min() ? phase[k] * z / mag : phase[k];
  }

  std::vector<double> real(n * n, 0.0);
  std::vector<double> row_imag(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const Complex pr = std::conj(phase[r]);
    for (std::size_t c = 0; c < r; ++c) {
      const Complex s = pr * a(r, c) * phase[c];
      real[r * n + c] = s.real();
      row_imag[r] += std::abs(s.imag());
      row_imag[c] += std::abs(s.imag());
    }
    real[r * n + r] = a(r, r).real();
    row_imag[r] += std::abs(a(r, r).imag());
  }
  const double imag_bound = *std::max_element(row_imag.begin(), row_imag.end());

  std::vector<double> diag, off;
  if (imag_bound <= kGaugeTolerance * (1.0 + max_abs)) {
    tridiagonalize(real.data(), n, diag, off);
    result.path = ReductionPath::real_gauge;
    result.dropped_imaginary_bound = imag_bound;
  } else {
    std::vector<double>().swap(real);
    std::vector<Complex> work(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      std::copy(a.row(r), a.row(r) + r + 1, work.begin() + r * n);
    }
    tridiagonalize(work.data(), n, diag, off);
    result.path = ReductionPath::complex;
  }
  result.eigenvalues = tridiagonal_eigenvalues(std::move(diag), std::move(off));
  return result;
}

}  // namespace hosc
