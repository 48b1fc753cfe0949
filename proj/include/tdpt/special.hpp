#ifndef TDPT_SPECIAL_HPP
#define TDPT_SPECIAL_HPP

// Classical Jacobi polynomials, the X1 exceptional Jacobi family built from
// them, and the gamma-function machinery behind their normalization.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tdpt/errors.hpp"

namespace tdpt {

/// Jacobi parameters (alpha, beta); the weight (1-z)^alpha (1+z)^beta is
/// integrable on (-1, 1) only for alpha, beta > -1.
struct JacobiIndex {
  double alpha = 0.0;
  double beta = 0.0;

  bool valid() const noexcept { return alpha > -1.0 && beta > -1.0; }
  JacobiIndex shifted(double da, double db) const noexcept { return {alpha + da, beta + db}; }
};

namespace detail {

inline void require_degree(int n) {
  if (n < 0) throw DomainError("polynomial degree must be nonnegative, got " + std::to_string(n));
}

// Three-term recurrence; returns {P_n, P_{n-1}} with P_{-1} = 0.
inline std::array<double, 2> jacobi_pair(int n, double a, double b, double z) {
  double prev = 0.0;
  double cur = 1.0;
  if (n == 0) return {cur, prev};
  prev = cur;
  cur = 0.5 * (a - b + (a + b + 2.0) * z);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * (k + 1) * (k + a + b + 1.0) * s;
    const double c2 = (s + 1.0) * ((s + 2.0) * s * z + a * a - b * b);
    const double c3 = 2.0 * (k + a) * (k + b) * (s + 2.0);
    const double next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace detail

/// P_n^{(alpha,beta)}(z) by the three-term recurrence. z is not clamped.
inline double jacobi_eval(int n, JacobiIndex idx, double z) {
  detail::require_degree(n);
  return detail::jacobi_pair(n, idx.alpha, idx.beta, z)[0];
}

/// k-th derivative in z, using d/dz P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}.
inline double jacobi_deriv(int n, JacobiIndex idx, double z, int order = 1) {
  detail::require_degree(n);
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  if (order > n) return 0.0;
  double scale = 1.0;
  for (int j = 1; j <= order; ++j) scale *= 0.5 * (n + idx.alpha + idx.beta + j);
  return scale * jacobi_eval(n - order, idx.shifted(order, order), z);
}

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms; ~15 digits).
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma requires a finite positive argument, got " + std::to_string(x));
  }
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double y = x - 1.0;
  double sum = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) sum += kCoef[i] / (y + static_cast<double>(i));
  const double t = y + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (y + 0.5) * std::log(t) - t + std::log(sum);
}

/// N_n^{(alpha,beta)}: the factor making N_n P_n unit-norm under the Jacobi weight.
inline double norm_const(int n, JacobiIndex idx) {
  detail::require_degree(n);
  const double a = idx.alpha;
  const double b = idx.beta;
  const double lead = 2.0 * n + a + b + 1.0;
  if (!(lead > 0.0)) throw DomainError("norm_const: 2n+alpha+beta+1 must be positive");
  const double log_sq = log_gamma(n + 1.0) + std::log(lead) + log_gamma(n + a + b + 1.0) -
                        (a + b + 1.0) * std::numbers::ln2 - log_gamma(n + a + 1.0) -
                        log_gamma(n + b + 1.0);
  return std::exp(0.5 * log_sq);
}

namespace detail {

inline constexpr double kDegenerateTol = 1e-12;

struct X1Coefficients {
  double ratio;  // (beta+alpha)/(beta-alpha)
  double inv;    // 1/(beta+alpha+2n)
};

inline X1Coefficients x1_coefficients(int n, JacobiIndex idx) {
  require_degree(n);
  const double diff = idx.beta - idx.alpha;
  const double sum2n = idx.beta + idx.alpha + 2.0 * n;
  if (std::abs(diff) < kDegenerateTol) {
    throw DegenerateParameters("X1 Jacobi polynomial undefined for beta == alpha");
  }
  if (std::abs(sum2n) < kDegenerateTol) {
    throw DegenerateParameters("X1 Jacobi polynomial undefined for beta + alpha + 2n == 0");
  }
  return {(idx.beta + idx.alpha) / diff, 1.0 / sum2n};
}

// k-th derivative of the X1 combination; order 0 is the value.
inline double x1_jacobi(int n, JacobiIndex idx, double z, int order) {
  const auto [r, inv] = x1_coefficients(n, idx);
  auto p = [&](int m, int k) { return m < 0 ? 0.0 : jacobi_deriv(m, idx, z, k); };
  // d^k/dz^k [ (r - z) P_n ] = (r - z) P_n^{(k)} - k P_n^{(k-1)}
  double value = 0.5 * (r - z) * p(n, order);
  if (order > 0) value -= 0.5 * order * p(n, order - 1);
  return value + inv * (r * p(n, order) - p(n - 1, order));
}

}  // namespace detail

/// The X1 exceptional Jacobi polynomial of degree n+1:
///   1/2 ((b+a)/(b-a) - z) P_n + (b+a+2n)^{-1} ((b+a)/(b-a) P_n - P_{n-1}),
/// with P_{-1} = 0. Throws DegenerateParameters when beta == alpha.
inline double x1_jacobi_eval(int n, JacobiIndex idx, double z) {
  return detail::x1_jacobi(n, idx, z, 0);
}

inline double x1_jacobi_deriv(int n, JacobiIndex idx, double z, int order = 1) {
  return detail::x1_jacobi(n, idx, z, order);
}

}  // namespace tdpt

#endif  // TDPT_SPECIAL_HPP
