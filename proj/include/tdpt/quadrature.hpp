#ifndef TDPT_QUADRATURE_HPP
#define TDPT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <string>

#include "tdpt/errors.hpp"
#include "tdpt/gauss.hpp"
#include "tdpt/stationary.hpp"

namespace tdpt {

/// Node-doubling control shared by every integral in the library.
struct QuadratureSpec {
  int base_order = 64;
  double rel_tol = 1e-11;
  int max_doublings = 6;

  void validate() const {
    if (base_order < 16) throw InvalidParameters("quadrature base_order must be >= 16");
    if (!(rel_tol >= 1e-14) || !std::isfinite(rel_tol)) {
      throw InvalidParameters("quadrature rel_tol must be >= 1e-14");
    }
    if (max_doublings < 1) throw InvalidParameters("quadrature max_doublings must be >= 1");
  }

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

namespace detail {

// Runs `estimate(order)` -> {integral, integral of |f|} for base_order * 2^k
// until two successive integrals agree to rel_tol, relative to the larger of
// |integral| and the absolute-value integral (so cancelling integrands such as
// overlaps of orthogonal states still converge).
template <typename Estimate>
double refine(const QuadratureSpec& spec, Estimate estimate, const char* what) {
  spec.validate();
  int order = spec.base_order;
  double prev = estimate(order).first;
  double before = prev;
  for (int k = 1; k <= spec.max_doublings; ++k) {
    order *= 2;
    const auto [cur, cur_abs] = estimate(order);
    const double scale = std::max(std::abs(cur), cur_abs);
    if (std::abs(cur - prev) <= spec.rel_tol * scale) return cur;
    before = prev;
    prev = cur;
  }
  throw ConvergenceError(std::string(what) + " did not converge", before, prev);
}

}  // namespace detail

/// Gauss-Legendre estimate of the integral of f over (a, b) with node-count
/// doubling. Nodes never touch the endpoints.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(a < b)) throw DomainError("integrate requires a < b");
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  return detail::refine(
      spec,
      [&](int order) {
        const auto rule = gauss_legendre(order);
        double sum = 0.0;
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < rule->size(); ++i) {
          const double value = f(mid + half * rule->nodes[i]);
          sum += rule->weights[i] * value;
          abs_sum += rule->weights[i] * std::abs(value);
        }
        return std::pair{half * sum, half * abs_sum};
      },
      "integrate");
}

/// Integral over s in (-1, 1) of (1-s)^ea (1+s)^eb g(s), Gauss-Jacobi with doubling.
template <typename G>
double integrate_jacobi(G&& g, double ea, double eb, const QuadratureSpec& spec = {}) {
  return detail::refine(
      spec,
      [&](int order) {
        const auto rule = gauss_jacobi(order, ea, eb);
        double sum = 0.0;
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < rule->size(); ++i) {
          const double value = g(rule->nodes[i]);
          sum += rule->weights[i] * value;
          abs_sum += rule->weights[i] * std::abs(value);
        }
        return std::pair{sum, abs_sum};
      },
      "integrate_jacobi");
}

// Moments of stationary states. Each integrand is (wall factors) x (smooth
// reduced part); the wall factors become the Gauss-Jacobi weight in s = 2q/pi.

/// Integral of Q_n Q_m over (-pi/2, pi/2) for two states of one sector.
inline double overlap(const StationaryState& a, const StationaryState& b,
                      const QuadratureSpec& spec = {}) {
  if (a.sector != b.sector || !(a.params == b.params)) {
    throw InvalidParameters("overlap requires two states of the same sector and parameters");
  }
  const Eigenstate qa(a);
  const Eigenstate qb(b);
  const double pu = 2.0 * qa.right_exponent();
  const double pv = 2.0 * qa.left_exponent();
  const double scale = std::pow(kHalfPi, pu + pv + 1.0);
  return scale * integrate_jacobi(
                     [&](double s) {
                       const Angle x = Angle::from_unit(s);
                       return qa.reduced_value(x) * qb.reduced_value(x);
                     },
                     pu, pv, spec);
}

/// I_k = integral of Q^2 q^k dq, k in {0, 1, 2} (k = 0 is the norm).
inline double moment(const StationaryState& state, int k, const QuadratureSpec& spec = {}) {
  if (k < 0 || k > 2) throw DomainError("moment order must be 0, 1 or 2");
  const Eigenstate q(state);
  const double pu = 2.0 * q.right_exponent();
  const double pv = 2.0 * q.left_exponent();
  const double scale = std::pow(kHalfPi, pu + pv + 1.0);
  return scale * integrate_jacobi(
                     [&](double s) {
                       const Angle x = Angle::from_unit(s);
                       const double g = q.reduced_value(x);
                       return g * g * std::pow(x.q, k);
                     },
                     pu, pv, spec);
}

/// I_3 = integral of (dQ/dq)^2 dq.
inline double moment_kinetic(const StationaryState& state, const QuadratureSpec& spec = {}) {
  const Eigenstate q(state);
  const double pu = 2.0 * q.right_exponent() - 2.0;
  const double pv = 2.0 * q.left_exponent() - 2.0;
  const double scale = std::pow(kHalfPi, pu + pv + 1.0);
  return scale * integrate_jacobi(
                     [&](double s) {
                       const double h = q.reduced_deriv(Angle::from_unit(s));
                       return h * h;
                     },
                     pu, pv, spec);
}

}  // namespace tdpt

#endif  // TDPT_QUADRATURE_HPP
