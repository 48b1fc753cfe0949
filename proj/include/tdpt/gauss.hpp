#ifndef TDPT_GAUSS_HPP
#define TDPT_GAUSS_HPP

// Gauss-Legendre and Gauss-Jacobi node/weight tables on [-1, 1]. Tables are
// built on first use, cached, and never mutated afterwards.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tdpt/errors.hpp"
#include "tdpt/special.hpp"

namespace tdpt {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline GaussRule build_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // one more derivative at the converged node for the weight
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

// Golub-Welsch eigenvalues as starting points, Newton polish on the
// recurrence, then w_i proportional to 1 / ((1 - x_i^2) P_N'(x_i)^2). The
// weights are scaled to the exact weight mass; the closed-form constant
// involves ln Gamma at O(N) arguments and loses ~1e-12 to cancellation.
inline GaussRule build_jacobi(int order, double a, double b) {
  const int n = order;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double num = (k == 1) ? 4.0 * (1.0 + a) * (1.0 + b)
                                : 4.0 * k * (k + a) * (k + b) * (k + a + b);
    const double den = (k == 1) ? s * s * (s + 1.0) : s * s * (s + 1.0) * (s - 1.0);
    sub(k - 1) = std::sqrt(num / den);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& guess = solver.eigenvalues();

  const JacobiIndex idx{a, b};
  const double mass = std::exp((a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) +
                               log_gamma(b + 1.0) - log_gamma(a + b + 2.0));
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = guess(i);
    for (int iter = 0; iter < 3; ++iter) {
      const double p = jacobi_eval(n, idx, x);
      const double dp = jacobi_deriv(n, idx, x);
      const double step = p / dp;
      if (!std::isfinite(step)) break;
      const double next = x - step;
      if (next <= -1.0 || next >= 1.0) break;
      x = next;
      if (std::abs(step) < 1e-17) break;
    }
    const double dp = jacobi_deriv(n, idx, x);
    const double one_minus_x2 = (1.0 - x) * (1.0 + x);
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / (one_minus_x2 * dp * dp);
  }
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w *= mass / total;
  return rule;
}

template <typename Key, typename Builder>
std::shared_ptr<const GaussRule> cached_rule(const Key& key, Builder build) {
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const GaussRule>(build());
  cache.emplace(key, rule);
  return rule;
}

}  // namespace detail

/// N-point Gauss-Legendre rule on [-1, 1].
inline std::shared_ptr<const GaussRule> gauss_legendre(int order) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
  return detail::cached_rule(order, [order] { return detail::build_legendre(order); });
}

/// N-point Gauss-Jacobi rule for the weight (1-s)^a (1+s)^b on [-1, 1].
inline std::shared_ptr<const GaussRule> gauss_jacobi(int order, double a, double b) {
  if (order < 2) throw DomainError("Gauss-Jacobi order must be at least 2");
  if (!(a > -1.0 && b > -1.0)) throw DomainError("Gauss-Jacobi exponents must exceed -1");
  return detail::cached_rule(std::make_tuple(order, a, b),
                             [=] { return detail::build_jacobi(order, a, b); });
}

}  // namespace tdpt

#endif  // TDPT_GAUSS_HPP
