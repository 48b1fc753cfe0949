#ifndef TDPT_DIAGNOSTICS_HPP
#define TDPT_DIAGNOSTICS_HPP

// Residual measurements used by `tdpt validate` and the acceptance suite.
// Each function returns a single worst-case number so callers can compare it
// against a tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tdpt/dynamics.hpp"
#include "tdpt/gauss.hpp"
#include "tdpt/observables.hpp"
#include "tdpt/quadrature.hpp"
#include "tdpt/stationary.hpp"

namespace tdpt::diagnostics {

/// Midpoints of `count` equal cells of (-1, 1), as angles.
inline std::vector<Angle> interior_grid(int count) {
  std::vector<Angle> grid;
  grid.reserve(count);
  for (int i = 0; i < count; ++i) grid.push_back(Angle::from_unit(-1.0 + (2.0 * i + 1.0) / count));
  return grid;
}

/// max |-Q'' + V Q - E Q| / (E max|Q|) over the grid.
inline double schrodinger_residual(const StationaryState& s, int points = 500) {
  const Eigenstate q(s);
  const auto grid = interior_grid(points);
  double worst = 0.0;
  double peak = 0.0;
  for (const auto& a : grid) {
    const double value = q.value(a);
    peak = std::max(peak, std::abs(value));
    const double r = -q.second_deriv(a) + (potential_tilde(a, s.params, s.sector) - q.energy()) * value;
    worst = std::max(worst, std::abs(r));
  }
  return worst / (q.energy() * peak);
}

/// |int Q_n Q_m - delta_nm|, worst over n, m <= max_n.
inline double orthonormality_error(const PTParams& p, Sector sector, int max_n,
                                   const QuadratureSpec& spec = {}) {
  double worst = 0.0;
  for (int n = 0; n <= max_n; ++n) {
    for (int m = n; m <= max_n; ++m) {
      const double o = overlap({n, sector, p}, {m, sector, p}, spec);
      worst = std::max(worst, std::abs(o - (n == m ? 1.0 : 0.0)));
    }
  }
  return worst;
}

/// Worst |closed form - (W^2 +- W')| over `points` interior q, both sectors.
inline double partner_identity_error(const PTParams& p, int points = 50) {
  double worst = 0.0;
  for (const auto& a : interior_grid(points)) {
    const double w = superpotential(a, p);
    const double wd = superpotential_deriv(a, p);
    const double vm = potential_tilde(a, p, Sector::minus);
    const double vp = potential_tilde(a, p, Sector::plus);
    const double scale = std::max({1.0, std::abs(vm), std::abs(vp)});
    worst = std::max({worst, std::abs(vm - (w * w - wd)) / scale, std::abs(vp - (w * w + wd)) / scale});
  }
  return worst;
}

struct IntertwineResult {
  double error;  // sup-norm deviation under the best global sign
  int sign;
};

/// (d/dq + W) Q_n^- against s sqrt(E_n) Q_n^+ on a 200-point grid, n <= max_n,
/// one sign s for all n.
inline IntertwineResult intertwine_error(const PTParams& p, int max_n, int points = 200) {
  std::array<double, 2> worst{0.0, 0.0};
  const auto grid = interior_grid(points);
  for (int n = 0; n <= max_n; ++n) {
    const Eigenstate plus({n, Sector::plus, p});
    const double root = std::sqrt(plus.energy());
    for (const auto& a : grid) {
      const double lhs = susy_intertwine(n, p, a);
      const double rhs = root * plus.value(a);
      worst[0] = std::max(worst[0], std::abs(lhs - rhs));
      worst[1] = std::max(worst[1], std::abs(lhs + rhs));
    }
  }
  return worst[0] <= worst[1] ? IntertwineResult{worst[0], 1} : IntertwineResult{worst[1], -1};
}

namespace detail {

// psi at (x, t0 + dt) given the state at t0; accumulated integrals are carried
// forward over the short step instead of being recomputed from 0.
inline ComplexAmplitude psi_shifted(const Eigenstate& q, const BoundaryProfile& profile, double x,
                                    double t0, const Accumulated& acc0, double dt,
                                    const QuadratureSpec& spec) {
  const double t = t0 + dt;
  const auto b = boundary_eval(profile, t);
  if (x <= 0.0 || x >= b.L) return {0.0, 0.0};
  Accumulated acc = acc0;
  const auto step = dt >= 0.0 ? tdpt::detail::accumulate_between(profile, t0, t, spec)
                              : tdpt::detail::accumulate_between(profile, t, t0, spec);
  const double sign = dt >= 0.0 ? 1.0 : -1.0;
  acc.tau += sign * step.tau;
  acc.ldot_sq_integral += sign * step.ldot_sq_integral;
  return wavefunction(q, x, b, acc);
}

// Five-point central difference weights for f' and f''.
inline constexpr std::array<double, 5> kD1{1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};
inline constexpr std::array<double, 5> kD2{-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};

}  // namespace detail

/// Worst |i psi_t + psi_xx - V psi| / (E_n pi^2/L^2 max|psi|) over the (x, t)
/// grid, derivatives by five-point central differences.
inline double tdse_residual(const StationaryState& s, const BoundaryProfile& profile,
                            const std::vector<double>& times, int x_points = 9,
                            const QuadratureSpec& spec = {}) {
  using namespace std::complex_literals;
  const Eigenstate q(s);
  constexpr double ht = 1e-3;
  double worst = 0.0;
  for (double t : times) {
    const auto b = boundary_eval(profile, t);
    const auto acc = accumulate(profile, t, spec);
    const double hx = 1e-3 * b.L;
    std::vector<double> residuals;
    double peak = 0.0;
    for (int i = 1; i <= x_points; ++i) {
      const double x = b.L * i / (x_points + 1.0);
      std::complex<double> dt{0.0, 0.0};
      std::complex<double> dxx{0.0, 0.0};
      for (int k = 0; k < 5; ++k) {
        dt += detail::kD1[k] * detail::psi_shifted(q, profile, x, t, acc, (k - 2) * ht, spec);
        dxx += detail::kD2[k] * wavefunction(q, x + (k - 2) * hx, b, acc);
      }
      dt /= ht;
      dxx /= hx * hx;
      const auto psi = wavefunction(q, x, b, acc);
      peak = std::max(peak, std::abs(psi));
      const double v = potential_xt(x, b, s.params, s.sector);
      residuals.push_back(std::abs(1i * dt + dxx - v * psi));
    }
    const double scale = q.energy() * std::numbers::pi * std::numbers::pi / (b.L * b.L) * peak;
    for (double r : residuals) worst = std::max(worst, r / scale);
  }
  return worst;
}

/// i int_0^L psi* dpsi/dt dx with the time derivative taken by central
/// differences at fixed x and the x-integral by a fixed Gauss-Legendre rule.
inline std::complex<double> avg_energy_fd(const StationaryState& s, const BoundaryProfile& profile,
                                          double t, const QuadratureSpec& spec = {}) {
  using namespace std::complex_literals;
  const Eigenstate q(s);
  constexpr double ht = 1e-4;
  const auto b = boundary_eval(profile, t);
  const auto acc = accumulate(profile, t, spec);
  const auto rule = gauss_legendre(256);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const double x = 0.5 * b.L * (1.0 + rule->nodes[i]);
    std::complex<double> dt{0.0, 0.0};
    for (int k = 0; k < 5; ++k) {
      if (k == 2) continue;
      dt += detail::kD1[k] * detail::psi_shifted(q, profile, x, t, acc, (k - 2) * ht, spec);
    }
    dt /= ht;
    sum += rule->weights[i] * std::conj(wavefunction(q, x, b, acc)) * dt;
  }
  return 1i * 0.5 * b.L * sum;
}

/// Real average energy implied by psi_n directly (derived by differentiating
/// psi in t; the Q-dilation term integrates to zero):
///   E pi^2/L^2 + Ldot^2/16 - (L Lddot - Ldot^2) (I1/(4 pi) + I2/(4 pi^2)).
inline double avg_energy_direct(const StateObservables& obs, const BoundaryState& b) {
  const double e = energy(obs.state().n, obs.state().params);
  const double pi = std::numbers::pi;
  const double k = b.L * b.Lddot - b.Ldot * b.Ldot;
  return e * pi * pi / (b.L * b.L) + b.Ldot * b.Ldot / 16.0 -
         k * (obs.moments().I1 / (4.0 * pi) + obs.moments().I2 / (4.0 * pi * pi));
}

/// Worst |1 - int_0^L rho dx| at the given times (fixed 2000-point rule).
inline double density_norm_error(const StationaryState& s, const BoundaryProfile& profile,
                                 const std::vector<double>& times) {
  const Eigenstate q(s);
  const auto rule = gauss_legendre(2000);
  double worst = 0.0;
  for (double t : times) {
    const double L = boundary_eval(profile, t).L;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule->size(); ++i) {
      sum += rule->weights[i] * density(q, 0.5 * L * (1.0 + rule->nodes[i]), L);
    }
    worst = std::max(worst, std::abs(1.0 - 0.5 * L * sum));
  }
  return worst;
}

}  // namespace tdpt::diagnostics

#endif  // TDPT_DIAGNOSTICS_HPP
