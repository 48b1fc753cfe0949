#ifndef TDPT_DYNAMICS_HPP
#define TDPT_DYNAMICS_HPP

// Moving-boundary machinery. The box is [0, L(t)]; x maps to
// q = pi (x - L/2) / L, the potential picks up the dilation terms
// L Lddot / 16 - (Lddot / 4L) x^2, and the wavefunction is
//   psi_n = sqrt(pi / L) Q_n(q) exp(i F_n),
//   F_n = (Ldot / 4L) x^2 - L Ldot / 16 + (1/16) int_0^t Ldot^2 - E_n int_0^t pi^2 / L^2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "tdpt/errors.hpp"
#include "tdpt/quadrature.hpp"
#include "tdpt/stationary.hpp"

namespace tdpt {

/// L(t) = pi (2 + sin t).
struct Sinusoidal {
  friend bool operator==(const Sinusoidal&, const Sinusoidal&) = default;
};

/// L(t) = A1 pi / sqrt(1 + B1 cos(omega t)), |B1| < 1.
struct InverseSqrtCosine {
  double A1 = 1.0;
  double B1 = 0.5;
  double omega = 1.0;
  friend bool operator==(const InverseSqrtCosine&, const InverseSqrtCosine&) = default;
};

/// L(t) = L0.
struct Fixed {
  double L0 = std::numbers::pi;
  friend bool operator==(const Fixed&, const Fixed&) = default;
};

using BoundaryProfile = std::variant<Sinusoidal, InverseSqrtCosine, Fixed>;

inline std::string profile_name(const BoundaryProfile& p) {
  struct {
    std::string operator()(const Sinusoidal&) const { return "sinusoidal"; }
    std::string operator()(const InverseSqrtCosine&) const { return "invsqrt"; }
    std::string operator()(const Fixed&) const { return "fixed"; }
  } visitor;
  return std::visit(visitor, p);
}

inline void validate_profile(const BoundaryProfile& p) {
  if (const auto* c = std::get_if<InverseSqrtCosine>(&p)) {
    if (!(c->A1 > 0.0) || !std::isfinite(c->A1)) throw InvalidProfile("A1 must be positive");
    if (!(std::abs(c->B1) < 1.0)) throw InvalidProfile("|B1| must be < 1");
    if (!(c->omega > 0.0) || !std::isfinite(c->omega)) throw InvalidProfile("omega must be positive");
  } else if (const auto* f = std::get_if<Fixed>(&p)) {
    if (!(f->L0 > 0.0) || !std::isfinite(f->L0)) throw InvalidProfile("L0 must be positive");
  }
}

struct BoundaryState {
  double L;
  double Ldot;
  double Lddot;
};

/// L, dL/dt and d2L/dt2, all analytic.
inline BoundaryState boundary_eval(const BoundaryProfile& profile, double t) {
  validate_profile(profile);
  constexpr double pi = std::numbers::pi;
  if (std::holds_alternative<Sinusoidal>(profile)) {
    return {pi * (2.0 + std::sin(t)), pi * std::cos(t), -pi * std::sin(t)};
  }
  if (const auto* c = std::get_if<InverseSqrtCosine>(&profile)) {
    const double wt = c->omega * t;
    const double s = std::sin(wt);
    const double base = 1.0 + c->B1 * std::cos(wt);
    const double amp = 0.5 * c->A1 * pi * c->B1 * c->omega;
    return {c->A1 * pi / std::sqrt(base), amp * s * std::pow(base, -1.5),
            amp * c->omega *
                (std::cos(wt) * std::pow(base, -1.5) + 1.5 * c->B1 * s * s * std::pow(base, -2.5))};
  }
  return {std::get<Fixed>(profile).L0, 0.0, 0.0};
}

/// q = pi (x - L/2) / L for x in [0, L(t)].
inline double coordinate_map(double x, double t, const BoundaryProfile& profile) {
  const double L = boundary_eval(profile, t).L;
  if (!(x >= 0.0 && x <= L)) {
    throw OutOfBoxError("x = " + std::to_string(x) + " outside [0, " + std::to_string(L) + "]");
  }
  return std::numbers::pi * (x - 0.5 * L) / L;
}

/// The q-point of x in a box of width L, with wall distances taken from x directly.
inline Angle box_angle(double x, double L) {
  if (!(x >= 0.0 && x <= L)) {
    throw OutOfBoxError("x = " + std::to_string(x) + " outside [0, " + std::to_string(L) + "]");
  }
  const double v = std::numbers::pi * x / L;
  const double u = std::numbers::pi * (L - x) / L;
  return {std::numbers::pi * (x - 0.5 * L) / L, u, v};
}

/// tau(t) = int_0^t pi^2 / L^2 ds and int_0^t Ldot^2 ds.
struct Accumulated {
  double tau = 0.0;
  double ldot_sq_integral = 0.0;
};

namespace detail {

// Integrand pieces over [t0, t1], split into segments no longer than pi so the
// Gauss-Legendre rule sees at most half a period of the profile.
inline Accumulated accumulate_between(const BoundaryProfile& profile, double t0, double t1,
                                      const QuadratureSpec& spec) {
  Accumulated acc;
  if (t1 <= t0) return acc;
  constexpr double pi = std::numbers::pi;
  if (const auto* f = std::get_if<Fixed>(&profile)) {
    acc.tau = (t1 - t0) * pi * pi / (f->L0 * f->L0);
    return acc;
  }
  if (const auto* c = std::get_if<InverseSqrtCosine>(&profile)) {
    auto tau = [c](double t) {
      return (t + c->B1 / c->omega * std::sin(c->omega * t)) / (c->A1 * c->A1);
    };
    acc.tau = tau(t1) - tau(t0);
  } else {
    auto sq = [](double t) { return pi * pi * (0.5 * t + 0.25 * std::sin(2.0 * t)); };
    acc.ldot_sq_integral = sq(t1) - sq(t0);
  }
  const int pieces = std::max(1, static_cast<int>(std::ceil((t1 - t0) / pi)));
  const double width = (t1 - t0) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double a = t0 + i * width;
    const double b = (i + 1 == pieces) ? t1 : a + width;
    if (std::holds_alternative<Sinusoidal>(profile)) {
      acc.tau += integrate(
          [&](double s) {
            const double L = boundary_eval(profile, s).L;
            return pi * pi / (L * L);
          },
          a, b, spec);
    } else {
      acc.ldot_sq_integral += integrate(
          [&](double s) {
            const double ld = boundary_eval(profile, s).Ldot;
            return ld * ld;
          },
          a, b, spec);
    }
  }
  return acc;
}

}  // namespace detail

inline Accumulated accumulate(const BoundaryProfile& profile, double t,
                              const QuadratureSpec& spec = {}) {
  validate_profile(profile);
  if (!(t >= 0.0)) throw DomainError("accumulate requires t >= 0");
  return detail::accumulate_between(profile, 0.0, t, spec);
}

/// Accumulated integrals over an ascending time grid, built incrementally
/// (one short integral per step). Immutable after construction.
class AccumulatedSweep {
 public:
  AccumulatedSweep(const BoundaryProfile& profile, std::vector<double> times,
                   const QuadratureSpec& spec = {})
      : times_(std::move(times)) {
    validate_profile(profile);
    values_.reserve(times_.size());
    Accumulated running;
    double last = 0.0;
    for (double t : times_) {
      if (!(t >= last)) throw DomainError("sweep times must be nonnegative and ascending");
      const auto step = detail::accumulate_between(profile, last, t, spec);
      running.tau += step.tau;
      running.ldot_sq_integral += step.ldot_sq_integral;
      values_.push_back(running);
      last = t;
    }
  }

  std::size_t size() const noexcept { return times_.size(); }
  double time(std::size_t i) const { return times_.at(i); }
  const Accumulated& at(std::size_t i) const { return values_.at(i); }

 private:
  std::vector<double> times_;
  std::vector<Accumulated> values_;
};

/// Coefficients of the gauge phase Phi = a q^2 / 2 + b q + c; a and b are
/// purely imaginary, only Re c = -ln(L/pi)/2 is kept (g0 = 0).
struct TransformCoefficients {
  std::complex<double> a;
  std::complex<double> b;
  double c_real;
  double tau;
  double ldot_sq_integral;
};

inline TransformCoefficients transform_coefficients(const BoundaryProfile& profile, double t,
                                                    const QuadratureSpec& spec = {}) {
  const auto s = boundary_eval(profile, t);
  const auto acc = accumulate(profile, t, spec);
  const double l1 = s.L / std::numbers::pi;
  const double l1dot = s.Ldot / std::numbers::pi;
  return {{0.0, 0.5 * l1 * l1dot}, {0.0, 0.5 * l1 * 0.5 * s.Ldot}, -0.5 * std::log(l1),
          acc.tau, acc.ldot_sq_integral};
}

/// V(x, t) = (pi/L)^2 Vtilde(q) + L Lddot / 16 - (Lddot / 4L) x^2, for 0 < x < L.
inline double potential_xt(double x, const BoundaryState& s, const PTParams& params, Sector sector) {
  if (x == 0.0 || x == s.L) throw SingularityError("potential diverges at the walls");
  const Angle a = box_angle(x, s.L);
  const double scale = std::numbers::pi / s.L;
  return scale * scale * potential_tilde(a, params, sector) + s.L * s.Lddot / 16.0 -
         0.25 * s.Lddot / s.L * x * x;
}

inline double potential_xt(double x, double t, const BoundaryProfile& profile,
                           const PTParams& params, Sector sector) {
  return potential_xt(x, boundary_eval(profile, t), params, sector);
}

using ComplexAmplitude = std::complex<double>;

/// F_n(x, t), given the boundary state and accumulated integrals at t.
inline double phase(int n, double x, const BoundaryState& s, const Accumulated& acc,
                    const PTParams& params) {
  return s.Ldot / (4.0 * s.L) * x * x - s.L * s.Ldot / 16.0 + acc.ldot_sq_integral / 16.0 -
         energy(n, params) * acc.tau;
}

inline ComplexAmplitude wavefunction(const Eigenstate& q, double x, const BoundaryState& s,
                                     const Accumulated& acc) {
  const Angle a = box_angle(x, s.L);
  const double amplitude = std::sqrt(std::numbers::pi / s.L) * q.value(a);
  return std::polar(1.0, phase(q.n(), x, s, acc, q.params())) * amplitude;
}

inline ComplexAmplitude wavefunction(int n, Sector sector, double x, double t,
                                     const BoundaryProfile& profile, const PTParams& params,
                                     const QuadratureSpec& spec = {}) {
  if (!(t >= 0.0)) throw DomainError("wavefunction requires t >= 0");
  return wavefunction(Eigenstate({n, sector, params}), x, boundary_eval(profile, t),
                      accumulate(profile, t, spec));
}

/// |psi|^2 = (pi / L) Q(q)^2; needs no phase, hence no accumulated integrals.
inline double density(const Eigenstate& q, double x, double L) {
  const double value = q.value(box_angle(x, L));
  return std::numbers::pi / L * value * value;
}

inline double density(int n, Sector sector, double x, double t, const BoundaryProfile& profile,
                      const PTParams& params) {
  return density(Eigenstate({n, sector, params}), x, boundary_eval(profile, t).L);
}

}  // namespace tdpt

#endif  // TDPT_DYNAMICS_HPP
