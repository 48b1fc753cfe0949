#ifndef TDPT_STATIONARY_HPP
#define TDPT_STATIONARY_HPP

// The fixed-boundary SUSY pair on q in (-pi/2, pi/2): the superpotential,
// the Poschl-Teller potential (minus sector), its rational extension (plus
// sector), the shared spectrum and unit-normalized eigenfunctions.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "tdpt/errors.hpp"
#include "tdpt/special.hpp"

namespace tdpt {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Potential parameters. Construction enforces A > max(B + 3/2, |B| + 1/2),
/// which keeps 2A - 1 - 2B sin q away from zero and both Jacobi indices positive.
class PTParams {
 public:
  PTParams(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw InvalidParameters("A and B must be finite");
    }
    if (!(a > std::max(b + 1.5, std::abs(b) + 0.5))) {
      throw InvalidParameters("A = " + std::to_string(a) + ", B = " + std::to_string(b) +
                              " violates A > max(B + 1.5, |B| + 0.5)");
    }
  }

  double A() const noexcept { return a_; }
  double B() const noexcept { return b_; }
  double alpha() const noexcept { return a_ - b_ - 0.5; }
  double beta() const noexcept { return a_ + b_ - 0.5; }

  friend bool operator==(const PTParams&, const PTParams&) = default;

 private:
  double a_;
  double b_;
};

enum class Sector { minus, plus };

inline std::string_view to_string(Sector s) { return s == Sector::minus ? "minus" : "plus"; }

inline Sector parse_sector(std::string_view text) {
  if (text == "minus" || text == "-") return Sector::minus;
  if (text == "plus" || text == "+") return Sector::plus;
  throw InvalidParameters("unknown sector '" + std::string(text) + "'");
}

struct StationaryState {
  int n = 0;
  Sector sector = Sector::minus;
  PTParams params;
};

/// A point of [-pi/2, pi/2] carried together with its distances to both walls,
/// u = pi/2 - q and v = pi/2 + q. Near-wall work passes u or v directly so the
/// wall factors keep full relative precision.
struct Angle {
  double q;
  double u;
  double v;

  static Angle at(double q) {
    const Angle a{q, kHalfPi - q, kHalfPi + q};
    if (!(a.u >= 0.0 && a.v >= 0.0)) {
      throw SingularityError("q = " + std::to_string(q) + " lies outside [-pi/2, pi/2]");
    }
    return a;
  }
  static Angle from_right_wall(double u) { return {kHalfPi - u, u, std::numbers::pi - u}; }
  static Angle from_left_wall(double v) { return {v - kHalfPi, std::numbers::pi - v, v}; }
  /// q = (pi/2) s for s in [-1, 1].
  static Angle from_unit(double s) { return {kHalfPi * s, kHalfPi * (1.0 - s), kHalfPi * (1.0 + s)}; }

  bool interior() const noexcept { return u > 0.0 && v > 0.0; }
};

namespace detail {

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// (1 - cos u) / u^2
inline double wall_ratio(double d) {
  const double s = sinc(0.5 * d);
  return 0.5 * s * s;
}

struct Trig {
  double one_minus_z;  // 1 - sin q
  double one_plus_z;   // 1 + sin q
  double z;
  double cos_q;
  double cos_over_uv;  // cos q / (u v)
};

inline Trig trig(const Angle& a) {
  Trig t{};
  t.one_minus_z = 2.0 * std::pow(std::sin(0.5 * a.u), 2);
  t.one_plus_z = 2.0 * std::pow(std::sin(0.5 * a.v), 2);
  t.z = 0.5 * (t.one_plus_z - t.one_minus_z);
  const double near = std::min(a.u, a.v);
  const double far = std::max(a.u, a.v);
  t.cos_q = std::sin(near);
  t.cos_over_uv = sinc(near) / far;
  return t;
}

inline void require_interior(const Angle& a, const char* what) {
  if (!a.interior()) throw SingularityError(std::string(what) + " diverges at q = +-pi/2");
}

}  // namespace detail

/// E_n = (n + A)^2 - (B - 1/2)^2, shared by both sectors.
inline double energy(int n, const PTParams& p) {
  detail::require_degree(n);
  const double shift = p.B() - 0.5;
  return (n + p.A()) * (n + p.A()) - shift * shift;
}

inline double superpotential(const Angle& a, const PTParams& p) {
  detail::require_interior(a, "superpotential");
  const auto t = detail::trig(a);
  const double A = p.A();
  const double B = p.B();
  const double d = 2.0 * A - 1.0 - 2.0 * B * t.z;
  return ((-B - 0.5) * t.z + (A - 0.5)) / t.cos_q + 2.0 * B * t.cos_q / d;
}

inline double superpotential(double q, const PTParams& p) {
  return superpotential(Angle::at(q), p);
}

inline double superpotential_deriv(const Angle& a, const PTParams& p) {
  detail::require_interior(a, "superpotential");
  const auto t = detail::trig(a);
  const double A = p.A();
  const double B = p.B();
  const double sec = 1.0 / t.cos_q;
  const double d = 2.0 * A - 1.0 - 2.0 * B * t.z;
  return (-B - 0.5) * sec * sec + (A - 0.5) * sec * sec * t.z +
         2.0 * B * (2.0 * B * t.cos_q * t.cos_q - t.z * d) / (d * d);
}

inline double superpotential_deriv(double q, const PTParams& p) {
  return superpotential_deriv(Angle::at(q), p);
}

/// Partner potentials W^2 - W' (minus) and W^2 + W' (plus) in closed form.
inline double potential_tilde(const Angle& a, const PTParams& p, Sector sector) {
  detail::require_interior(a, "potential");
  const auto t = detail::trig(a);
  const double A = p.A();
  const double B = p.B();
  const double sec = 1.0 / t.cos_q;
  const double sec2 = sec * sec;
  const double sectan = sec2 * t.z;
  const double shift = (B - 0.5) * (B - 0.5);
  if (sector == Sector::minus) {
    return (A * (A - 1.0) + (B + 1.0) * (B + 1.0)) * sec2 - (B + 1.0) * (2.0 * A - 1.0) * sectan -
           shift;
  }
  const double d = 2.0 * A - 1.0 - 2.0 * B * t.z;
  const double k = 2.0 * A - 1.0;
  return (A * (A - 1.0) + B * B) * sec2 - B * k * sectan + 2.0 * k / d -
         2.0 * (k * k - 4.0 * B * B) / (d * d) - shift;
}

inline double potential_tilde(double q, const PTParams& p, Sector sector) {
  return potential_tilde(Angle::at(q), p, sector);
}

/// Unit-normalized eigenfunction Q_n of one sector.
///
/// Both sectors share the form Q = c (1-z)^ea (1+z)^eb R(z), z = sin q, with
///   minus: ea = (alpha-1/2)/2, eb = (beta+3/2)/2, R = P_n^{(alpha-1,beta+1)},
///   plus:  ea = (alpha+1/2)/2, eb = (beta+1/2)/2,
///          R = 2(beta-alpha)(beta+n)/sqrt(E_n) * Phat_{n+1}^{(alpha,beta)} / (beta+alpha-(beta-alpha)z),
/// and c = N_n^{(alpha-1,beta+1)} signed so that Q > 0 next to q = -pi/2.
/// Since 1 - z = u^2 w(u) with w smooth, Q = u^{2ea} v^{2eb} G(q) for smooth G;
/// reduced_value / reduced_deriv expose G and the analogous factor of Q'.
class Eigenstate {
 public:
  explicit Eigenstate(const StationaryState& s)
      : n_(s.n),
        sector_(s.sector),
        params_(s.params),
        energy_(tdpt::energy(s.n, s.params)),
        jacobi_(s.sector == Sector::minus ? JacobiIndex{s.params.alpha() - 1.0, s.params.beta() + 1.0}
                                          : JacobiIndex{s.params.alpha(), s.params.beta()}) {
    const double al = params_.alpha();
    const double be = params_.beta();
    if (sector_ == Sector::minus) {
      ea_ = 0.5 * (al - 0.5);
      eb_ = 0.5 * (be + 1.5);
      scale_ = 1.0;
    } else {
      ea_ = 0.5 * (al + 0.5);
      eb_ = 0.5 * (be + 0.5);
      scale_ = 2.0 * (be - al) * (be + n_) / std::sqrt(energy_);
      detail::x1_coefficients(n_, jacobi_);
    }
    coef_ = norm_const(n_, JacobiIndex{al - 1.0, be + 1.0});
    if (rational(-1.0)[0] < 0.0) coef_ = -coef_;
  }

  int n() const noexcept { return n_; }
  Sector sector() const noexcept { return sector_; }
  const PTParams& params() const noexcept { return params_; }
  double energy() const noexcept { return energy_; }

  /// Q ~ u^{right_exponent()} at the right wall, v^{left_exponent()} at the left.
  double right_exponent() const noexcept { return 2.0 * ea_; }
  double left_exponent() const noexcept { return 2.0 * eb_; }

  double reduced_value(const Angle& a) const {
    const auto t = detail::trig(a);
    return coef_ * std::pow(detail::wall_ratio(a.u), ea_) * std::pow(detail::wall_ratio(a.v), eb_) *
           rational(t.z)[0];
  }

  /// H with Q' = u^{2ea-1} v^{2eb-1} H.
  double reduced_deriv(const Angle& a) const {
    const auto t = detail::trig(a);
    return coef_ * std::pow(detail::wall_ratio(a.u), ea_ - 1.0) *
           std::pow(detail::wall_ratio(a.v), eb_ - 1.0) * t.cos_over_uv * first_factor(t);
  }

  double value(const Angle& a) const {
    return std::pow(a.u, 2.0 * ea_) * std::pow(a.v, 2.0 * eb_) * reduced_value(a);
  }

  double deriv(const Angle& a) const {
    return std::pow(a.u, 2.0 * ea_ - 1.0) * std::pow(a.v, 2.0 * eb_ - 1.0) * reduced_deriv(a);
  }

  double second_deriv(const Angle& a) const {
    detail::require_interior(a, "second derivative");
    const auto t = detail::trig(a);
    const double m = t.one_minus_z;
    const double p = t.one_plus_z;
    const auto r = rational(t.z);
    const double lin = -ea_ * p + eb_ * m;
    const double s1 = r[0] * lin + m * p * r[1];
    const double s1d = r[1] * lin - (ea_ + eb_) * r[0] - 2.0 * t.z * r[1] + m * p * r[2];
    const double s2 = s1 * (-(ea_ - 1.0) * p + (eb_ - 1.0) * m) + m * p * s1d;
    return coef_ * std::pow(m, ea_ - 1.0) * std::pow(p, eb_ - 1.0) * (s2 - t.z * s1);
  }

 private:
  // R, R', R'' in z.
  std::array<double, 3> rational(double z) const {
    if (sector_ == Sector::minus) {
      return {jacobi_eval(n_, jacobi_, z), jacobi_deriv(n_, jacobi_, z, 1),
              jacobi_deriv(n_, jacobi_, z, 2)};
    }
    const double slope = params_.beta() - params_.alpha();
    const double d = params_.beta() + params_.alpha() - slope * z;
    const double h0 = x1_jacobi_eval(n_, jacobi_, z);
    const double h1 = x1_jacobi_deriv(n_, jacobi_, z, 1);
    const double h2 = x1_jacobi_deriv(n_, jacobi_, z, 2);
    const double g = slope / d;
    return {scale_ * h0 / d, scale_ * (h1 + g * h0) / d,
            scale_ * (h2 + 2.0 * g * h1 + 2.0 * g * g * h0) / d};
  }

  // S1 with d/dz[(1-z)^ea (1+z)^eb R] = (1-z)^{ea-1} (1+z)^{eb-1} S1.
  double first_factor(const detail::Trig& t) const {
    const auto r = rational(t.z);
    const double m = t.one_minus_z;
    const double p = t.one_plus_z;
    return r[0] * (-ea_ * p + eb_ * m) + m * p * r[1];
  }

  int n_;
  Sector sector_;
  PTParams params_;
  double energy_;
  JacobiIndex jacobi_;
  double ea_ = 0.0;
  double eb_ = 0.0;
  double scale_ = 1.0;
  double coef_ = 1.0;
};

inline double eigenfunction(const StationaryState& s, const Angle& a) {
  return Eigenstate(s).value(a);
}

/// Q_n(q); zero at q = +-pi/2, SingularityError beyond.
inline double eigenfunction(const StationaryState& s, double q) {
  return eigenfunction(s, Angle::at(q));
}

inline double eigenfunction_deriv(const StationaryState& s, const Angle& a) {
  return Eigenstate(s).deriv(a);
}

inline double eigenfunction_deriv(const StationaryState& s, double q) {
  return eigenfunction_deriv(s, Angle::at(q));
}

/// (d/dq + W) Q_n^{(-)}; equals sqrt(E_n) Q_n^{(+)} under the sign convention above.
inline double susy_intertwine(int n, const PTParams& p, const Angle& a) {
  if (!a.interior()) return 0.0;
  const Eigenstate minus({n, Sector::minus, p});
  return minus.deriv(a) + superpotential(a, p) * minus.value(a);
}

inline double susy_intertwine(int n, const PTParams& p, double q) {
  return susy_intertwine(n, p, Angle::at(q));
}

}  // namespace tdpt

#endif  // TDPT_STATIONARY_HPP
