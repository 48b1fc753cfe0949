#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tdpt/diagnostics.hpp"
#include "tdpt/dynamics.hpp"

using namespace tdpt;

namespace {

constexpr double pi = std::numbers::pi;
const PTParams kP(5.0, 3.4);
const InverseSqrtCosine kOsc{1.0, 0.5, 1.0};

}  // namespace

TEST(Boundary, Values) {
  const auto s = boundary_eval(Sinusoidal{}, 0.0);
  EXPECT_DOUBLE_EQ(s.L, 2 * pi);
  EXPECT_DOUBLE_EQ(s.Ldot, pi);
  EXPECT_DOUBLE_EQ(s.Lddot, 0.0);
  EXPECT_NEAR(boundary_eval(kOsc, 0.0).L, pi / std::sqrt(1.5), 1e-15);
  const auto f = boundary_eval(Fixed{pi}, 3.0);
  EXPECT_EQ(f.L, pi);
  EXPECT_EQ(f.Ldot, 0.0);
  EXPECT_EQ(f.Lddot, 0.0);
}

TEST(Boundary, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (const BoundaryProfile& p : {BoundaryProfile{Sinusoidal{}}, BoundaryProfile{InverseSqrtCosine{2.0, -0.7, 1.7}}}) {
    for (double t : {0.3, 1.9, 4.0}) {
      const auto s = boundary_eval(p, t);
      EXPECT_NEAR(s.Ldot, (boundary_eval(p, t + h).L - boundary_eval(p, t - h).L) / (2 * h), 1e-8);
      EXPECT_NEAR(s.Lddot, (boundary_eval(p, t + h).Ldot - boundary_eval(p, t - h).Ldot) / (2 * h), 1e-7);
    }
  }
}

TEST(Boundary, InvalidProfiles) {
  EXPECT_THROW(boundary_eval(InverseSqrtCosine{1.0, 1.0, 1.0}, 0.0), InvalidProfile);
  EXPECT_THROW(boundary_eval(InverseSqrtCosine{-1.0, 0.5, 1.0}, 0.0), InvalidProfile);
  EXPECT_THROW(boundary_eval(InverseSqrtCosine{1.0, 0.5, 0.0}, 0.0), InvalidProfile);
  EXPECT_THROW(boundary_eval(Fixed{0.0}, 0.0), InvalidProfile);
}

TEST(CoordinateMap, EndpointsAndCentre) {
  const double L = boundary_eval(Sinusoidal{}, 1.2).L;
  EXPECT_DOUBLE_EQ(coordinate_map(0.0, 1.2, Sinusoidal{}), -pi / 2);
  EXPECT_NEAR(coordinate_map(L / 2, 1.2, Sinusoidal{}), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(coordinate_map(L, 1.2, Sinusoidal{}), pi / 2);
  EXPECT_THROW(coordinate_map(-1e-9, 1.2, Sinusoidal{}), OutOfBoxError);
  EXPECT_THROW(coordinate_map(L * 1.0001, 1.2, Sinusoidal{}), OutOfBoxError);
}

TEST(CoordinateMap, Bijection) {
  for (double t : {0.0, 2.0, 5.0}) {
    const double L = boundary_eval(kOsc, t).L;
    double prev = -10.0;
    for (int i = 0; i <= 100; ++i) {
      const double q = coordinate_map(i == 100 ? L : L * i / 100.0, t, kOsc);
      EXPECT_GT(q, prev);
      EXPECT_GE(q, -pi / 2);
      EXPECT_LE(q, pi / 2);
      prev = q;
    }
  }
}

TEST(Accumulate, Fixed) {
  const auto acc = accumulate(Fixed{2.0}, 3.0);
  EXPECT_NEAR(acc.tau, 3.0 * pi * pi / 4.0, 1e-14);
  EXPECT_EQ(acc.ldot_sq_integral, 0.0);
}

TEST(Accumulate, InverseSqrtCosineAnalytic) {
  EXPECT_NEAR(accumulate(kOsc, pi).tau, pi, 1e-14);
  // Ldot^2 integral against the brute-force trapezoid
  const double ref = oracle::trapezoid([](double s) { return std::pow(boundary_eval(kOsc, s).Ldot, 2); }, 0, 2.5, 1000000);
  EXPECT_NEAR(accumulate(kOsc, 2.5).ldot_sq_integral, ref, 1e-8 * ref);
}

TEST(Accumulate, SinusoidalTrapezoid) {
  const auto acc = accumulate(Sinusoidal{}, 2.0);
  const double tau = oracle::trapezoid([](double s) { return pi * pi / std::pow(boundary_eval(Sinusoidal{}, s).L, 2); }, 0, 2, 1000000);
  const double sq = oracle::trapezoid([](double s) { return std::pow(boundary_eval(Sinusoidal{}, s).Ldot, 2); }, 0, 2, 1000000);
  EXPECT_NEAR(acc.tau, tau, 1e-8 * tau);
  EXPECT_NEAR(acc.ldot_sq_integral, sq, 1e-8 * sq);
}

TEST(Accumulate, LongTimesAndErrors) {
  const double t = 41.3;
  const double tau = oracle::trapezoid([](double s) { return pi * pi / std::pow(boundary_eval(Sinusoidal{}, s).L, 2); }, 0, t, 2000000);
  EXPECT_NEAR(accumulate(Sinusoidal{}, t).tau, tau, 1e-8 * tau);
  EXPECT_EQ(accumulate(Sinusoidal{}, 0.0).tau, 0.0);
  EXPECT_THROW(accumulate(Sinusoidal{}, -1.0), DomainError);
}

TEST(Accumulate, SweepMatchesDirect) {
  std::vector<double> times;
  for (int i = 0; i < 50; ++i) times.push_back(0.25 * i);
  const AccumulatedSweep sweep(kOsc, times);
  ASSERT_EQ(sweep.size(), times.size());
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    const auto direct = accumulate(kOsc, times[i]);
    EXPECT_NEAR(sweep.at(i).tau, direct.tau, 1e-12 * direct.tau);
    EXPECT_NEAR(sweep.at(i).ldot_sq_integral, direct.ldot_sq_integral, 1e-10 * (1 + direct.ldot_sq_integral));
    EXPECT_GT(sweep.at(i).tau, sweep.at(i - 1).tau);
    EXPECT_GE(sweep.at(i).ldot_sq_integral, sweep.at(i - 1).ldot_sq_integral);
  }
  EXPECT_THROW(AccumulatedSweep(kOsc, {1.0, 0.5}), DomainError);
}

TEST(TransformCoefficients, PurelyImaginary) {
  double prev_tau = -1.0;
  for (double t : {0.0, 0.8, 2.2, 3.9}) {
    const auto c = transform_coefficients(Sinusoidal{}, t);
    const auto b = boundary_eval(Sinusoidal{}, t);
    EXPECT_EQ(c.a.real(), 0.0);
    EXPECT_EQ(c.b.real(), 0.0);
    EXPECT_NEAR(c.a.imag(), 0.5 * (b.L / pi) * (b.Ldot / pi), 1e-15);
    EXPECT_NEAR(c.c_real, -0.5 * std::log(b.L / pi), 1e-15);
    EXPECT_GE(c.tau, prev_tau);
    prev_tau = c.tau;
  }
}

TEST(PotentialXT, FixedProfileIsScaledTilde) {
  const double L0 = 2.7;
  for (double x : {0.3, 1.35, 2.2}) {
    const double q = pi * (x - L0 / 2) / L0;
    for (Sector s : {Sector::minus, Sector::plus}) {
      EXPECT_NEAR(potential_xt(x, 4.0, Fixed{L0}, kP, s), pi * pi / (L0 * L0) * potential_tilde(q, kP, s), 1e-11);
    }
  }
}

TEST(PotentialXT, PartnerDifference) {
  for (double t : {0.4, 10.0}) {
    const double L = boundary_eval(Sinusoidal{}, t).L;
    for (double f : {0.1, 0.5, 0.77}) {
      const double x = f * L;
      const double diff = potential_xt(x, t, Sinusoidal{}, kP, Sector::plus) - potential_xt(x, t, Sinusoidal{}, kP, Sector::minus);
      EXPECT_NEAR(diff, pi * pi / (L * L) * 2 * superpotential_deriv(pi * (x - L / 2) / L, kP), 1e-10);
    }
  }
}

TEST(PotentialXT, HandComposition) {
  const double t = 10.0;
  const double L = pi * (2 + std::sin(t));
  const double Lddot = -pi * std::sin(t);
  const double x = L / 2;
  const double expect = pi * pi / (L * L) * 30.95 + L * Lddot / 16 - 0.25 * Lddot / L * x * x;
  EXPECT_NEAR(potential_xt(x, t, Sinusoidal{}, kP, Sector::minus), expect, 1e-12);
}

TEST(PotentialXT, Walls) {
  const double L = boundary_eval(Sinusoidal{}, 1.0).L;
  EXPECT_THROW(potential_xt(0.0, 1.0, Sinusoidal{}, kP, Sector::minus), SingularityError);
  EXPECT_THROW(potential_xt(L, 1.0, Sinusoidal{}, kP, Sector::plus), SingularityError);
  EXPECT_THROW(potential_xt(L + 1, 1.0, Sinusoidal{}, kP, Sector::plus), OutOfBoxError);
}

TEST(Wavefunction, FixedProfile) {
  const double L0 = 3.3;
  for (Sector s : {Sector::minus, Sector::plus}) {
    const StationaryState st{1, s, kP};
    for (double t : {0.0, 0.9, 5.0}) {
      const double x = 1.2;
      const auto psi = wavefunction(1, s, x, t, Fixed{L0}, kP);
      const auto expect = std::sqrt(pi / L0) * eigenfunction(st, pi * (x - L0 / 2) / L0) *
                          std::polar(1.0, -energy(1, kP) * pi * pi * t / (L0 * L0));
      EXPECT_NEAR(std::abs(psi - expect), 0.0, 1e-13);
    }
  }
}

TEST(Wavefunction, Normalized) {
  for (const BoundaryProfile& p : {BoundaryProfile{Sinusoidal{}}, BoundaryProfile{kOsc}}) {
    for (Sector s : {Sector::minus, Sector::plus}) {
      for (int n = 0; n <= 2; ++n) {
        EXPECT_LT(diagnostics::density_norm_error({n, s, kP}, p, {0.0, 1.7, 6.1}), 1e-10);
      }
    }
  }
}

TEST(Wavefunction, DensityIsScaledQSquared) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ut(0.0, 12.0), uf(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng);
    const auto b = boundary_eval(Sinusoidal{}, t);
    const double x = uf(rng) * b.L;
    const Sector s = i % 2 ? Sector::plus : Sector::minus;
    const auto psi = wavefunction(i % 3, s, x, t, Sinusoidal{}, kP);
    const double q = eigenfunction({i % 3, s, kP}, pi * (x - b.L / 2) / b.L);
    EXPECT_NEAR(std::norm(psi), pi / b.L * q * q, 1e-12);
    EXPECT_NEAR(density(i % 3, s, x, t, Sinusoidal{}, kP), std::norm(psi), 1e-12);
  }
}

TEST(Wavefunction, PhaseAtTimeZero) {
  const auto b = boundary_eval(Sinusoidal{}, 0.0);
  for (double x : {0.5, 2.0, 5.5}) {
    const double f = phase(2, x, b, Accumulated{}, kP);
    EXPECT_NEAR(f, b.Ldot / (4 * b.L) * x * x - b.L * b.Ldot / 16, 1e-14);
  }
}

TEST(Wavefunction, OutOfBox) {
  EXPECT_THROW(wavefunction(0, Sector::minus, -0.1, 1.0, Sinusoidal{}, kP), OutOfBoxError);
  EXPECT_THROW(wavefunction(0, Sector::minus, 1.0, -1.0, Sinusoidal{}, kP), DomainError);
}

TEST(Density, NonnegativeAndZeroAtWalls) {
  const double L = boundary_eval(kOsc, 2.0).L;
  EXPECT_EQ(density(1, Sector::plus, 0.0, 2.0, kOsc, kP), 0.0);
  EXPECT_EQ(density(1, Sector::plus, L, 2.0, kOsc, kP), 0.0);
  for (int i = 1; i < 200; ++i) EXPECT_GE(density(2, Sector::minus, L * i / 200, 2.0, kOsc, kP), 0.0);
}

TEST(Density, NarrowerWhenBoxIsSmaller) {
  // n = 0 at A = 5, B = 0.2 and the snapshot times 10, 20, 30
  const PTParams p(5.0, 0.2);
  auto spread = [&](double t) {
    const double L = boundary_eval(Sinusoidal{}, t).L;
    double peak = 0.0, m1 = 0.0, m2 = 0.0;
    const int N = 4000;
    for (int i = 1; i < N; ++i) {
      const double x = L * i / N;
      const double rho = density(0, Sector::minus, x, t, Sinusoidal{}, p);
      peak = std::max(peak, rho);
      m1 += rho * x * L / N;
      m2 += rho * x * x * L / N;
    }
    return std::pair{std::sqrt(m2 - m1 * m1), peak};
  };
  const auto [w10, p10] = spread(10.0);
  const auto [w20, p20] = spread(20.0);
  const auto [w30, p30] = spread(30.0);
  // L(30) < L(10) < L(20)
  EXPECT_LT(w30, w10);
  EXPECT_LT(w10, w20);
  EXPECT_GT(p30, p10);
  EXPECT_GT(p10, p20);
}

TEST(TDSE, ResidualSmall) {
  for (const BoundaryProfile& p : {BoundaryProfile{Sinusoidal{}}, BoundaryProfile{kOsc}}) {
    for (Sector s : {Sector::minus, Sector::plus}) {
      for (int n : {0, 1}) EXPECT_LT(diagnostics::tdse_residual({n, s, kP}, p, {0.7, 3.1, 5.6}), 1e-3);
    }
  }
}
