// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [scratch-dir]

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tdpt/cli/commands.hpp"
#include "tdpt/diagnostics.hpp"
#include "tdpt/observables.hpp"

using namespace tdpt;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;
const PTParams kP(5.0, 3.4);
const InverseSqrtCosine kOsc{1.0, 0.5, 1.0};
const std::vector<BoundaryProfile> kMoving{Sinusoidal{}, kOsc};
constexpr Sector kSectors[] = {Sector::minus, Sector::plus};

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> grid200() {
  std::vector<double> t(200);
  for (int i = 0; i < 200; ++i) t[i] = 4 * pi * i / 199;
  return t;
}

void spectrum() {
  const double expect[] = {16.59, 27.59, 40.59};
  double worst = 0.0;
  for (int n = 0; n < 3; ++n) worst = std::max(worst, std::abs(energy(n, kP) - expect[n]));
  // both sectors share the formula; E_n(-) == E_n(+) is structural
  bool formula = true;
  for (int n = 0; n <= 10; ++n) {
    formula &= energy(n, kP) == (n + 5.0) * (n + 5.0) - (3.4 - 0.5) * (3.4 - 0.5);
  }
  report(1, "spectrum", worst <= 1e-13 && formula, fmt("max |E - {16.59,27.59,40.59}| = %.2e", worst));
}

void orthonormality() {
  double worst = 0.0;
  for (const auto& p : {kP, PTParams(5.0, 0.2)}) {
    for (Sector s : kSectors) worst = std::max(worst, diagnostics::orthonormality_error(p, s, 5));
  }
  report(2, "orthonormality", worst < 1e-8, fmt("max |<Qn|Qm> - d_nm| = %.2e (tol 1e-8)", worst));
}

void schrodinger() {
  double worst = 0.0;
  for (Sector s : kSectors) {
    for (int n = 0; n <= 5; ++n) worst = std::max(worst, diagnostics::schrodinger_residual({n, s, kP}));
  }
  report(3, "stationary residual", worst < 1e-6, fmt("max relative residual = %.2e (tol 1e-6)", worst));
}

void intertwine() {
  const auto r = diagnostics::intertwine_error(kP, 3);
  report(4, "SUSY intertwining", r.error < 1e-7,
         fmt("sup deviation = %.2e (tol 1e-7), sign ", r.error) + (r.sign > 0 ? "+1" : "-1"));
}

void partner() {
  const double e = diagnostics::partner_identity_error(kP, 50);
  report(5, "partner identity", e < 1e-9, fmt("max |V - (W^2 +- W')| = %.2e (tol 1e-9)", e));
}

void tdse() {
  std::vector<double> times;
  for (int i = 0; i < 8; ++i) times.push_back(0.3 + 1.6 * i);
  double worst = 0.0;
  for (const auto& p : kMoving) {
    for (Sector s : kSectors) {
      for (int n : {0, 1}) worst = std::max(worst, diagnostics::tdse_residual({n, s, kP}, p, times, 15));
    }
  }
  report(6, "TDSE residual", worst < 1e-3, fmt("max relative residual = %.2e (tol 1e-3)", worst));
}

void heisenberg() {
  double min_product = 1e300;
  int order = 0;
  for (const auto& p : kMoving) {
    for (int n = 0; n <= 2; ++n) {
      const StateObservables m({n, Sector::minus, kP});
      const StateObservables q({n, Sector::plus, kP});
      for (double t : grid200()) {
        const auto b = boundary_eval(p, t);
        const double pm = m.uncertainty_product(b);
        const double pp = q.uncertainty_product(b);
        min_product = std::min({min_product, pm, pp});
        order += !(pp < pm);
      }
    }
  }
  report(7, "Heisenberg bound", min_product >= 0.5 && order == 0,
         fmt("min product = %.6f", min_product) + ", plus >= minus in " + std::to_string(order) + "/1200 rows");
}

void rms_ordering() {
  int dx_order = 0;
  int monotone = 0;
  double worst_gap = 0.0;
  for (const auto& p : kMoving) {
    for (double t : grid200()) {
      const auto b = boundary_eval(p, t);
      for (Sector s : kSectors) {
        double prev_x = 0.0, prev_p = 0.0;
        for (int n = 0; n <= 2; ++n) {
          const StateObservables o({n, s, kP});
          monotone += o.delta_x(b) < prev_x || o.delta_p(b) < prev_p;
          prev_x = o.delta_x(b);
          prev_p = o.delta_p(b);
        }
      }
      for (int n = 0; n <= 2; ++n) {
        const double xm = StateObservables({n, Sector::minus, kP}).delta_x(b);
        const double xp = StateObservables({n, Sector::plus, kP}).delta_x(b);
        if (!(xp < xm)) {
          ++dx_order;
          worst_gap = std::max(worst_gap, (xp - xm) / xm);
        }
      }
    }
  }
  report(8, "RMS ordering", dx_order == 0 && monotone == 0,
         "dx(+) >= dx(-) in " + std::to_string(dx_order) + "/1200 rows" + fmt(" (up to %.1f%% larger)", 100 * worst_gap) +
             ", n-monotonicity violations " + std::to_string(monotone));
}

void static_limit() {
  double worst = 0.0;
  for (double L0 : {pi, 2.4}) {
    for (Sector s : kSectors) {
      for (int n = 0; n <= 2; ++n) {
        for (double t : {0.0, 5.0}) {
          const auto e = avg_energy(n, s, t, Fixed{L0}, kP);
          const double expect = pi * pi * energy(n, kP) / (L0 * L0);
          worst = std::max({worst, std::abs(e.imag()), std::abs(e.real() - expect)});
        }
      }
    }
  }
  report(9, "static limit", worst <= 1e-10, fmt("max deviation = %.2e (tol 1e-10)", worst));
}

void energy_oracle() {
  double worst = 0.0;
  double worst_real = 0.0;
  for (const auto& p : kMoving) {
    for (Sector s : kSectors) {
      for (int n = 0; n <= 2; ++n) {
        for (double t : {0.5, 1.7, 2.9, 4.1, 5.3}) {
          const auto fd = diagnostics::avg_energy_fd({n, s, kP}, p, t);
          const auto cf = avg_energy(n, s, t, p, kP);
          worst = std::max(worst, std::abs(cf - fd) / std::abs(fd));
          worst_real = std::max(worst_real, std::abs(cf.real() - fd.real()) / std::abs(fd.real()));
        }
      }
    }
  }
  double rest = 0.0;
  for (Sector s : kSectors) {
    for (int n = 0; n <= 2; ++n) {
      for (double t : {pi / 2, 3 * pi / 2}) rest = std::max(rest, std::abs(avg_energy(n, s, t, Sinusoidal{}, kP).imag()));
      for (double t : {0.0, pi, 2 * pi}) rest = std::max(rest, std::abs(avg_energy(n, s, t, kOsc, kP).imag()));
    }
  }
  report(10, "average-energy oracle", worst <= 1e-4 && rest <= 1e-12,
         fmt("closed form vs FD: max rel = %.3e", worst) + fmt(" (real part %.3e; tol 1e-4)", worst_real) +
             fmt(", |Im E| at Ldot=0: %.1e", rest));
}

void moments_brute_force() {
  double worst = 0.0;
  for (Sector s : kSectors) {
    for (int n = 0; n <= 2; ++n) {
      const Eigenstate q({n, s, kP});
      const StationaryState st{n, s, kP};
      const double i1 = oracle::tanh_trapezoid([&](const Angle& a) { return std::pow(q.value(a), 2) * a.q; });
      const double i2 = oracle::tanh_trapezoid([&](const Angle& a) { return std::pow(q.value(a) * a.q, 2); });
      const double i3 = oracle::tanh_trapezoid([&](const Angle& a) { return std::pow(q.deriv(a), 2); });
      worst = std::max({worst, std::abs(moment(st, 1) - i1) / std::abs(i1), std::abs(moment(st, 2) - i2) / i2,
                        std::abs(moment_kinetic(st) - i3) / i3});
    }
  }
  report(11, "moments vs trapezoid", worst < 1e-6, fmt("max relative difference = %.2e (tol 1e-6)", worst));
}

void determinism(const fs::path& scratch) {
  const fs::path a = scratch / "run_a";
  const fs::path b = scratch / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  std::ostringstream sink;
  const std::string sa = a.string(), sb = b.string();
  const char* argv_a[] = {"tdpt", "figure", "6", "--out", sa.c_str()};
  const char* argv_b[] = {"tdpt", "figure", "6", "--out", sb.c_str()};
  const int ca = cli::run(5, argv_a, sink, sink);
  const int cb = cli::run(5, argv_b, sink, sink);
  bool same = ca == 0 && cb == 0;
  int files = 0;
  if (same) {
    for (const auto& entry : fs::directory_iterator(a)) {
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
      };
      same &= fs::exists(b / entry.path().filename()) && slurp(entry.path()) == slurp(b / entry.path().filename());
      ++files;
    }
  }
  same &= files == 2;
  report(12, "determinism", same, std::to_string(files) + " figure-6 CSV files compared byte for byte");
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "tdpt_acceptance";
  fs::create_directories(scratch);
  spectrum();
  orthonormality();
  schrodinger();
  intertwine();
  partner();
  tdse();
  heisenberg();
  rms_ordering();
  static_limit();
  energy_oracle();
  moments_brute_force();
  determinism(scratch);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures ? 1 : 0;
}
