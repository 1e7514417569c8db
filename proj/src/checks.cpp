#include "frackappa/checks.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>

#include "frackappa/fracop.hpp"
#include "frackappa/response.hpp"
#include "frackappa/sweep.hpp"
#include "frackappa/threelevel.hpp"

namespace frackappa {

namespace {

// First zero of the Airy function Ai.
constexpr double kAiryZero1 = -2.338107410459767;

std::string num(double v) { return format_number(v); }

}  // namespace

std::vector<CheckResult> run_invariant_checks() {
  std::vector<CheckResult> results;
  const auto check = [&](const std::string& name, const std::function<CheckResult()>& body) {
    try {
      CheckResult r = body();
      r.name = name;
      results.push_back(std::move(r));
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };
  const PhysicalConstants consts;

  check("riesz(beta=2) is the three-point Laplacian", [] {
    const Grid1D grid(0.0, 0.5, 32);
    const auto d = riesz_matrix(grid, 2.0).entries;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(32, 32);
    for (int i = 0; i < 32; ++i) {
      lap(i, i) = -2.0 / 0.25;
      if (i > 0) lap(i, i - 1) = 1.0 / 0.25;
      if (i < 31) lap(i, i + 1) = 1.0 / 0.25;
    }
    const double diff = (d - lap).cwiseAbs().maxCoeff();
    return CheckResult{{}, diff == 0.0, "max diff " + num(diff)};
  });

  check("riesz symmetric and negative semidefinite", [] {
    const Grid1D grid(0.0, 0.05, 200);
    double worst_asym = 0.0, worst_ratio = -1.0;
    for (double beta : {1.1, 1.4, 1.6, 1.9, 2.0}) {
      const auto d = riesz_matrix(grid, beta).entries;
      worst_asym = std::max(worst_asym, (d - d.transpose()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
      worst_ratio = std::max(worst_ratio, es.eigenvalues().maxCoeff() / d.norm());
    }
    return CheckResult{{}, worst_asym == 0.0 && worst_ratio <= 1e-10,
                       "asymmetry " + num(worst_asym) + ", lambda_max/|D| " + num(worst_ratio)};
  });

  check("clipped oscillator alpha=1 energies 1.5, 3.5, 5.5", [&] {
    const System sys{Cqho{1.0, 0.0}, {3000, 12.0}, 1.0, consts};
    const auto s = sys.spectrum(3);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(s.energies(k) / (1.5 + 2.0 * k) - 1.0));
    return CheckResult{{}, worst < 1e-3, "max relative error " + num(worst)};
  });

  check("slant well alpha=1 ground energy at the Airy zero", [&] {
    const System sys{SlantWell{1.0, 0.0}, {3000, 16.0}, 1.0, consts};
    const double e0 = sys.spectrum(1).energies(0);
    const double expected = -kAiryZero1 / std::cbrt(2.0);
    const double err = std::abs(e0 / expected - 1.0);
    return CheckResult{{}, err < 1e-3, "E0 " + num(e0) + " vs " + num(expected)};
  });

  check("clipped oscillator alpha=1 calibrates to b = -2/sqrt(pi)", [&] {
    CalibrationOptions opt;
    opt.k_states = 5;
    const auto cal = calibrate_offset(Cqho{1.0, 0.0}, {3000, 16.0}, 1.0, consts, opt);
    const double expected = -2.0 / std::sqrt(std::numbers::pi);
    return CheckResult{{}, std::abs(cal.b - expected) < 1e-3 && std::abs(cal.residual) < 1e-8,
                       "b " + num(cal.b) + ", <0|x|0> " + num(cal.residual)};
  });

  check("lambda identity and TRK sum rule at alpha=1", [&] {
    CalibrationOptions opt;
    opt.k_states = 60;
    const auto cal = calibrate_offset(Cqho{1.0, 0.0}, {3000, 16.0}, 1.0, consts, opt);
    const Eigen::MatrixXd lam = lambda_matrix(cal.spectrum).values.topLeftCorner(5, 5);
    const double dev = (lam - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff();
    const auto table = transition_moments(cal.spectrum, consts);
    const double trk = trk_residual(cal.spectrum, table, lambda_matrix(cal.spectrum), 0, 0, consts).residual;
    return CheckResult{{}, dev <= 1e-2 && trk < 1e-2,
                       "max |lambda - I| " + num(dev) + ", TRK(0,0) residual " + num(trk)};
  });

  check("symmetric oscillator: kappa1 = 1, kappa2 = 0", [&] {
    for (double alpha : {1.0, 0.8}) {
      const System sys{SymmetricHo{1.0}, scaled_policy(1500, 20.0, alpha, consts), alpha, consts};
      const auto s = sys.spectrum(40);
      const auto table = transition_moments(s, consts);
      const double k1 = sos_kappa1(table, s.energies, 40, consts);
      const double k2 = sos_kappa2(table, s.energies, 40, consts);
      if (std::abs(k2) >= 1e-6 || (alpha == 1.0 && std::abs(k1 - 1.0) > 1e-2)) {
        return CheckResult{{}, false, "alpha " + num(alpha) + ": kappa1 " + num(k1) + ", kappa2 " + num(k2)};
      }
    }
    return CheckResult{{}, true, "parity null and oscillator polarizability hold"};
  });

  check("three-level maximum with lambda = identity", [&] {
    const auto m = kappa2_max_fractional(1.0, 1.0, 0.0, 0.0, 1.0, consts);
    const double expected = kappa2_max_standard(1.0, 1, consts);
    const double err = std::abs(m.value / expected - 1.0);
    const bool ok = err < 5e-3 && std::abs(m.moment_ratio - std::pow(3.0, -0.25)) < 1e-2 &&
                    m.energy_ratio <= 0.02;
    return CheckResult{{}, ok,
                       "max " + num(m.value) + " at X=" + num(m.moment_ratio) + ", E=" + num(m.energy_ratio)};
  });

  return results;
}

}  // namespace frackappa
