#include <cmath>

#include "doctest.h"
#include "frackappa/error.hpp"
#include "frackappa/fracop.hpp"
#include "frackappa/response.hpp"

using namespace frackappa;

namespace {

const PhysicalConstants kAtomic{};

}  // namespace

TEST_CASE("transition moments of the symmetric oscillator") {
  const System sys{SymmetricHo{1.0}, {1201, 16.0}, 1.0, kAtomic};
  const Spectrum s = sys.spectrum(12);
  const TransitionTable t = transition_moments(s, kAtomic);
  REQUIRE(t.count() == 12);
  CHECK(std::abs(t.moments(0, 1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(std::abs(t.moments(1, 2)) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(t.moments(0, 2)) < 1e-10);
  CHECK(std::abs(t.moments(0, 0)) < 1e-10);
  CHECK((t.moments - t.moments.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.bar(0, 0) == 0.0);
  CHECK(t.bar(1, 1) == doctest::Approx(t.moments(1, 1) - t.moments(0, 0)));
  CHECK(t.bar(1, 2) == t.moments(1, 2));

  CHECK(sos_kappa1(t, s.energies, 12, kAtomic) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(sos_kappa2(t, s.energies, 12, kAtomic)) < 1e-8);
  CHECK_THROWS_AS(sos_kappa1(t, s.energies, 13, kAtomic), ParameterError);
  CHECK_THROWS_AS(sos_kappa2(t, s.energies, 1, kAtomic), ParameterError);
}

TEST_CASE("lambda matrix matches the double commutator") {
  // [xh, [H, xh]] = (hbar^2 / m) Lambda, built from dense matrices.
  for (double alpha : {1.0, 0.85, 0.7}) {
    const System sys{Cqho{1.0, -1.0}, scaled_policy(240, 14.0, alpha, kAtomic), alpha, kAtomic};
    const Spectrum s = sys.spectrum(8);
    const Eigen::MatrixXd h = sys.hamiltonian();
    const Eigen::MatrixXd x = canonical_positions(sys.grid(), alpha, kAtomic).asDiagonal();
    const Eigen::MatrixXd inner = h * x - x * h;
    const Eigen::MatrixXd outer = x * inner - inner * x;
    const Eigen::MatrixXd oracle =
        s.states.transpose() * outer * s.states * s.grid.dx() * (kAtomic.m / (kAtomic.hbar * kAtomic.hbar));
    const LambdaMatrix lam = lambda_matrix(s);
    CHECK((lam.values - oracle).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((lam.values - lam.values.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lambda matrix limits") {
  const System sys{SlantWell{1.0, 0.0}, {1500, 16.0}, 1.0, kAtomic};
  const LambdaMatrix lam = lambda_matrix(sys.spectrum(6));
  for (int k = 0; k < 5; ++k) {
    CHECK(lam.values(k, k) == doctest::Approx(1.0).epsilon(1e-3));
    for (int l = 0; l < k; ++l) CHECK(std::abs(lam.values(k, l)) < 1e-3);
  }
}

TEST_CASE("trk residual") {
  SUBCASE("integer order closes with the full state sum") {
    const System sys{SymmetricHo{1.0}, {1201, 16.0}, 1.0, kAtomic};
    const Spectrum s = sys.spectrum(30);
    const TransitionTable t = transition_moments(s, kAtomic);
    const LambdaMatrix lam = lambda_matrix(s);
    const TrkResidual r = trk_residual(s, t, lam, 0, 0, kAtomic);
    CHECK(r.residual < 1e-4);
    CHECK(r.converged);
    CHECK(trk_residual(s, t, lam, 2, 2, kAtomic).residual < 1e-4);
    CHECK(trk_residual(s, t, lam, 0, 2, kAtomic).residual < 1e-4);
    CHECK_THROWS_AS(trk_residual(s, t, lam, 30, 0, kAtomic), ParameterError);
  }
  SUBCASE("fractional order stays small with 60 states") {
    const double alpha = 0.8;
    const CalibrationOptions opts{1e-8, 50, 60, 2};
    const CalibrationResult c =
        calibrate_offset(Cqho{1.0, 0.0}, scaled_policy(600, 16.0, alpha, kAtomic), alpha, kAtomic, opts);
    const TransitionTable t = transition_moments(c.spectrum, kAtomic);
    const TrkResidual r = trk_residual(c.spectrum, t, lambda_matrix(c.spectrum), 0, 0, kAtomic);
    CHECK(r.residual < 5e-2);
  }
}

TEST_CASE("polynomial fit") {
  const std::vector<double> fields{-0.2, -0.1, 0.0, 0.1, 0.2};
  std::vector<double> energies;
  for (double f : fields) energies.push_back(1.0 - 0.5 * f + 0.25 * f * f - 3.0 * f * f * f + 7.0 * f * f * f * f);
  const auto c = fit_polynomial(fields, energies);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(-0.5));
  CHECK(c[2] == doctest::Approx(0.25));
  CHECK(c[3] == doctest::Approx(-3.0));
  CHECK(c[4] == doctest::Approx(7.0));
  const std::vector<double> seven{-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
  std::vector<double> sextic;
  for (double f : seven) sextic.push_back(2.0 + f * f * f - 5.0 * std::pow(f, 6));
  const auto s = fit_polynomial(seven, sextic);
  REQUIRE(s.size() == 7);
  CHECK(s[0] == doctest::Approx(2.0));
  CHECK(std::abs(s[2]) < 1e-9);
  CHECK(s[3] == doctest::Approx(1.0));
  CHECK(s[6] == doctest::Approx(-5.0));
  CHECK_THROWS_AS(fit_polynomial({0.0, 1.0}, {0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(fit_polynomial(seven, energies), ParameterError);
  CHECK_THROWS_AS(fit_polynomial({0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}), ParameterError);
}

TEST_CASE("finite field agrees with the state sum") {
  SUBCASE("symmetric oscillator") {
    const System sys{SymmetricHo{1.0}, {801, 16.0}, 1.0, kAtomic};
    const FiniteFieldResult ff = finite_field_kappa(sys);
    CHECK(ff.kappa1 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(ff.kappa2) < 1e-6);
    CHECK(ff.fields.size() == 7);
    CHECK(ff.fields[4] == ff.step);
  }
  for (double alpha : {1.0, 0.85}) {
    CAPTURE(alpha);
    const CalibrationOptions opts{1e-8, 50, 40, 2};
    const GridPolicy policy = scaled_policy(alpha == 1.0 ? 1500 : 500, 16.0, alpha, kAtomic);
    const CalibrationResult c = calibrate_offset(SlantWell{1.0, 0.0}, policy, alpha, kAtomic, opts);
    const System sys{SlantWell{1.0, c.b}, policy, alpha, kAtomic};
    const TransitionTable t = transition_moments(c.spectrum, kAtomic);
    const double k1 = sos_kappa1(t, c.spectrum.energies, 40, kAtomic);
    const double k2 = sos_kappa2(t, c.spectrum.energies, 40, kAtomic);
    const FiniteFieldResult ff = finite_field_kappa(sys);
    CHECK(ff.kappa1 == doctest::Approx(k1).epsilon(1e-2));
    CHECK(ff.kappa2 == doctest::Approx(k2).epsilon(1e-2));
    CHECK(k2 != 0.0);
  }
  FiniteFieldOptions bad;
  bad.step = -1.0;
  CHECK_THROWS_AS(finite_field_kappa(System{SymmetricHo{}, {101, 16.0}, 1.0, kAtomic}, bad), ParameterError);
}

TEST_CASE("slant well responses from the tilted-slope identity") {
  // A field F on V = A (x - b) gives slope A + F, so E0(F) = K (1 + F)^(2/3) + F b
  // with K = E0(0): kappa1 = 2K/9 and kappa2 = 12K/81.
  const double k_airy = std::cbrt(0.5) * 2.338107410459767;
  const CalibrationResult c = calibrate_offset(SlantWell{1.0, 0.0}, {1500, 16.0}, 1.0, kAtomic, {1e-8, 50, 60, 2});
  const System sys{SlantWell{1.0, c.b}, {1500, 16.0}, 1.0, kAtomic};
  const TransitionTable t = transition_moments(c.spectrum, kAtomic);
  const double k1 = sos_kappa1(t, c.spectrum.energies, 60, kAtomic);
  const double k2 = sos_kappa2(t, c.spectrum.energies, 60, kAtomic);
  const FiniteFieldResult ff = finite_field_kappa(sys);
  CHECK(k1 == doctest::Approx(2.0 * k_airy / 9.0).epsilon(1e-3));
  CHECK(k2 == doctest::Approx(12.0 * k_airy / 81.0).epsilon(2e-3));
  CHECK(ff.kappa1 == doctest::Approx(2.0 * k_airy / 9.0).epsilon(1e-3));
  CHECK(ff.kappa2 == doctest::Approx(12.0 * k_airy / 81.0).epsilon(1e-3));
}

TEST_CASE("relative change and convergence deltas") {
  CHECK(relative_change(1.0, 1.01) == doctest::Approx(0.01 / 1.01));
  CHECK(relative_change(0.0, 0.0) == 0.0);
  CHECK(relative_change(0.0, 1e-9, 1e-3) == doctest::Approx(1e-6));

  ConvergenceDeltas d{1e-3, 1e-3, 1e-3, 2e-2};
  CHECK_FALSE(d.converged());
  CHECK(d.converged(5e-2));

  const double alpha = 0.9;
  const GridPolicy policy = scaled_policy(400, 16.0, alpha, kAtomic);
  const CalibrationResult c = calibrate_offset(Cqho{1.0, 0.0}, policy, alpha, kAtomic, {1e-8, 50, 30, 1});
  const System sys{Cqho{1.0, c.b}, policy, alpha, kAtomic};
  const ResponseReport r = response_report(sys, c.spectrum, 20);
  CHECK(r.k_sum == 20);
  CHECK(r.e10 == doctest::Approx(c.spectrum.energies(1) - c.spectrum.energies(0)));
  CHECK(r.kappa1 > 0.0);
  CHECK(r.deltas.kappa1_states < 1e-3);
  CHECK(r.deltas.kappa1_grid < 5e-2);
  CHECK(r.kappa1_apparent > 0.0);
  CHECK(r.kappa1_apparent < 1.0);
  CHECK_THROWS_AS(convergence_report(sys, c.spectrum, 25), ParameterError);
}
