#include "frackappa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "frackappa/error.hpp"

namespace frackappa {

namespace {

constexpr std::size_t kBlock = 5;

Eigen::MatrixXd trk_block(const Spectrum& spectrum, const TransitionTable& table,
                          const LambdaMatrix& lambda, const PhysicalConstants& consts) {
  const auto n = std::min(kBlock, spectrum.count());
  Eigen::MatrixXd out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          trk_residual(spectrum, table, lambda, k, l, consts).residual;
    }
  }
  return out;
}

template <class Row>
void write_rows(const std::vector<SweepRow>& rows, std::ostream& out, Row&& row) {
  for (const auto& r : rows) {
    if (r.point) row(*r.point, out);
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

SolvedPoint solve_point(const RunConfig& config, double alpha) {
  const FractionalOrder order(alpha);
  const PhysicalConstants consts;
  const GridPolicy policy = scaled_policy(config.n_grid, config.domain_width, order.alpha(), consts);
  CalibrationOptions options;
  options.tol = config.calib_tol;
  options.k_states = config.solved_states();
  CalibrationResult calibration =
      calibrate_offset(config.potential_spec(), policy, order.alpha(), consts, options);
  System system{with_wall_offset(config.potential_spec(), calibration.b), policy, order.alpha(), consts};
  return {std::move(system), std::move(calibration)};
}

SweepRow compute_row(const RunConfig& config, double alpha) {
  try {
    SolvedPoint solved = solve_point(config, alpha);
    const System& system = solved.system;
    const Spectrum& spectrum = solved.calibration.spectrum;
    const auto& consts = system.consts;
    const std::size_t k_sum = config.effective_k_sum();

    const TransitionTable table = transition_moments(spectrum, consts);
    const LambdaMatrix lambda = lambda_matrix(spectrum);
    const ResponseReport report = response_report(system, spectrum, k_sum);
    const auto& lam = lambda.values;
    const auto& e = spectrum.energies;

    SweepPoint p{};
    p.alpha = alpha;
    p.b_offset = solved.calibration.b;
    p.e0 = e(0);
    p.e1 = e(1);
    p.e2 = e(2);
    p.e10 = report.e10;
    p.e20 = report.e20;
    p.lam00 = lam(0, 0);
    p.lam11 = lam(1, 1);
    p.lam10 = lam(1, 0);
    p.lam20 = lam(2, 0);
    p.kappa1 = report.kappa1;
    p.kappa2 = report.kappa2;
    p.kappa1_app = report.kappa1_apparent;
    p.kappa2_app = report.kappa2_apparent;
    p.kappa2_max_frac = kappa2_max_fractional(p.lam00, p.lam11, p.lam10, p.lam20, p.e10, consts);
    p.trk00_residual = trk_residual(spectrum, table, lambda, 0, 0, consts).residual;
    p.deltas = report.deltas;
    p.converged = report.deltas.converged();

    const auto block = static_cast<Eigen::Index>(std::min(kBlock, spectrum.count()));
    p.lambda_block = lam.topLeftCorner(block, block);
    p.trk_block = trk_block(spectrum, table, lambda, consts);
    p.moment_ratio = std::abs(table.moments(1, 0)) / x10_max(p.e10, p.lam00, consts);
    p.energy_ratio = p.e10 / p.e20;
    if (config.emits("finitefield")) {
      FiniteFieldOptions ff;
      ff.step = config.field_step;
      p.finite_field = finite_field_kappa(system, ff);
    }
    return {alpha, std::move(p), {}};
  } catch (const std::exception& ex) {
    return {alpha, std::nullopt, ex.what()};
  }
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  const auto problems = config_problems(config);
  if (!problems.empty()) throw ConfigError(problems);

  const std::size_t count = config.alpha_list.size();
  std::vector<std::optional<SweepRow>> slots(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      slots[i] = compute_row(config, config.alpha_list[i]);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<SweepRow> rows;
  rows.reserve(count);
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

std::string sweep_header() {
  return "alpha,b_offset,E0,E1,E2,E10,E20,lam00,lam11,lam10,lam20,kappa1,kappa2,kappa1_app,"
         "kappa2_app,kappa2_max_frac,trk00_residual,converged";
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << sweep_header() << '\n';
  for (const auto& r : rows) {
    out << format_number(r.alpha);
    if (!r.point) {
      for (int i = 0; i < 16; ++i) out << ',';
      out << ",error\n";
      continue;
    }
    const SweepPoint& p = *r.point;
    for (double v : {p.b_offset, p.e0, p.e1, p.e2, p.e10, p.e20, p.lam00, p.lam11, p.lam10, p.lam20,
                     p.kappa1, p.kappa2, p.kappa1_app, p.kappa2_app, p.kappa2_max_frac.value,
                     p.trk00_residual}) {
      out << ',' << format_number(v);
    }
    out << ',' << (p.converged ? "true" : "false") << '\n';
  }
}

void emit_wavefunctions(const RunConfig& config, double alpha, std::ostream& out) {
  const SolvedPoint solved = solve_point(config, alpha);
  const Spectrum& s = solved.calibration.spectrum;
  const Grid1D& grid = s.grid;
  const Eigen::VectorXd v =
      potential_on_grid(solved.system.potential, grid, alpha, solved.system.consts);
  const auto states = static_cast<Eigen::Index>(std::min<std::size_t>(5, s.count()));
  out << "x,V";
  for (Eigen::Index k = 0; k < states; ++k) out << ",psi" << k;
  out << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    out << format_number(grid.x(i)) << ',' << format_number(v(ii));
    for (Eigen::Index k = 0; k < states; ++k) out << ',' << format_number(s.states(ii, k));
    out << '\n';
  }
}

void write_lambda_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "alpha,k,l,lambda\n";
  write_rows(rows, out, [](const SweepPoint& p, std::ostream& o) {
    for (Eigen::Index k = 0; k < p.lambda_block.rows(); ++k) {
      for (Eigen::Index l = 0; l < p.lambda_block.cols(); ++l) {
        o << format_number(p.alpha) << ',' << k << ',' << l << ',' << format_number(p.lambda_block(k, l))
          << '\n';
      }
    }
  });
}

void write_trk_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "alpha,k,l,residual\n";
  write_rows(rows, out, [](const SweepPoint& p, std::ostream& o) {
    for (Eigen::Index k = 0; k < p.trk_block.rows(); ++k) {
      for (Eigen::Index l = 0; l < p.trk_block.cols(); ++l) {
        o << format_number(p.alpha) << ',' << k << ',' << l << ',' << format_number(p.trk_block(k, l))
          << '\n';
      }
    }
  });
}

void write_threelevel_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "alpha,X,E,tl_kappa1,tl_kappa2,kappa1,kappa2,kappa2_max_frac,argmax_X,argmax_E,"
         "max_signed,min_signed\n";
  write_rows(rows, out, [](const SweepPoint& p, std::ostream& o) {
    ThreeLevelParams tl;
    tl.moment_ratio = std::min(p.moment_ratio, 1.0);
    tl.energy_ratio = p.energy_ratio;
    tl.e10 = p.e10;
    tl.lam00 = p.lam00;
    tl.lam11 = p.lam11;
    tl.lam10 = p.lam10;
    tl.lam20 = p.lam20;
    const auto& m = p.kappa2_max_frac;
    o << format_number(p.alpha);
    for (double v : {p.moment_ratio, p.energy_ratio, tl_kappa1(tl), tl_kappa2(tl), p.kappa1, p.kappa2,
                     m.value, m.moment_ratio, m.energy_ratio, m.max_signed, m.min_signed}) {
      o << ',' << format_number(v);
    }
    o << '\n';
  });
}

void write_finitefield_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "alpha,kappa1_sos,kappa1_ff,kappa2_sos,kappa2_ff,field_step\n";
  write_rows(rows, out, [](const SweepPoint& p, std::ostream& o) {
    if (!p.finite_field) return;
    const auto& ff = *p.finite_field;
    o << format_number(p.alpha);
    for (double v : {p.kappa1, ff.kappa1, p.kappa2, ff.kappa2, ff.step}) o << ',' << format_number(v);
    o << '\n';
  });
}

}  // namespace frackappa
