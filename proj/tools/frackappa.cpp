#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "frackappa/blas_guard.hpp"
#include "frackappa/checks.hpp"
#include "frackappa/config.hpp"
#include "frackappa/error.hpp"
#include "frackappa/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kNumericFailure = 2, kNotConverged = 3 };

frackappa::RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw frackappa::ConfigError({"cannot read config file '" + path + "'"});
  std::stringstream text;
  text << in.rdbuf();
  return frackappa::validate_config(text.str());
}

// Writes to `path`, or to stdout when path is empty.
template <class Writer>
void write_output(const std::string& path, Writer&& writer) {
  if (path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw frackappa::ConfigError({"cannot open output file '" + path + "'"});
  writer(out);
}

std::string sidecar(const std::string& output, const std::string& what) {
  const auto dot = output.rfind('.');
  const auto slash = output.find_last_of('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? output.substr(0, dot) : output) + "." + what + ".csv";
}

int run_sweep_command(const std::string& config_path, unsigned jobs, const std::string& out_path) {
  frackappa::RunConfig config = load_config(config_path);
  if (jobs > 0) config.jobs = jobs;
  if (!out_path.empty()) config.output = out_path;
  if (const auto problems = frackappa::config_problems(config); !problems.empty()) {
    throw frackappa::ConfigError(problems);
  }

  const auto rows = frackappa::run_sweep(config);
  write_output(config.output, [&](std::ostream& o) { frackappa::write_sweep_csv(rows, o); });
  if (config.emits("lambda")) {
    write_output(sidecar(config.output, "lambda"), [&](std::ostream& o) { frackappa::write_lambda_csv(rows, o); });
  }
  if (config.emits("trk")) {
    write_output(sidecar(config.output, "trk"), [&](std::ostream& o) { frackappa::write_trk_csv(rows, o); });
  }
  if (config.emits("threelevel")) {
    write_output(sidecar(config.output, "threelevel"),
                 [&](std::ostream& o) { frackappa::write_threelevel_csv(rows, o); });
  }
  if (config.emits("finitefield")) {
    write_output(sidecar(config.output, "finitefield"),
                 [&](std::ostream& o) { frackappa::write_finitefield_csv(rows, o); });
  }
  if (config.emits("wavefunctions")) {
    for (const auto& row : rows) {
      if (!row.point) continue;
      write_output(sidecar(config.output, "wavefunctions.a" + frackappa::format_number(row.alpha)),
                   [&](std::ostream& o) { frackappa::emit_wavefunctions(config, row.alpha, o); });
    }
  }

  bool failed = false, unconverged = false;
  for (const auto& row : rows) {
    if (!row.point) {
      failed = true;
      std::cerr << "alpha " << frackappa::format_number(row.alpha) << ": " << row.error << '\n';
    } else if (!row.point->converged) {
      unconverged = true;
      const auto& d = row.point->deltas;
      std::cerr << "alpha " << frackappa::format_number(row.alpha)
                << ": convergence guard failed (relative deltas: kappa1 states "
                << frackappa::format_number(d.kappa1_states) << ", kappa2 states "
                << frackappa::format_number(d.kappa2_states) << ", kappa1 grid "
                << frackappa::format_number(d.kappa1_grid) << ", kappa2 grid "
                << frackappa::format_number(d.kappa2_grid) << ")\n";
    }
  }
  if (failed) return kNumericFailure;
  return unconverged ? kNotConverged : kOk;
}

int run_check_command() {
  bool all = true;
  for (const auto& r : frackappa::run_invariant_checks()) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
    all = all && r.passed;
  }
  return all ? kOk : kNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
  frackappa::select_blas_kernel(argv);

  CLI::App app{"Static polarizability and hyperpolarizability of space-fractional quantum systems"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  unsigned jobs = 0;
  double alpha = 1.0;

  auto* sweep = app.add_subcommand("sweep", "Run an alpha sweep and write the CSV table");
  sweep->add_option("--config", config_path, "JSON run configuration")->required();
  sweep->add_option("--jobs", jobs, "Worker threads (overrides the config)");
  sweep->add_option("--out", out_path, "Output CSV path (overrides the config; default stdout)");

  auto* wave = app.add_subcommand("wavefunctions", "Write x, V(x) and the first five states");
  wave->add_option("--config", config_path, "JSON run configuration")->required();
  wave->add_option("--alpha", alpha, "Fractional order in (0.5, 1]")->required();
  wave->add_option("--out", out_path, "Output CSV path (default stdout)");

  app.add_subcommand("check", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(config_path, jobs, out_path);
    if (wave->parsed()) {
      const auto config = load_config(config_path);
      frackappa::FractionalOrder{alpha};
      write_output(out_path, [&](std::ostream& o) { frackappa::emit_wavefunctions(config, alpha, o); });
      return kOk;
    }
    return run_check_command();
  } catch (const frackappa::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  } catch (const frackappa::ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}
