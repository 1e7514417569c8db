#include "frackappa/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "frackappa/error.hpp"
#include "json.hpp"

namespace frackappa {

namespace {

using nlohmann::json;

const std::vector<std::string> kEmitKinds{"sweep",      "wavefunctions", "lambda",
                                          "trk",        "threelevel",    "finitefield"};

double round12(double v) { return std::round(v * 1e12) / 1e12; }

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
}

// Reads `key` as T if present; records a type problem otherwise.
template <class T>
void read(const json& doc, const char* key, T& out, std::vector<std::string>& problems) {
  auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    problems.push_back(std::string(key) + ": expected " +
                       (std::is_same_v<T, std::string> ? "a string"
                        : std::is_floating_point_v<T> ? "a number"
                                                       : "a non-negative integer") +
                       ", got " + it->dump());
  }
}

void read_size(const json& doc, const char* key, std::size_t& out, std::vector<std::string>& problems) {
  auto it = doc.find(key);
  if (it == doc.end()) return;
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    problems.push_back(std::string(key) + ": expected a non-negative integer, got " + it->dump());
    return;
  }
  out = it->get<std::size_t>();
}

void read_alphas(const json& doc, std::vector<double>& out, std::vector<std::string>& problems) {
  auto it = doc.find("alpha_list");
  if (it == doc.end()) return;
  const json& a = *it;
  if (a.is_number()) {
    out = {a.get<double>()};
  } else if (a.is_array()) {
    out.clear();
    for (const auto& v : a) {
      if (!v.is_number()) {
        problems.push_back("alpha_list: entries must be numbers, got " + v.dump());
        return;
      }
      out.push_back(v.get<double>());
    }
    if (out.empty()) problems.push_back("alpha_list: must not be empty");
  } else if (a.is_object()) {
    for (const auto& [k, v] : a.items()) {
      if (k != "start" && k != "stop" && k != "step") {
        problems.push_back("alpha_list." + k + ": unknown key (expected start, stop, step)");
      }
    }
    double start = 1.0, stop = 1.0, step = 0.05;
    read(a, "start", start, problems);
    read(a, "stop", stop, problems);
    read(a, "step", step, problems);
    if (!(step > 0.0)) {
      problems.push_back("alpha_list.step: must be positive, got " + std::to_string(step));
      return;
    }
    out = alpha_range(start, stop, step);
  } else {
    problems.push_back("alpha_list: expected a number, a list, or {start, stop, step}");
  }
}

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::cqho: return "cqho";
    case PotentialKind::slantwell: return "slantwell";
    case PotentialKind::symmetric_ho: return "symmetric-ho";
  }
  return "unknown";
}

std::vector<double> alpha_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw ParameterError("alpha sweep step must be positive");
  const double direction = stop >= start ? 1.0 : -1.0;
  const auto count = static_cast<long>(std::floor(std::abs(stop - start) / step + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= count; ++i) out.push_back(round12(start + direction * step * i));
  return out;
}

std::size_t RunConfig::effective_k_sum() const { return std::min(k_sum, k_states); }

std::size_t RunConfig::solved_states() const { return std::max(k_states, effective_k_sum() + 10); }

bool RunConfig::emits(std::string_view what) const {
  return std::find(emit.begin(), emit.end(), what) != emit.end();
}

PotentialSpec RunConfig::potential_spec() const {
  switch (potential) {
    case PotentialKind::cqho: return Cqho{omega, 0.0};
    case PotentialKind::slantwell: return SlantWell{slope, 0.0};
    case PotentialKind::symmetric_ho: return SymmetricHo{omega};
  }
  return Cqho{omega, 0.0};
}

std::vector<std::string> config_problems(const RunConfig& c) {
  std::vector<std::string> problems;
  for (double a : c.alpha_list) {
    if (!(a > 0.5 && a <= 1.0)) {
      problems.push_back("alpha_list: value " + std::to_string(a) + " outside the range (0.5, 1]");
    }
  }
  if (c.alpha_list.empty()) problems.push_back("alpha_list: must not be empty");
  if (!(c.omega > 0.0)) problems.push_back("omega: must be positive");
  if (!(c.slope > 0.0)) problems.push_back("slope: must be positive");
  if (c.n_grid < 64) problems.push_back("n_grid: must be at least 64, got " + std::to_string(c.n_grid));
  if (!(c.domain_width > 0.0)) problems.push_back("domain_width: must be positive");
  if (c.k_states < 3) problems.push_back("k_states: must be at least 3");
  if (c.k_sum < 2) problems.push_back("k_sum: must be at least 2");
  if (c.n_grid >= 64 && c.solved_states() > c.n_grid / 4) {
    problems.push_back("k_states: " + std::to_string(c.solved_states()) +
                       " states needed but at most n_grid/4 = " + std::to_string(c.n_grid / 4) +
                       " are resolved");
  }
  if (!(c.calib_tol > 0.0)) problems.push_back("calib_tol: must be positive");
  if (!(c.field_step > 0.0)) problems.push_back("field_step: must be positive");
  if (c.jobs < 1) problems.push_back("jobs: must be at least 1");
  for (const auto& e : c.emit) {
    if (std::find(kEmitKinds.begin(), kEmitKinds.end(), e) == kEmitKinds.end()) {
      problems.push_back("emit: unknown output '" + e +
                         "' (expected sweep, wavefunctions, lambda, trk, threelevel, finitefield)");
    }
  }
  const bool sidecars = std::any_of(c.emit.begin(), c.emit.end(), [](const auto& e) { return e != "sweep"; });
  if (sidecars && c.output.empty()) {
    problems.push_back("output: required when emit lists anything besides sweep");
  }
  return problems;
}

RunConfig validate_config(std::string_view text) {
  RunConfig config;
  if (blank(text)) return config;

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"top level must be a JSON object"});

  std::vector<std::string> problems;
  static const std::vector<std::string> known{
      "potential", "omega",     "slope",      "alpha_list", "n_grid", "domain_width", "k_states",
      "k_sum",     "calib_tol", "field_step", "output",     "emit",   "jobs"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      problems.push_back(key + ": unknown key");
    }
  }

  std::string potential = to_string(config.potential);
  read(doc, "potential", potential, problems);
  if (potential == "cqho") {
    config.potential = PotentialKind::cqho;
  } else if (potential == "slantwell") {
    config.potential = PotentialKind::slantwell;
  } else if (potential == "symmetric-ho") {
    config.potential = PotentialKind::symmetric_ho;
  } else {
    problems.push_back("potential: expected cqho, slantwell or symmetric-ho, got '" + potential + "'");
  }

  read(doc, "omega", config.omega, problems);
  read(doc, "slope", config.slope, problems);
  read_alphas(doc, config.alpha_list, problems);
  read_size(doc, "n_grid", config.n_grid, problems);
  read(doc, "domain_width", config.domain_width, problems);
  read_size(doc, "k_states", config.k_states, problems);
  read_size(doc, "k_sum", config.k_sum, problems);
  read(doc, "calib_tol", config.calib_tol, problems);
  read(doc, "field_step", config.field_step, problems);
  read(doc, "output", config.output, problems);
  if (auto it = doc.find("emit"); it != doc.end()) {
    if (it->is_string()) {
      config.emit = {it->get<std::string>()};
    } else if (it->is_array() && std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_string(); })) {
      config.emit = it->get<std::vector<std::string>>();
    } else {
      problems.push_back("emit: expected a string or a list of strings");
    }
  }
  std::size_t jobs = config.jobs;
  read_size(doc, "jobs", jobs, problems);
  config.jobs = static_cast<unsigned>(jobs);

  for (auto& p : config_problems(config)) problems.push_back(std::move(p));
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

}  // namespace frackappa
