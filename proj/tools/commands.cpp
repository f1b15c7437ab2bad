#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

#include "cli.hpp"
#include "lph/json_io.hpp"
#include "lph/kernels.hpp"
#include "lph/number_theory.hpp"
#include "lph/spectral.hpp"

namespace lph::cli {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_head(const ExperimentConfig& c, const char* header) {
  return "# config_hash: " + config_hash(c) + "\n" + header + "\n";
}

Json stamped(const ExperimentConfig& c) { return Json{{"config_hash", config_hash(c)}, {"command", c.command}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string companion(const ExperimentConfig& c, const std::string& suffix) {
  return c.out.empty() ? std::string{} : c.out + suffix;
}

FrequencyChain chain_a(const ExperimentConfig& c) { return make_chain(c.chain, "config.chain"); }

FrequencyChain chain_b(const ExperimentConfig& c) {
  if (!c.chain_b) throw ConfigError("config.chain_b", "required by " + c.command);
  return make_chain(*c.chain_b, "config.chain_b");
}

CommandOutput cmd_classify(const ExperimentConfig& c) {
  Json j = stamped(c);
  const Json verdict = hulls_isomorphic(chain_a(c), chain_b(c), c.depth);
  for (const auto& [k, v] : verdict.items()) j[k] = v;
  return {dump(j), {}};
}

CommandOutput cmd_maximal_chain(const ExperimentConfig& c) {
  const FrequencyChain in = chain_a(c);
  const FrequencyChain m = maximal_chain(in, c.depth);
  Json j = stamped(c);
  j["input"] = in;
  j["maximal"] = m;
  j["order"] = chain_limit(m);
  return {dump(j), {}};
}

CommandOutput cmd_synth(const ExperimentConfig& c) {
  if (c.potential.kind == "iid") {
    std::string csv = csv_head(c, "n,value");
    for (std::int64_t n = c.window_lo; n <= c.window_hi; ++n) {
      csv += std::to_string(n) + "," + num(iid_uniform(c.seed, n)) + "\n";
    }
    Json m = stamped(c);
    m["kind"] = "iid";
    m["seed"] = c.seed;
    m["window"] = {c.window_lo, c.window_hi};
    m["error_bound"] = 0.0;
    CommandOutput out{csv, {}};
    const std::string path = c.manifest.empty() ? companion(c, ".manifest.json") : c.manifest;
    if (!path.empty()) out.extra.push_back({path, dump(m)});
    return out;
  }
  const Potential v = make_potential(c);
  std::string csv = csv_head(c, "n,value");
  double worst = 0.0;
  for (std::int64_t n = c.window_lo; n <= c.window_hi; ++n) {
    const Certified x = v.evaluate(n);
    worst = std::max(worst, x.error_bound);
    csv += std::to_string(n) + "," + num(x.value) + "\n";
  }
  Json m = stamped(c);
  m["kind"] = c.potential.kind == "remark" || c.potential.kind == "metric" ? c.potential.kind : std::string("layers");
  m["chain"] = v.sampling().chain();
  m["base"] = c.potential.base;
  m["generator"] = c.potential.generator;
  m["tolerance"] = c.potential.tolerance;
  m["evaluation_level"] = v.evaluation_level();
  m["error_bound"] = worst;
  m["window"] = {c.window_lo, c.window_hi};
  m["rows"] = c.window_hi - c.window_lo + 1;
  CommandOutput out{csv, {}};
  const std::string path = c.manifest.empty() ? companion(c, ".manifest.json") : c.manifest;
  if (!path.empty()) out.extra.push_back({path, dump(m)});
  return out;
}

std::vector<std::uint64_t> q_list(const ExperimentConfig& c) {
  if (!c.q.empty()) return c.q;
  const FrequencyChain chain = chain_a(c);
  const std::size_t depth =
      std::min(c.depth, chain.is_finite() ? chain.prefix().size() : chain.representable_depth());
  return chain.terms(depth);
}

CommandOutput cmd_detect_frequency(const ExperimentConfig& c) {
  const Sequence v = make_sequence(c);
  const auto shape = c.bohr_window == "half_open" ? BohrWindow::half_open : BohrWindow::closed;
  const auto window = static_cast<std::int64_t>(c.spectral.n);
  Json coeffs = Json::array();
  for (const std::uint64_t q : q_list(c)) {
    if (static_cast<std::uint64_t>(window) < q) {
      throw ConfigError("config.spectral.n", "window must be at least every q (" + std::to_string(q) + ")");
    }
    const BohrCoefficient b = bohr_coefficient(v, q, window, shape);
    coeffs.push_back({{"q", q}, {"re", b.value.real()}, {"im", b.value.imag()}, {"magnitude", b.magnitude}});
  }
  Json j = stamped(c);
  j["window"] = window;
  j["shape"] = c.bohr_window;
  j["coefficients"] = std::move(coeffs);
  return {dump(j), {}};
}

CommandOutput cmd_orbit(const ExperimentConfig& c) {
  const FrequencyChain chain = chain_a(c);
  const std::uint64_t n = chain.term(c.level);
  const std::uint64_t k_mod = floor_mod(c.k, n);
  const std::uint64_t orbit = n / std::gcd(k_mod, n);
  Json j = stamped(c);
  j["chain"] = chain;
  j["k"] = c.k;
  j["level"] = c.level;
  j["n_level"] = n;
  j["orbit_size"] = orbit;
  j["generator_verdict"] = is_generator(chain, c.k, c.depth);
  if (n <= (std::uint64_t{1} << 16)) {
    const auto residues = orbit_residues(chain, c.k, c.level, n);
    std::vector<std::uint64_t> sorted(residues);
    std::sort(sorted.begin(), sorted.end());
    j["covered"] = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    j["residues"] = std::vector<std::uint64_t>(residues.begin(), residues.begin() + orbit);
  }
  return {dump(j), {}};
}

CommandOutput cmd_quotient(const ExperimentConfig& c) {
  const QuotientMap map(chain_a(c), chain_b(c));
  const ProcyclicElement x = ProcyclicElement::from_integer(map.source(), c.level, c.k);
  const ProcyclicElement y = map.apply(x);
  std::vector<std::size_t> levels;
  for (std::size_t t = 1; t <= y.level(); ++t) levels.push_back(map.source_level(t));
  Json j = stamped(c);
  j["source_element"] = x;
  j["image"] = y;
  j["source_levels"] = levels;
  return {dump(j), {}};
}

CommandOutput cmd_spectrum(const ExperimentConfig& c) {
  const Potential v = make_potential(c);
  const bool periodic = c.potential.kind == "zero" || c.potential.kind == "periodic";
  const std::size_t level = periodic ? 1 : c.spectral.level;
  const SpectrumApprox s = spectrum_approx(v, level, c.spectral.tol);
  Json j = stamped(c);
  const Json bands = band_set_json(s.bands, s.tail_bound, s.level);
  for (const auto& [k, val] : bands.items()) j[k] = val;
  j["period"] = s.period;
  j["measure"] = measure_estimate(s.bands);
  return {dump(j), {}};
}

// max |k(E + d) - k(E)| over the grid, for a few d, as a rough modulus of
// continuity of the IDS.
Json continuity_report(const ExperimentConfig& c, const Sequence& v, const std::vector<double>& grid) {
  Json rows = Json::array();
  const auto base = ids_curve(v, grid, c.spectral.n);
  for (const double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
    std::vector<double> shifted(grid);
    for (double& e : shifted) e += d;
    const auto moved = ids_curve(v, shifted, c.spectral.n);
    double worst = 0.0;
    double at = grid.front();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double jump = moved.values[i] - base.values[i];
      if (jump > worst) {
        worst = jump;
        at = grid[i];
      }
    }
    rows.push_back({{"delta", d}, {"max_increment", worst}, {"at", at}, {"times_log_inverse_delta", worst * std::log(1.0 / d)}});
  }
  Json j = stamped(c);
  j["n"] = c.spectral.n;
  j["resolution"] = 1.0 / static_cast<double>(c.spectral.n);
  j["modulus"] = std::move(rows);
  return j;
}

CommandOutput cmd_ids(const ExperimentConfig& c) {
  const Sequence v = make_sequence(c);
  const auto grid = energy_grid(c.spectral.grid);
  const IDSCurve curve = ids_curve(v, grid, c.spectral.n);
  std::string csv = csv_head(c, "E,ids");
  for (std::size_t i = 0; i < grid.size(); ++i) csv += num(grid[i]) + "," + num(curve.values[i]) + "\n";
  CommandOutput out{csv, {}};
  if (const std::string path = companion(c, ".continuity.json"); !path.empty()) {
    out.extra.push_back({path, dump(continuity_report(c, v, grid))});
  }
  return out;
}

CommandOutput cmd_lyapunov(const ExperimentConfig& c) {
  const Sequence v = make_sequence(c);
  const auto grid = energy_grid(c.spectral.grid);
  const auto values = lyapunov_curve(v, grid, c.spectral.n);
  std::string csv = csv_head(c, "E,lyapunov,N");
  const std::string n = std::to_string(c.spectral.n);
  for (std::size_t i = 0; i < grid.size(); ++i) csv += num(grid[i]) + "," + num(values[i]) + "," + n + "\n";
  return {csv, {}};
}

CommandOutput cmd_gordon(const ExperimentConfig& c) {
  const Sequence v = make_sequence(c);
  const auto q = q_list(c);
  const GordonReport r = gordon_check(v, q);
  Json margins = Json::array();
  for (const auto& m : r.margins) {
    margins.push_back({{"j", m.j},
                       {"q", m.q},
                       {"max_deviation", m.max_deviation},
                       {"log_threshold", m.log_threshold},
                       {"pass", m.pass}});
  }
  Json j = stamped(c);
  j["gordon"] = r.gordon;
  j["margins"] = std::move(margins);
  return {dump(j), {}};
}

CommandOutput cmd_condition_a(const ExperimentConfig& c) {
  Json j = stamped(c);
  ConditionAReport r;
  if (!c.log_entries.empty()) {
    const std::vector<long double> logs(c.log_entries.begin(), c.log_entries.end());
    try {
      r = condition_a_check_logs(logs);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("config.log_entries", e.what());
    }
  } else {
    r = condition_a_check(chain_a(c), c.depth);
  }
  const Json report = r;
  for (const auto& [k, v] : report.items()) j[k] = v;
  return {dump(j), {}};
}

using Handler = std::function<CommandOutput(const ExperimentConfig&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"classify", cmd_classify},       {"maximal-chain", cmd_maximal_chain},
      {"synth", cmd_synth},             {"detect-frequency", cmd_detect_frequency},
      {"orbit", cmd_orbit},             {"quotient", cmd_quotient},
      {"spectrum", cmd_spectrum},       {"ids", cmd_ids},
      {"lyapunov", cmd_lyapunov},       {"gordon", cmd_gordon},
      {"condition-a", cmd_condition_a},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"classify", "maximal-chain", "synth",    "detect-frequency",
                                              "orbit",    "quotient",      "spectrum", "ids",
                                              "lyapunov", "gordon",        "condition-a"};
  return names;
}

CommandOutput run(const ExperimentConfig& c) {
  const auto it = handlers().find(c.command);
  if (it == handlers().end()) throw ConfigError("config.command", "unknown command \"" + c.command + "\"");
  if (c.threads > 0) kernels::set_threads(c.threads);
  return it->second(c);
}

}  // namespace lph::cli
