#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "cli.hpp"
#include "lph/json_io.hpp"

namespace lph::cli {

namespace {

template <class T>
T get(const Json& j, const std::string& path, const char* expected) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(path, std::string("expected ") + expected);
  }
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

Json chain_json(const ChainSpec& s) { return Json{{"prefix", s.prefix}, {"rule", s.rule}}; }

// A chain object replaces the previous chain whole; "rule" defaults to empty.
ChainSpec chain_overlay(const Json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("prefix")) throw ConfigError(path + ".prefix", "required");
  ChainSpec s{{}, {}};
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "." + key;
    if (key == "prefix") {
      s.prefix = get<std::vector<std::uint64_t>>(value, p, "an array of positive integers");
    } else if (key == "rule") {
      s.rule = get<std::vector<std::uint64_t>>(value, p, "an array of integers >= 2");
    } else {
      throw ConfigError(p, "unknown field");
    }
  }
  make_chain(s, path);
  return s;
}

std::size_t positive_size(const Json& j, const std::string& path) {
  const auto v = get<std::int64_t>(j, path, "an integer");
  if (v <= 0) throw ConfigError(path, "must be positive");
  return static_cast<std::size_t>(v);
}

}  // namespace

FrequencyChain make_chain(const ChainSpec& s, const std::string& path) {
  try {
    return FrequencyChain{s.prefix, s.rule};
  } catch (const ChainError& e) {
    throw ConfigError(path, e.what());
  }
}

ChainSpec parse_chain_spec(const std::string& text, const std::string& path) {
  auto numbers = [&](const std::string& part) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || item[0] == '-') throw ConfigError(path, "bad chain entry \"" + item + "\"");
      out.push_back(v);
    }
    return out;
  };
  const auto bar = text.find('|');
  ChainSpec s;
  s.prefix = numbers(text.substr(0, bar));
  s.rule = bar == std::string::npos ? std::vector<std::uint64_t>{} : numbers(text.substr(bar + 1));
  make_chain(s, path);
  return s;
}

Json to_json(const ExperimentConfig& c) {
  Json grid{{"lo", c.spectral.grid.lo}, {"hi", c.spectral.grid.hi}, {"count", c.spectral.grid.count}};
  if (!c.spectral.grid.energies.empty()) grid["energies"] = c.spectral.grid.energies;
  Json j{{"command", c.command}, {"chain", chain_json(c.chain)}};
  j["chain_b"] = c.chain_b ? chain_json(*c.chain_b) : Json(nullptr);
  j["potential"] = {{"kind", c.potential.kind},
                    {"values", c.potential.values},
                    {"base", c.potential.base},
                    {"generator", c.potential.generator},
                    {"tolerance", c.potential.tolerance}};
  j["spectral"] = {{"level", c.spectral.level}, {"n", c.spectral.n}, {"tol", c.spectral.tol}, {"grid", grid}};
  j["k"] = c.k;
  j["depth"] = c.depth;
  j["level"] = c.level;
  j["window"] = {c.window_lo, c.window_hi};
  j["q"] = c.q;
  j["log_entries"] = c.log_entries;
  j["bohr_window"] = c.bohr_window;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out"] = c.out;
  j["manifest"] = c.manifest;
  return j;
}

ExperimentConfig overlay(ExperimentConfig c, const Json& j) {
  require_object(j, "config");
  for (const auto& [key, value] : j.items()) {
    const std::string p = "config." + key;
    if (key == "command") {
      c.command = get<std::string>(value, p, "a string");
    } else if (key == "chain") {
      c.chain = chain_overlay(value, p);
    } else if (key == "chain_b") {
      if (value.is_null()) {
        c.chain_b.reset();
      } else {
        c.chain_b = chain_overlay(value, p);
      }
    } else if (key == "potential") {
      require_object(value, p);
      for (const auto& [pk, pv] : value.items()) {
        const std::string pp = p + "." + pk;
        if (pk == "kind") {
          c.potential.kind = get<std::string>(pv, pp, "a string");
          static const std::vector<std::string> kinds{"zero", "periodic", "remark", "metric", "iid"};
          if (std::find(kinds.begin(), kinds.end(), c.potential.kind) == kinds.end()) {
            throw ConfigError(pp, "must be one of zero, periodic, remark, metric, iid");
          }
        } else if (pk == "values") {
          c.potential.values = get<std::vector<double>>(pv, pp, "an array of numbers");
        } else if (pk == "base") {
          c.potential.base = get<std::int64_t>(pv, pp, "an integer");
        } else if (pk == "generator") {
          c.potential.generator = get<std::int64_t>(pv, pp, "an integer");
        } else if (pk == "tolerance") {
          c.potential.tolerance = get<double>(pv, pp, "a number");
          if (!(c.potential.tolerance > 0.0)) throw ConfigError(pp, "must be positive");
        } else {
          throw ConfigError(pp, "unknown field");
        }
      }
    } else if (key == "spectral") {
      require_object(value, p);
      for (const auto& [sk, sv] : value.items()) {
        const std::string sp = p + "." + sk;
        if (sk == "level") {
          c.spectral.level = positive_size(sv, sp);
        } else if (sk == "n") {
          c.spectral.n = positive_size(sv, sp);
        } else if (sk == "tol") {
          c.spectral.tol = get<double>(sv, sp, "a number");
          if (!(c.spectral.tol > 0.0)) throw ConfigError(sp, "must be positive");
        } else if (sk == "grid") {
          require_object(sv, sp);
          for (const auto& [gk, gv] : sv.items()) {
            const std::string gp = sp + "." + gk;
            if (gk == "lo") {
              c.spectral.grid.lo = get<double>(gv, gp, "a number");
            } else if (gk == "hi") {
              c.spectral.grid.hi = get<double>(gv, gp, "a number");
            } else if (gk == "count") {
              c.spectral.grid.count = positive_size(gv, gp);
            } else if (gk == "energies") {
              c.spectral.grid.energies = get<std::vector<double>>(gv, gp, "an array of numbers");
              if (!std::is_sorted(c.spectral.grid.energies.begin(), c.spectral.grid.energies.end())) {
                throw ConfigError(gp, "must be ascending");
              }
            } else {
              throw ConfigError(gp, "unknown field");
            }
          }
          if (!(c.spectral.grid.lo <= c.spectral.grid.hi)) throw ConfigError(sp, "lo must not exceed hi");
        } else {
          throw ConfigError(sp, "unknown field");
        }
      }
    } else if (key == "k") {
      c.k = get<std::int64_t>(value, p, "an integer");
    } else if (key == "depth") {
      c.depth = positive_size(value, p);
    } else if (key == "level") {
      c.level = positive_size(value, p);
    } else if (key == "window") {
      const auto w = get<std::vector<std::int64_t>>(value, p, "[lo, hi] integers");
      if (w.size() != 2 || w[0] > w[1]) throw ConfigError(p, "expected [lo, hi] with lo <= hi");
      c.window_lo = w[0];
      c.window_hi = w[1];
    } else if (key == "q") {
      c.q = get<std::vector<std::uint64_t>>(value, p, "an array of positive integers");
      for (std::size_t i = 0; i < c.q.size(); ++i) {
        if (c.q[i] == 0) throw ConfigError(p + "[" + std::to_string(i) + "]", "must be positive");
      }
    } else if (key == "log_entries") {
      c.log_entries = get<std::vector<double>>(value, p, "an array of numbers");
    } else if (key == "bohr_window") {
      c.bohr_window = get<std::string>(value, p, "a string");
      if (c.bohr_window != "closed" && c.bohr_window != "half_open") {
        throw ConfigError(p, "must be closed or half_open");
      }
    } else if (key == "seed") {
      c.seed = get<std::uint64_t>(value, p, "an unsigned integer");
    } else if (key == "threads") {
      c.threads = get<int>(value, p, "an integer");
      if (c.threads < 0) throw ConfigError(p, "must be nonnegative");
    } else if (key == "out") {
      c.out = get<std::string>(value, p, "a string");
    } else if (key == "manifest") {
      c.manifest = get<std::string>(value, p, "a string");
    } else {
      throw ConfigError(p, "unknown field");
    }
  }
  return c;
}

ExperimentConfig from_json(const Json& j) { return overlay(ExperimentConfig{}, j); }

std::string config_hash(const ExperimentConfig& c) {
  Json j = to_json(c);
  j.erase("out");
  j.erase("manifest");
  j.erase("threads");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<double> energy_grid(const GridSpec& g) {
  if (!g.energies.empty()) return g.energies;
  std::vector<double> out(g.count);
  for (std::size_t i = 0; i < g.count; ++i) {
    out[i] = g.count == 1 ? g.lo
                          : g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.count - 1);
  }
  out.back() = g.count == 1 ? g.lo : g.hi;
  return out;
}

Potential make_potential(const ExperimentConfig& c) {
  const PotentialSpec& p = c.potential;
  if (p.kind == "zero") return Potential::periodic({0.0});
  if (p.kind == "periodic") {
    if (p.values.empty()) throw ConfigError("config.potential.values", "periodic potential needs values");
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      if (!std::isfinite(p.values[i])) {
        throw ConfigError("config.potential.values[" + std::to_string(i) + "]", "must be finite");
      }
    }
    return Potential::periodic(p.values);
  }
  const FrequencyChain chain = make_chain(c.chain, "config.chain");
  if (p.kind == "remark") return Potential{SamplingFunction::remark(chain), p.base, p.generator, p.tolerance};
  if (p.kind == "metric") return Potential{SamplingFunction::metric(chain), p.base, p.generator, p.tolerance};
  throw ConfigError("config.potential.kind", "\"" + p.kind + "\" has no sampling function");
}

Sequence make_sequence(const ExperimentConfig& c) {
  if (c.potential.kind == "iid") return iid_uniform_sequence(c.seed);
  auto v = std::make_shared<Potential>(make_potential(c));
  return [v](std::int64_t n) { return (*v)(n); };
}

}  // namespace lph::cli
