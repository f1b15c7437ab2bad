// lphull: command-line driver. Defaults, then flags, then the --config file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Flags {
  std::string config, out, manifest, chain, chain_b, kind, values, grid, window, q, log_entries, bohr_window;
  std::int64_t base = 0, generator = 1, k = 1;
  std::uint64_t seed = 0;
  int threads = 0;
  std::size_t depth = 0, level = 0, n = 0;
  double tolerance = 0.0, tol = 0.0;
};

template <class T>
std::vector<T> split_list(const std::string& text, char sep, const std::string& path) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw lph::cli::ConfigError(path, "bad list entry \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << contents;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lph::cli;
  CLI::App app{"Limit-periodic hulls, procyclic groups and spectral measurements"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "JSON config; its fields override flags");
  app.add_option("--out", f.out, "output path (default stdout)");
  app.add_option("--seed", f.seed, "RNG seed");
  app.add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)");

  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->add_option("--chain", f.chain, "chain PREFIX[|RULE], e.g. 2,4|2");
    sub->add_option("--chain-b", f.chain_b, "second chain");
    sub->add_option("--kind", f.kind, "potential: zero, periodic, remark, metric, iid");
    sub->add_option("--values", f.values, "one period, comma separated");
    sub->add_option("--base", f.base, "orbit base point m (omega = mE)");
    sub->add_option("--generator", f.generator, "translation k");
    sub->add_option("--tolerance", f.tolerance, "potential evaluation tolerance");
    sub->add_option("-k", f.k, "integer k");
    sub->add_option("--depth", f.depth, "certificate / chain depth");
    sub->add_option("--level", f.level, "level J");
    sub->add_option("--n", f.n, "truncation size N or Bohr window");
    sub->add_option("--tol", f.tol, "band edge tolerance");
    sub->add_option("--grid", f.grid, "energy grid lo:hi:count");
    sub->add_option("--window", f.window, "sample window lo:hi");
    sub->add_option("--q", f.q, "q list, comma separated");
    sub->add_option("--log-entries", f.log_entries, "natural logs of chain entries, comma separated");
    sub->add_option("--bohr-window", f.bohr_window, "closed or half_open");
    sub->add_option("--manifest", f.manifest, "manifest path for synth");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    ExperimentConfig c;
    c.command = sub->get_name();
    auto given = [&](const char* flag) {
      const CLI::Option* o = sub->get_option_no_throw(flag);
      if (!o) o = app.get_option_no_throw(flag);
      return o && o->count() > 0;
    };
    if (given("--out")) c.out = f.out;
    if (given("--seed")) c.seed = f.seed;
    if (given("--threads")) c.threads = f.threads;
    if (given("--chain")) c.chain = parse_chain_spec(f.chain, "--chain");
    if (given("--chain-b")) c.chain_b = parse_chain_spec(f.chain_b, "--chain-b");
    Json patch = Json::object();
    if (given("--kind")) patch["potential"]["kind"] = f.kind;
    if (given("--values")) c.potential.values = split_list<double>(f.values, ',', "--values");
    if (given("--base")) c.potential.base = f.base;
    if (given("--generator")) c.potential.generator = f.generator;
    if (given("--tolerance")) patch["potential"]["tolerance"] = f.tolerance;
    if (given("-k")) c.k = f.k;
    if (given("--depth")) patch["depth"] = f.depth;
    if (given("--level")) {
      patch["level"] = f.level;
      patch["spectral"]["level"] = f.level;
    }
    if (given("--n")) patch["spectral"]["n"] = f.n;
    if (given("--tol")) patch["spectral"]["tol"] = f.tol;
    if (given("--grid")) {
      const auto g = split_list<double>(f.grid, ':', "--grid");
      if (g.size() != 3) throw ConfigError("--grid", "expected lo:hi:count");
      patch["spectral"]["grid"] = {{"lo", g[0]}, {"hi", g[1]}, {"count", static_cast<std::int64_t>(g[2])}};
    }
    if (given("--window")) {
      const auto w = split_list<std::int64_t>(f.window, ':', "--window");
      if (w.size() != 2) throw ConfigError("--window", "expected lo:hi");
      patch["window"] = w;
    }
    if (given("--q")) c.q = split_list<std::uint64_t>(f.q, ',', "--q");
    if (given("--log-entries")) c.log_entries = split_list<double>(f.log_entries, ',', "--log-entries");
    if (given("--bohr-window")) patch["bohr_window"] = f.bohr_window;
    if (given("--manifest")) c.manifest = f.manifest;
    c = overlay(c, patch);

    if (given("--config")) {
      std::ifstream in(f.config);
      if (!in) throw ConfigError("--config", "cannot open " + f.config);
      Json file;
      try {
        file = Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("--config", e.what());
      }
      if (file.is_object() && file.contains("command") && file["command"] != c.command) {
        throw ConfigError("config.command", "does not match the subcommand " + c.command);
      }
      c = overlay(c, file);
    }

    const CommandOutput out = run(c);
    if (c.out.empty()) {
      std::cout << out.main;
    } else {
      write_file(c.out, out.main);
    }
    for (const auto& extra : out.extra) write_file(extra.path, extra.contents);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
