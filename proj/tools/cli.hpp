#pragma once

// Experiment configuration and the subcommands of the lphull driver.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lph/frequency.hpp"
#include "lph/potential.hpp"

namespace lph::cli {

using Json = nlohmann::ordered_json;

/// Validation failure carrying the path of the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::invalid_argument(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ChainSpec {
  std::vector<std::uint64_t> prefix{2};
  std::vector<std::uint64_t> rule{2};
};

struct PotentialSpec {
  std::string kind = "remark";  // zero | periodic | remark | metric | iid
  std::vector<double> values;   // one period, for kind periodic
  std::int64_t base = 0;
  std::int64_t generator = 1;
  double tolerance = 1e-12;
};

struct GridSpec {
  double lo = -3.0;
  double hi = 3.0;
  std::size_t count = 101;
  std::vector<double> energies;  // used instead of lo/hi/count when nonempty
};

struct SpectralSpec {
  std::size_t level = 3;
  std::size_t n = 10000;
  double tol = 1e-10;
  GridSpec grid;
};

struct ExperimentConfig {
  std::string command;
  ChainSpec chain;
  std::optional<ChainSpec> chain_b;
  PotentialSpec potential;
  SpectralSpec spectral;
  std::int64_t k = 1;
  std::size_t depth = 8;
  std::size_t level = 4;
  std::int64_t window_lo = -3;
  std::int64_t window_hi = 3;
  std::vector<std::uint64_t> q;
  std::vector<double> log_entries;
  std::string bohr_window = "closed";
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::string manifest;
};

/// Round-trip stable JSON form.
Json to_json(const ExperimentConfig& c);
/// Overlays the keys present in `j` onto `base`; unknown keys and bad values
/// raise ConfigError with the field path.
ExperimentConfig overlay(ExperimentConfig base, const Json& j);
ExperimentConfig from_json(const Json& j);

/// FNV-1a 64 of the canonical JSON, without output paths and thread count.
std::string config_hash(const ExperimentConfig& c);

FrequencyChain make_chain(const ChainSpec& s, const std::string& path);
/// PREFIX[|RULE], comma separated: "2,4|2" is 2, 4, 8, ...
ChainSpec parse_chain_spec(const std::string& text, const std::string& path);
std::vector<double> energy_grid(const GridSpec& g);

Sequence make_sequence(const ExperimentConfig& c);
Potential make_potential(const ExperimentConfig& c);

struct OutputFile {
  std::string path;
  std::string contents;
};

struct CommandOutput {
  std::string main;                 // written to --out or stdout
  std::vector<OutputFile> extra;    // companion files
};

const std::vector<std::string>& command_names();
/// Runs the configured command. Throws ConfigError or library errors.
CommandOutput run(const ExperimentConfig& c);

}  // namespace lph::cli
