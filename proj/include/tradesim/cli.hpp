#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tradesim/config.hpp"

namespace tradesim::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // a check ran and failed (oracle-check)
  kConfigError = 2,
  kIoError = 3,
  kMissingInputs = 4,
};

// Ordered `key = value` pairs from a config file. Blank lines and lines
// starting with '#' are skipped. Throws IoError / ConfigError.
std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::filesystem::path& path);

// Parses "key=value" from a --set flag.
std::pair<std::string, std::string> split_override(const std::string& text);

struct RunSettings {
  SimConfig sim;
  std::optional<std::uint64_t> seed;     // required, from file or --seed
  std::optional<std::uint64_t> n_steps;  // default 8 (N/c)^2
  std::string output_dir;                // default $TRADESIM_OUTPUT_ROOT/run_seed<seed>
  std::string snapshot_schedule = "auto";
  std::string trade_sampling = "auto";   // auto | none | all

  void set(const std::string& key, const std::string& value);
  // Fills defaults, validates, and returns the final SimConfig.
  SimConfig resolve();
  std::string echo() const;
};

struct SweepSettings {
  SimConfig base;
  std::vector<std::uint32_t> n_values;
  std::vector<double> c_values;
  std::uint32_t replicas = 1;
  std::uint64_t base_seed = 0;
  double steps_factor = 8.0;
  unsigned workers = 1;
  bool cell_artifacts = false;
  std::string output_dir;

  void set(const std::string& key, const std::string& value);
  void resolve();
  std::string echo() const;
};

struct RunArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  std::string output_dir;
  std::vector<std::string> overrides;
};

struct SweepArgs {
  std::string config_path;
  std::optional<unsigned> workers;
  std::string output_dir;
  std::vector<std::string> overrides;
};

struct AnalyzeArgs {
  std::string run_dir;
  std::vector<std::size_t> horizons{1};
  int bins_per_decade = 5;
  std::string output_dir;  // default <run_dir>/analysis
};

struct OracleArgs {
  std::size_t specs = 50;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double q_bias = 0.0;  // fault-injection hook
  std::string output_dir;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const OracleArgs& args, std::ostream& out, std::ostream& err);

// Full command line entry point.
int main(int argc, char** argv);

}  // namespace tradesim::cli
