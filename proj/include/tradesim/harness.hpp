#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tradesim/analysis.hpp"
#include "tradesim/config.hpp"
#include "tradesim/model.hpp"

namespace tradesim {

class IoError : public std::runtime_error {
public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

class SnapshotError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct StepRow {
  std::uint64_t step = 0;
  double price = 0.0;
  double supply = 0.0;
  double demand = 0.0;
  double q = 0.0;
  double imbalance = 0.0;
  double vol_offered = 0.0;
  double vol_executed = 0.0;
  double ret1 = 0.0;
};

struct WealthSnapshot {
  std::uint64_t step = 0;
  double price = 0.0;
  std::vector<AgentState> agents;
};

struct RecordingOptions {
  std::vector<std::uint64_t> snapshot_steps;  // step 0 is always captured
  bool keep_rows = true;
  bool keep_series = false;  // volume_offered and price per step only
  std::uint64_t trades_from = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t trade_stride = 1;
  std::optional<std::filesystem::path> output_dir;  // steps.csv, wealth.csv[, trades.csv]
};

struct RunRecord {
  SimConfig config;
  std::vector<StepRow> rows;
  std::vector<double> volume_series;
  std::vector<double> price_series;  // price after each step
  std::vector<WealthSnapshot> snapshots;
  std::vector<TradeRecord> trades;
  MarketState final_state;
  double max_stock_drift = 0.0;  // relative, over snapshots
  double max_money_drift = 0.0;
};

// 4 (N/c)^2: where the default schedule starts uniform snapshots and where
// stationary fits start pooling.
std::uint64_t stationary_start(const SimConfig& config);

// 8 (N/c)^2.
std::uint64_t default_step_budget(std::uint32_t n_agents, double invest_fraction);

// Geometric steps 10, 100, ... up to n_steps, plus ~200 uniform steps
// between stationary_start and n_steps.
std::vector<std::uint64_t> default_snapshot_schedule(const SimConfig& config);

// "auto", "none", "every:<k>" or a comma separated step list.
std::vector<std::uint64_t> parse_snapshot_schedule(const std::string& text,
                                                   const SimConfig& config);

RunRecord run_simulation(const SimConfig& config, const RecordingOptions& options);

// Continues `state` until config.n_steps. Rows, snapshots and trades
// cover only the continued part.
RunRecord continue_simulation(const SimConfig& config, MarketState state,
                              const RecordingOptions& options);

// CSV writers for the three run artifacts.
void write_steps_header(std::ostream& out);
void write_step_row(std::ostream& out, const StepRow& row);
void write_wealth_header(std::ostream& out);
void write_wealth_rows(std::ostream& out, const WealthSnapshot& snapshot);
void write_trades_header(std::ostream& out);
void write_trade_row(std::ostream& out, const TradeRecord& trade);

std::vector<StepRow> read_steps_csv(const std::filesystem::path& path);
std::vector<WealthSnapshot> read_wealth_csv(const std::filesystem::path& path);
std::vector<TradeRecord> read_trades_csv(const std::filesystem::path& path);

struct Checkpoint {
  SimConfig config;
  MarketState state;
};

// Versioned text container with the config, the state in hexfloat and an
// FNV-1a checksum. The random stream position is (config.seed, state.step).
void snapshot_state(const SimConfig& config, const MarketState& state,
                    const std::filesystem::path& path);
Checkpoint restore_state(const std::filesystem::path& path);

struct SweepGrid {
  std::vector<std::uint32_t> n_values;
  std::vector<double> c_values;
  std::uint32_t replicas = 1;
  std::uint64_t base_seed = 0;
  std::function<std::uint64_t(std::uint32_t, double)> steps_rule = default_step_budget;
  SimConfig base;  // everything except n_agents, invest_fraction, n_steps, seed
};

// Documented seed derivation: splitmix-chained over base seed, N, the bit
// pattern of c and the replica index.
std::uint64_t cell_seed(std::uint64_t base_seed, std::uint32_t n_agents, double invest_fraction,
                        std::uint32_t replica);

struct SweepCellResult {
  std::uint32_t n_agents = 0;
  double invest_fraction = 0.0;
  std::uint32_t replica = 0;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::optional<CrossoverResult> crossover;
  std::string crossover_error;
  std::optional<TailFitResult> stock_tail;
  std::string stock_tail_error;
  std::optional<ReturnTailResult> return_tail;
  std::string return_tail_error;
};

struct SweepOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cell_output_root;  // per-cell run artifacts
};

// Smoothing window used for crossover detection on a run of `steps`.
std::size_t crossover_window(std::uint64_t steps);

// Crossover and stationary fits for one finished run.
SweepCellResult analyze_cell(const RunRecord& record);

std::vector<SweepCellResult> run_sweep(const SweepGrid& grid, const SweepOptions& options = {});

}  // namespace tradesim
