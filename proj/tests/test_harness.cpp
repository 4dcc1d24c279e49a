#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tradesim/harness.hpp"

using namespace tradesim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("tradesim_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimConfig config(std::uint32_t n, double c, std::uint64_t steps, std::uint64_t seed) {
  SimConfig cfg;
  cfg.n_agents = n;
  cfg.invest_fraction = c;
  cfg.n_steps = steps;
  cfg.seed = seed;
  return cfg;
}

bool same_tail(const std::optional<TailFitResult>& a, const std::optional<TailFitResult>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->exponent == b->exponent && a->xmin == b->xmin && a->n_tail == b->n_tail);
}

bool same_cell(const SweepCellResult& a, const SweepCellResult& b) {
  if (a.n_agents != b.n_agents || a.invest_fraction != b.invest_fraction || a.replica != b.replica ||
      a.seed != b.seed || a.steps != b.steps)
    return false;
  if (a.crossover.has_value() != b.crossover.has_value()) return false;
  if (a.crossover && (a.crossover->tau != b.crossover->tau ||
                      a.crossover->early_level != b.crossover->early_level))
    return false;
  if (a.return_tail.has_value() != b.return_tail.has_value()) return false;
  if (a.return_tail && (a.return_tail->excess_kurtosis != b.return_tail->excess_kurtosis ||
                        !same_tail(a.return_tail->tail, b.return_tail->tail)))
    return false;
  return same_tail(a.stock_tail, b.stock_tail) && a.crossover_error == b.crossover_error &&
         a.stock_tail_error == b.stock_tail_error && a.return_tail_error == b.return_tail_error;
}

}  // namespace

TEST_CASE("zero steps gives the initial snapshot only") {
  RecordingOptions opts;
  auto rec = run_simulation(config(10, 0.5, 0, 1), opts);
  CHECK(rec.rows.empty());
  REQUIRE(rec.snapshots.size() == 1);
  CHECK(rec.snapshots[0].step == 0);
  CHECK(rec.final_state.step == 0);
}

TEST_CASE("rows are step ordered and match the model") {
  auto cfg = config(30, 0.5, 300, 4);
  RecordingOptions opts;
  opts.keep_series = true;
  auto rec = run_simulation(cfg, opts);
  REQUIRE(rec.rows.size() == 300);
  REQUIRE(rec.price_series.size() == 300);
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    CHECK(rec.rows[i].step == i + 1);
    CHECK(rec.rows[i].price == rec.price_series[i]);
    CHECK(rec.rows[i].vol_offered == rec.volume_series[i]);
  }
  auto state = init_state(cfg);
  CounterRng rng(cfg.seed);
  for (int i = 0; i < 300; ++i) market_step(state, cfg, rng);
  CHECK(state == rec.final_state);
  CHECK(rec.rows[0].ret1 == doctest::Approx(std::log(rec.rows[0].price / cfg.init_price)));
}

TEST_CASE("identical runs give identical CSV bytes") {
  TempDir a("bytes_a");
  TempDir b("bytes_b");
  auto cfg = config(40, 0.5, 2000, 12);
  for (const auto* dir : {&a.path, &b.path}) {
    RecordingOptions opts;
    opts.output_dir = *dir;
    opts.snapshot_steps = {10, 100, 1000, 2000};
    opts.trades_from = 1000;
    opts.trade_stride = 7;
    run_simulation(cfg, opts);
  }
  for (const char* name : {"steps.csv", "wealth.csv", "trades.csv"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(a.path / name));
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  }
  std::istringstream lines(slurp(a.path / "steps.csv"));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "step,price,supply,demand,q,imbalance,vol_offered,vol_executed,ret1");
  std::istringstream wealth(slurp(a.path / "wealth.csv"));
  std::getline(wealth, header);
  CHECK(header == "step,agent,stock,money,wealth_money,wealth_stock");
  std::istringstream trades(slurp(a.path / "trades.csv"));
  std::getline(trades, header);
  CHECK(header == "step,agent,side,shares,currency");
}

TEST_CASE("CSV round trip") {
  TempDir dir("roundtrip");
  auto cfg = config(25, 0.4, 500, 3);
  RecordingOptions opts;
  opts.output_dir = dir.path;
  opts.snapshot_steps = {100, 500};
  opts.trades_from = 0;
  auto rec = run_simulation(cfg, opts);
  auto rows = read_steps_csv(dir.path / "steps.csv");
  REQUIRE(rows.size() == rec.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].price == rec.rows[i].price);
    CHECK(rows[i].ret1 == rec.rows[i].ret1);
  }
  auto snaps = read_wealth_csv(dir.path / "wealth.csv");
  REQUIRE(snaps.size() == rec.snapshots.size());
  CHECK(snaps.back().agents == rec.snapshots.back().agents);
  CHECK(snaps.back().price == doctest::Approx(rec.snapshots.back().price).epsilon(1e-12));
  auto trades = read_trades_csv(dir.path / "trades.csv");
  REQUIRE(trades.size() == rec.trades.size());
  CHECK(trades.back().shares == rec.trades.back().shares);
  CHECK(trades.back().side == rec.trades.back().side);
  CHECK_THROWS_AS(read_steps_csv(dir.path / "missing.csv"), IoError);
}

TEST_CASE("conservation at every snapshot over 2e5 steps") {
  auto cfg = config(200, 0.5, 200000, 2024);
  RecordingOptions opts;
  opts.keep_rows = false;
  opts.snapshot_steps = parse_snapshot_schedule("every:2000", cfg);
  auto rec = run_simulation(cfg, opts);
  REQUIRE(rec.snapshots.size() == 101);
  const double stock0 = 200 * cfg.init_stock;
  const double money0 = 200 * cfg.init_money;
  double worst = 0.0;
  for (const auto& snap : rec.snapshots) {
    double stock = 0.0;
    double money = 0.0;
    for (const auto& a : snap.agents) {
      REQUIRE(a.stock >= 0.0);
      REQUIRE(a.money >= 0.0);
      stock += a.stock;
      money += a.money;
    }
    worst = std::max({worst, std::abs(stock / stock0 - 1.0), std::abs(money / money0 - 1.0)});
  }
  CHECK(worst <= 1e-9);
  CHECK(rec.max_stock_drift <= 1e-9);
  CHECK(rec.max_money_drift <= 1e-9);
}

TEST_CASE("snapshot schedules") {
  auto cfg = config(50, 0.5, 100000, 1);
  CHECK(stationary_start(cfg) == 40000);
  CHECK(default_step_budget(50, 0.5) == 80000);
  CHECK(parse_snapshot_schedule("none", cfg).empty());
  CHECK(parse_snapshot_schedule("every:25000", cfg) ==
        std::vector<std::uint64_t>{25000, 50000, 75000, 100000});
  CHECK(parse_snapshot_schedule("5, 17,3", cfg) == std::vector<std::uint64_t>{3, 5, 17});
  auto autos = parse_snapshot_schedule("auto", cfg);
  CHECK(autos == default_snapshot_schedule(cfg));
  CHECK(std::is_sorted(autos.begin(), autos.end()));
  CHECK(std::count(autos.begin(), autos.end(), 10) == 1);
  CHECK(std::count(autos.begin(), autos.end(), 10000) == 1);
  CHECK(std::count_if(autos.begin(), autos.end(), [](auto s) { return s >= 40000; }) >= 150);
  CHECK(autos.back() <= 100000);
  CHECK_THROWS(parse_snapshot_schedule("every:0", cfg));
  CHECK_THROWS(parse_snapshot_schedule("sometimes", cfg));
}

TEST_CASE("snapshot and restore") {
  TempDir dir("snapshot");
  auto cfg = config(20, 0.5, 1000, 99);
  cfg.interest_rate = 1e-5;
  auto state = init_state(cfg);
  CounterRng rng(cfg.seed);
  for (int i = 0; i < 500; ++i) market_step(state, cfg, rng);
  const auto file = dir.path / "half.snap";
  snapshot_state(cfg, state, file);
  auto restored = restore_state(file);
  CHECK(restored.config == cfg);
  CHECK(restored.state == state);

  auto resumed = continue_simulation(restored.config, restored.state, RecordingOptions{});
  auto unbroken = run_simulation(cfg, RecordingOptions{});
  CHECK(resumed.final_state == unbroken.final_state);
  CHECK(resumed.rows.size() == 500);
  CHECK(resumed.rows.back().price == unbroken.rows.back().price);

  SUBCASE("truncated file") {
    const auto text = slurp(file);
    const auto cut = dir.path / "cut.snap";
    std::ofstream(cut, std::ios::binary) << text.substr(0, text.size() / 2);
    CHECK_THROWS_AS(restore_state(cut), SnapshotError);
  }
  SUBCASE("flipped digit") {
    auto text = slurp(file);
    const auto pos = text.find("agents");
    REQUIRE(pos != std::string::npos);
    auto digit = text.find_first_of("123456789", pos + 20);
    text[digit] = text[digit] == '1' ? '2' : '1';
    const auto bad = dir.path / "bad.snap";
    std::ofstream(bad, std::ios::binary) << text;
    CHECK_THROWS_AS(restore_state(bad), SnapshotError);
  }
  SUBCASE("version mismatch") {
    auto text = slurp(file);
    text.replace(0, text.find('\n'), "tradesim-snapshot 999");
    const auto bad = dir.path / "v999.snap";
    std::ofstream(bad, std::ios::binary) << text;
    CHECK_THROWS_AS(restore_state(bad), SnapshotError);
  }
  SUBCASE("missing file") { CHECK_THROWS(restore_state(dir.path / "nope.snap")); }
}

TEST_CASE("unwritable output directory names the path") {
  TempDir dir("blocked");
  const auto blocker = dir.path / "file";
  std::ofstream(blocker) << "x";
  RecordingOptions opts;
  opts.output_dir = blocker / "sub";
  try {
    run_simulation(config(5, 0.5, 10, 1), opts);
    FAIL("expected an IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("sub") != std::string::npos);
  }
}

TEST_CASE("cell seeds") {
  CHECK(cell_seed(7, 100, 0.5, 0) == cell_seed(7, 100, 0.5, 0));
  std::set<std::uint64_t> seeds;
  for (std::uint32_t n : {50u, 100u, 200u}) {
    for (double c : {0.3, 0.5, 0.9}) {
      for (std::uint32_t r = 0; r < 5; ++r) seeds.insert(cell_seed(7, n, c, r));
    }
  }
  CHECK(seeds.size() == 45);
  CHECK(cell_seed(7, 100, 0.5, 0) != cell_seed(8, 100, 0.5, 0));
}

TEST_CASE("1x1 sweep equals a direct run") {
  SweepGrid grid;
  grid.n_values = {20};
  grid.c_values = {0.5};
  grid.base_seed = 3;
  auto results = run_sweep(grid);
  REQUIRE(results.size() == 1);
  const auto& cell = results[0];
  CHECK(cell.seed == cell_seed(3, 20, 0.5, 0));
  CHECK(cell.steps == default_step_budget(20, 0.5));

  auto cfg = config(20, 0.5, cell.steps, cell.seed);
  RecordingOptions opts;
  opts.keep_rows = false;
  opts.keep_series = true;
  opts.snapshot_steps = default_snapshot_schedule(cfg);
  auto direct = analyze_cell(run_simulation(cfg, opts));
  CHECK(same_cell(cell, direct));
  CHECK((cell.crossover.has_value() || !cell.crossover_error.empty()));
}

TEST_CASE("sweep results do not depend on the worker count") {
  SweepGrid grid;
  grid.n_values = {10, 20};
  grid.c_values = {0.5, 0.9};
  grid.replicas = 2;
  grid.base_seed = 11;
  auto one = run_sweep(grid, SweepOptions{1, std::nullopt});
  auto four = run_sweep(grid, SweepOptions{4, std::nullopt});
  REQUIRE(one.size() == 8);
  REQUIRE(four.size() == 8);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(same_cell(one[i], four[i]));
  // replicas of a cell get different seeds and different histories
  CHECK(one[0].replica == 0);
  CHECK(one[1].replica == 1);
  CHECK(one[0].seed != one[1].seed);
}
