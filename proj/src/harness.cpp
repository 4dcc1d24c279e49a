#include "tradesim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "tradesim/rng.hpp"

namespace tradesim {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  return out;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return in;
}

void append_double(std::string& line, double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  line.append(buf, static_cast<std::size_t>(len));
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view text, const fs::path& path, std::size_t line_no) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw IoError(path, "line " + std::to_string(line_no) + ": bad field '" + std::string(text) + "'");
  }
  return value;
}

// Calls `fn(fields, line_no)` for each data row after checking the header.
template <typename Fn>
void read_csv(const fs::path& path, std::string_view header, std::size_t columns, Fn fn) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || std::string_view(line) != header) {
    throw IoError(path, "unexpected header, want '" + std::string(header) + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != columns) {
      throw IoError(path, "line " + std::to_string(line_no) + ": expected " +
                              std::to_string(columns) + " fields");
    }
    fn(fields, line_no);
  }
}

constexpr std::string_view kStepsHeader =
    "step,price,supply,demand,q,imbalance,vol_offered,vol_executed,ret1";
constexpr std::string_view kWealthHeader = "step,agent,stock,money,wealth_money,wealth_stock";
constexpr std::string_view kTradesHeader = "step,agent,side,shares,currency";

constexpr std::string_view kSnapshotMagic = "tradesim-snapshot 1";

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hexfloat(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", value);
  return buf;
}

double parse_hexfloat(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw SnapshotError("corrupt snapshot: bad number '" + text + "'");
  }
  if (used != text.size()) throw SnapshotError("corrupt snapshot: bad number '" + text + "'");
  return value;
}

}  // namespace

std::uint64_t stationary_start(const SimConfig& config) {
  return static_cast<std::uint64_t>(4.0 * config.crossover_scale());
}

std::uint64_t default_step_budget(std::uint32_t n_agents, double invest_fraction) {
  const double ratio = static_cast<double>(n_agents) / invest_fraction;
  return static_cast<std::uint64_t>(8.0 * ratio * ratio);
}

std::vector<std::uint64_t> default_snapshot_schedule(const SimConfig& config) {
  std::vector<std::uint64_t> steps;
  for (std::uint64_t s = 10; s <= config.n_steps; s *= 10) steps.push_back(s);
  const std::uint64_t start = stationary_start(config);
  if (start < config.n_steps) {
    const std::uint64_t stride = std::max<std::uint64_t>(1, (config.n_steps - start) / 200);
    for (std::uint64_t s = start + stride; s <= config.n_steps; s += stride) steps.push_back(s);
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

std::vector<std::uint64_t> parse_snapshot_schedule(const std::string& text,
                                                   const SimConfig& config) {
  if (text.empty() || text == "auto") return default_snapshot_schedule(config);
  if (text == "none") return {};
  std::vector<std::uint64_t> steps;
  auto parse = [&](std::string_view field) {
    std::uint64_t v = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      throw ConfigError("snapshot_schedule", "cannot parse '" + std::string(field) + "'");
    }
    return v;
  };
  if (text.rfind("every:", 0) == 0) {
    const auto every = parse(std::string_view(text).substr(6));
    if (every == 0) throw ConfigError("snapshot_schedule", "every:<k> needs k >= 1");
    for (std::uint64_t s = every; s <= config.n_steps; s += every) steps.push_back(s);
    return steps;
  }
  for (auto field : split_csv(text)) {
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    steps.push_back(parse(field));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

void write_steps_header(std::ostream& out) { out << kStepsHeader << '\n'; }

void write_step_row(std::ostream& out, const StepRow& row) {
  std::string line = std::to_string(row.step);
  for (double v : {row.price, row.supply, row.demand, row.q, row.imbalance, row.vol_offered,
                   row.vol_executed, row.ret1}) {
    line.push_back(',');
    append_double(line, v);
  }
  line.push_back('\n');
  out << line;
}

void write_wealth_header(std::ostream& out) { out << kWealthHeader << '\n'; }

void write_wealth_rows(std::ostream& out, const WealthSnapshot& snapshot) {
  std::string line;
  for (std::size_t i = 0; i < snapshot.agents.size(); ++i) {
    const auto& a = snapshot.agents[i];
    line.clear();
    line += std::to_string(snapshot.step);
    line.push_back(',');
    line += std::to_string(i);
    for (double v : {a.stock, a.money, wealth(a, snapshot.price, WealthUnit::Money),
                     wealth(a, snapshot.price, WealthUnit::Stock)}) {
      line.push_back(',');
      append_double(line, v);
    }
    line.push_back('\n');
    out << line;
  }
}

void write_trades_header(std::ostream& out) { out << kTradesHeader << '\n'; }

void write_trade_row(std::ostream& out, const TradeRecord& trade) {
  std::string line = std::to_string(trade.step);
  line.push_back(',');
  line += std::to_string(trade.agent);
  line += trade.side == Side::Buy ? ",buy," : ",sell,";
  append_double(line, trade.shares);
  line.push_back(',');
  append_double(line, trade.currency);
  line.push_back('\n');
  out << line;
}

std::vector<StepRow> read_steps_csv(const fs::path& path) {
  std::vector<StepRow> rows;
  read_csv(path, kStepsHeader, 9, [&](const auto& f, std::size_t ln) {
    StepRow r;
    r.step = parse_field<std::uint64_t>(f[0], path, ln);
    r.price = parse_field<double>(f[1], path, ln);
    r.supply = parse_field<double>(f[2], path, ln);
    r.demand = parse_field<double>(f[3], path, ln);
    r.q = parse_field<double>(f[4], path, ln);
    r.imbalance = parse_field<double>(f[5], path, ln);
    r.vol_offered = parse_field<double>(f[6], path, ln);
    r.vol_executed = parse_field<double>(f[7], path, ln);
    r.ret1 = parse_field<double>(f[8], path, ln);
    rows.push_back(r);
  });
  return rows;
}

std::vector<WealthSnapshot> read_wealth_csv(const fs::path& path) {
  std::vector<WealthSnapshot> snapshots;
  read_csv(path, kWealthHeader, 6, [&](const auto& f, std::size_t ln) {
    const auto step = parse_field<std::uint64_t>(f[0], path, ln);
    if (snapshots.empty() || snapshots.back().step != step) {
      snapshots.push_back({step, 0.0, {}});
    }
    AgentState a{parse_field<double>(f[2], path, ln), parse_field<double>(f[3], path, ln)};
    // (G + A p) / (A + G / p) = p for any agent with nonzero wealth.
    const double w_money = parse_field<double>(f[4], path, ln);
    const double w_stock = parse_field<double>(f[5], path, ln);
    if (snapshots.back().price == 0.0 && w_stock > 0.0) {
      snapshots.back().price = w_money / w_stock;
    }
    snapshots.back().agents.push_back(a);
  });
  return snapshots;
}

std::vector<TradeRecord> read_trades_csv(const fs::path& path) {
  std::vector<TradeRecord> trades;
  read_csv(path, kTradesHeader, 5, [&](const auto& f, std::size_t ln) {
    TradeRecord t;
    t.step = parse_field<std::uint64_t>(f[0], path, ln);
    t.agent = parse_field<std::uint32_t>(f[1], path, ln);
    if (f[2] == "buy") {
      t.side = Side::Buy;
    } else if (f[2] == "sell") {
      t.side = Side::Sell;
    } else {
      throw IoError(path, "line " + std::to_string(ln) + ": bad side");
    }
    t.shares = parse_field<double>(f[3], path, ln);
    t.currency = parse_field<double>(f[4], path, ln);
    trades.push_back(t);
  });
  return trades;
}

RunRecord run_simulation(const SimConfig& config, const RecordingOptions& options) {
  return continue_simulation(config, init_state(config), options);
}

RunRecord continue_simulation(const SimConfig& config, MarketState state,
                              const RecordingOptions& options) {
  config.validate();
  if (state.agents.size() != config.n_agents) {
    throw ConfigError("n_agents", "state does not match the configuration");
  }
  const CounterRng rng(config.seed);
  RunRecord record;
  record.config = config;

  std::vector<std::uint64_t> schedule = options.snapshot_steps;
  std::sort(schedule.begin(), schedule.end());
  auto next_snapshot = std::upper_bound(schedule.begin(), schedule.end(), state.step);

  std::ofstream steps_out, wealth_out, trades_out;
  const bool write = options.output_dir.has_value();
  const bool want_trades = options.trades_from != std::numeric_limits<std::uint64_t>::max();
  if (write) {
    std::error_code ec;
    fs::create_directories(*options.output_dir, ec);
    if (ec) throw IoError(*options.output_dir, "cannot create directory: " + ec.message());
    steps_out = open_output(*options.output_dir / "steps.csv");
    wealth_out = open_output(*options.output_dir / "wealth.csv");
    write_steps_header(steps_out);
    write_wealth_header(wealth_out);
    if (want_trades) {
      trades_out = open_output(*options.output_dir / "trades.csv");
      write_trades_header(trades_out);
    }
  }

  const std::uint64_t first_step = state.step;
  const double stock0 = state.total_stock();
  const double money0 = state.total_money();
  auto capture = [&](const MarketState& s) {
    WealthSnapshot snap{s.step, s.price, s.agents};
    const double money_expected =
        money0 * std::pow(1.0 + config.interest_rate, static_cast<double>(s.step - first_step));
    record.max_stock_drift =
        std::max(record.max_stock_drift, std::abs(s.total_stock() - stock0) / stock0);
    record.max_money_drift = std::max(record.max_money_drift,
                                      std::abs(s.total_money() - money_expected) / money_expected);
    if (write) write_wealth_rows(wealth_out, snap);
    record.snapshots.push_back(std::move(snap));
  };
  capture(state);

  if (options.keep_rows && config.n_steps > state.step) {
    record.rows.reserve(config.n_steps - state.step);
  }
  if (options.keep_series && config.n_steps > state.step) {
    record.volume_series.reserve(config.n_steps - state.step);
    record.price_series.reserve(config.n_steps - state.step);
  }

  StepWorkspace workspace;
  while (state.step < config.n_steps) {
    workspace.record_trades =
        want_trades && state.step >= options.trades_from &&
        (state.step - options.trades_from) % std::max<std::uint64_t>(1, options.trade_stride) == 0;
    const StepOutcome outcome = market_step(state, config, rng, workspace);

    if (options.keep_rows || write) {
      const StepRow row{outcome.step,         outcome.price_after,
                        outcome.supply_s,     outcome.demand_d,
                        outcome.q,            outcome.imbalance,
                        outcome.volume_offered, outcome.volume_executed,
                        std::log(outcome.price_after / outcome.price_before)};
      if (write) write_step_row(steps_out, row);
      if (options.keep_rows) record.rows.push_back(row);
    }
    if (options.keep_series) {
      record.volume_series.push_back(outcome.volume_offered);
      record.price_series.push_back(outcome.price_after);
    }
    if (workspace.record_trades) {
      for (const auto& t : outcome.per_trade_volumes) {
        if (write) write_trade_row(trades_out, t);
        record.trades.push_back(t);
      }
    }
    if (next_snapshot != schedule.end() && *next_snapshot == state.step) {
      capture(state);
      ++next_snapshot;
    }
  }

  if (write) {
    for (auto* out : {&steps_out, &wealth_out, &trades_out}) {
      if (out->is_open()) {
        out->flush();
        if (!*out) throw IoError(*options.output_dir, "write failed");
      }
    }
  }
  record.final_state = std::move(state);
  return record;
}

void snapshot_state(const SimConfig& config, const MarketState& state, const fs::path& path) {
  std::string body;
  body += kSnapshotMagic;
  body += '\n';
  for (const auto& [key, value] : to_key_values(config)) body += key + " = " + value + '\n';
  body += "step = " + std::to_string(state.step) + '\n';
  body += "price = " + hexfloat(state.price) + '\n';
  body += "agents = " + std::to_string(state.agents.size()) + '\n';
  for (const auto& a : state.agents) body += hexfloat(a.stock) + ' ' + hexfloat(a.money) + '\n';

  char sum[40];
  std::snprintf(sum, sizeof sum, "checksum = %016llx\n",
                static_cast<unsigned long long>(fnv1a(body)));
  auto out = open_output(path);
  out << body << sum;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

Checkpoint restore_state(const fs::path& path) {
  auto in = open_input(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  if (text.rfind(kSnapshotMagic, 0) != 0) {
    throw SnapshotError("snapshot version mismatch or not a snapshot file: " + path.string());
  }
  const auto marker = text.rfind("checksum = ");
  if (marker == std::string::npos || (marker > 0 && text[marker - 1] != '\n')) {
    throw SnapshotError("corrupt snapshot (no checksum): " + path.string());
  }
  const std::string body = text.substr(0, marker);
  std::string stored = text.substr(marker + 11);
  while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.pop_back();
  char expected[20];
  std::snprintf(expected, sizeof expected, "%016llx",
                static_cast<unsigned long long>(fnv1a(body)));
  if (stored != expected) throw SnapshotError("corrupt snapshot (checksum): " + path.string());

  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);  // magic
  Checkpoint cp;
  std::size_t n_agents = 0;
  bool have_step = false, have_price = false, have_agents = false;
  while (!have_agents && std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw SnapshotError("corrupt snapshot line: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 3);
    try {
      if (key == "step") {
        cp.state.step = std::stoull(value);
        have_step = true;
      } else if (key == "price") {
        cp.state.price = parse_hexfloat(value);
        have_price = true;
      } else if (key == "agents") {
        n_agents = std::stoull(value);
        have_agents = true;
      } else {
        set_config_value(cp.config, key, value);
      }
    } catch (const SnapshotError&) {
      throw;
    } catch (const std::exception& e) {
      throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
    }
  }
  if (!(have_step && have_price && have_agents)) throw SnapshotError("corrupt snapshot: missing header");
  cp.state.agents.reserve(n_agents);
  for (std::size_t i = 0; i < n_agents; ++i) {
    std::string stock, money;
    if (!(lines >> stock >> money)) throw SnapshotError("corrupt snapshot: truncated agent table");
    cp.state.agents.push_back({parse_hexfloat(stock), parse_hexfloat(money)});
  }
  try {
    cp.config.validate();
  } catch (const ConfigError& e) {
    throw SnapshotError(std::string("corrupt snapshot config: ") + e.what());
  }
  if (cp.state.agents.size() != cp.config.n_agents) {
    throw SnapshotError("corrupt snapshot: agent count does not match config");
  }
  return cp;
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::uint32_t n_agents, double invest_fraction,
                        std::uint32_t replica) {
  std::uint64_t h = CounterRng::mix(base_seed ^ 0x5eed5eed5eed5eedULL);
  h = CounterRng::mix(h ^ n_agents);
  h = CounterRng::mix(h ^ std::bit_cast<std::uint64_t>(invest_fraction));
  return CounterRng::mix(h ^ replica);
}

std::size_t crossover_window(std::uint64_t steps) {
  return static_cast<std::size_t>(std::max<std::uint64_t>(1, steps / 2000));
}

SweepCellResult analyze_cell(const RunRecord& record) {
  const SimConfig& config = record.config;
  SweepCellResult out;
  out.n_agents = config.n_agents;
  out.invest_fraction = config.invest_fraction;
  out.seed = config.seed;
  out.steps = config.n_steps;

  try {
    out.crossover = detect_crossover(record.volume_series, crossover_window(config.n_steps));
  } catch (const std::exception& e) {
    out.crossover_error = e.what();
  }

  const std::uint64_t start = stationary_start(config);
  std::vector<double> stock;
  for (const auto& snap : record.snapshots) {
    if (snap.step < start) continue;
    for (const auto& a : snap.agents) stock.push_back(a.stock);
  }
  try {
    out.stock_tail = fit_power_law_tail(stock);
  } catch (const std::exception& e) {
    out.stock_tail_error = e.what();
  }

  try {
    if (record.price_series.size() <= start + 1) {
      throw InsufficientDataError("no stationary price series");
    }
    const std::span<const double> prices(record.price_series.begin() + static_cast<long>(start),
                                         record.price_series.end());
    out.return_tail = return_tail_analysis(returns(prices, 1));
  } catch (const std::exception& e) {
    out.return_tail_error = e.what();
  }
  return out;
}

std::vector<SweepCellResult> run_sweep(const SweepGrid& grid, const SweepOptions& options) {
  struct Cell {
    std::uint32_t n_agents;
    double invest_fraction;
    std::uint32_t replica;
    std::uint64_t seed;
  };
  if (grid.n_values.empty()) throw ConfigError("n_values", "sweep grid needs at least one N");
  if (grid.c_values.empty()) throw ConfigError("c_values", "sweep grid needs at least one c");
  if (grid.replicas == 0) throw ConfigError("replicas", "need at least one replica");

  std::vector<Cell> cells;
  for (auto n : grid.n_values) {
    for (double c : grid.c_values) {
      for (std::uint32_t r = 0; r < grid.replicas; ++r) {
        cells.push_back({n, c, r, cell_seed(grid.base_seed, n, c, r)});
      }
    }
  }
  {
    std::vector<std::uint64_t> seeds;
    for (const auto& cell : cells) seeds.push_back(cell.seed);
    std::sort(seeds.begin(), seeds.end());
    if (std::adjacent_find(seeds.begin(), seeds.end()) != seeds.end()) {
      throw ConfigError("base_seed", "derived cell seeds collide; duplicate grid entries?");
    }
  }

  std::vector<SweepCellResult> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto& cell = cells[i];
        SimConfig config = grid.base;
        config.n_agents = cell.n_agents;
        config.invest_fraction = cell.invest_fraction;
        config.seed = cell.seed;
        config.n_steps = grid.steps_rule(cell.n_agents, cell.invest_fraction);

        RecordingOptions rec;
        rec.keep_rows = false;
        rec.keep_series = true;
        rec.snapshot_steps = default_snapshot_schedule(config);
        if (options.cell_output_root) {
          char name[96];
          std::snprintf(name, sizeof name, "N%u_c%g_r%u", cell.n_agents, cell.invest_fraction,
                        cell.replica);
          rec.output_dir = *options.cell_output_root / name;
        }
        const RunRecord record = run_simulation(config, rec);
        results[i] = analyze_cell(record);
        results[i].replica = cell.replica;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace tradesim
