#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tradesim/config.hpp"
#include "tradesim/rng.hpp"

namespace tradesim {

enum class Side : std::uint8_t { Buy, Sell };
enum class WealthUnit { Money, Stock };

struct AgentState {
  double stock = 0.0;
  double money = 0.0;
  bool operator==(const AgentState&) const = default;
};

struct MarketState {
  std::vector<AgentState> agents;
  double price = 1.0;
  std::uint64_t step = 0;
  bool operator==(const MarketState&) const = default;

  double total_stock() const;
  double total_money() const;
};

struct StepIntent {
  Side side = Side::Buy;
  double fraction = 0.0;  // in [0, c)
  bool accepted = false;
};

// One executed fill of one agent.
struct TradeRecord {
  std::uint64_t step = 0;
  std::uint32_t agent = 0;
  Side side = Side::Buy;
  double shares = 0.0;
  double currency = 0.0;
};

struct StepOutcome {
  std::uint64_t step = 0;  // step index after the update
  double supply_s = 0.0;
  double demand_d = 0.0;
  double q = 0.0;
  double imbalance = 0.0;       // S - D
  double volume_offered = 0.0;  // min(S, D)
  double volume_executed = 0.0;
  double price_before = 0.0;
  double price_after = 0.0;
  std::vector<TradeRecord> per_trade_volumes;
};

MarketState init_state(const SimConfig& config);

// Intents for state.step. Stream layout per agent i: index 3i is the side
// coin, 3i+1 the fraction, 3i+2 the acceptance draw used by clear_trades.
void draw_intents(const MarketState& state, double invest_fraction, const CounterRng& rng,
                  std::vector<StepIntent>& out);
std::vector<StepIntent> draw_intents(const MarketState& state, double invest_fraction,
                                     const CounterRng& rng);

struct OrderTotals {
  double supply_s = 0.0;
  double demand_d = 0.0;
};

// S = sum over sellers of x*A, D = sum over buyers of x*G/p.
OrderTotals aggregate_orders(const MarketState& state, std::span<const StepIntent> intents);

// q = 1 - |S - D| / (S + D), or 0 for an empty book.
double acceptance_probability(double supply_s, double demand_d);

// Moves one agent's holdings for a fill of `fraction * scale` of its
// current stock (seller) or money (buyer) at `price`. Returns the
// (shares, currency) exchanged.
std::pair<double, double> fill_order(AgentState& agent, Side side, double fraction, double scale,
                                     double price);

// Executes the accepted book at state.price. Sets intents[i].accepted,
// mutates holdings and, when `trades` is non-null, appends one record per
// executing agent. Returns the executed share volume.
double clear_trades(MarketState& state, std::span<StepIntent> intents, double q, ClearingMode mode,
                    const CounterRng& rng, std::vector<TradeRecord>* trades = nullptr);

// Reusable buffers for market_step so the hot loop does not allocate.
struct StepWorkspace {
  std::vector<StepIntent> intents;
  bool record_trades = false;
};

// Everything after the intent draw: aggregate, accept, clear, update the
// price, apply interest, advance the step counter.
StepOutcome execute_step(MarketState& state, const SimConfig& config, const CounterRng& rng,
                         std::span<StepIntent> intents, bool record_trades);

StepOutcome market_step(MarketState& state, const SimConfig& config, const CounterRng& rng,
                        StepWorkspace& workspace);
StepOutcome market_step(MarketState& state, const SimConfig& config, const CounterRng& rng);

double wealth(const AgentState& agent, double price, WealthUnit unit);

// Closed-form money-valued wealth after one trade at `price` followed by
// the price factor (1 + f). phi is the executed fraction of the agent's
// stock (seller) or money (buyer):
//   seller: W' = W + f (1 - phi) A p
//   buyer:  W' = W + f (A p + phi G)
double wealth_after_trade(const AgentState& before, Side side, double phi, double f, double price);

// True iff `after` (post-trade holdings, valued at p (1 + f)) matches the
// closed form to 1e-9 relative.
bool wealth_update_identity_check(const AgentState& before, const AgentState& after, Side side,
                                  double phi, double f, double price);

}  // namespace tradesim
