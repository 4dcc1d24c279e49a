#include "tradesim/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "tradesim/price_rule.hpp"

namespace tradesim {

double MarketState::total_stock() const {
  double total = 0.0;
  for (const auto& a : agents) total += a.stock;
  return total;
}

double MarketState::total_money() const {
  double total = 0.0;
  for (const auto& a : agents) total += a.money;
  return total;
}

MarketState init_state(const SimConfig& config) {
  config.validate();
  MarketState state;
  state.agents.assign(config.n_agents, AgentState{config.init_stock, config.init_money});
  state.price = config.init_price;
  state.step = 0;
  return state;
}

void draw_intents(const MarketState& state, double invest_fraction, const CounterRng& rng,
                  std::vector<StepIntent>& out) {
  const std::size_t n = state.agents.size();
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& intent = out[i];
    intent.side = rng.coin(state.step, 3 * i) ? Side::Buy : Side::Sell;
    intent.fraction = invest_fraction * rng.uniform(state.step, 3 * i + 1);
    intent.accepted = false;
  }
}

std::vector<StepIntent> draw_intents(const MarketState& state, double invest_fraction,
                                     const CounterRng& rng) {
  std::vector<StepIntent> out;
  draw_intents(state, invest_fraction, rng, out);
  return out;
}

OrderTotals aggregate_orders(const MarketState& state, std::span<const StepIntent> intents) {
  assert(intents.size() == state.agents.size());
  double supply = 0.0;
  double offered_money = 0.0;
  for (std::size_t i = 0; i < intents.size(); ++i) {
    const auto& a = state.agents[i];
    if (intents[i].side == Side::Sell) {
      supply += intents[i].fraction * a.stock;
    } else {
      offered_money += intents[i].fraction * a.money;
    }
  }
  return {supply, offered_money / state.price};
}

double acceptance_probability(double supply_s, double demand_d) {
  const double total = supply_s + demand_d;
  if (!(total > 0.0)) return 0.0;
  return 1.0 - std::abs(supply_s - demand_d) / total;
}

std::pair<double, double> fill_order(AgentState& agent, Side side, double fraction, double scale,
                                     double price) {
  if (side == Side::Sell) {
    const double shares = fraction * agent.stock * scale;
    const double currency = shares * price;
    agent.stock -= shares;
    agent.money += currency;
    return {shares, currency};
  }
  const double currency = fraction * agent.money * scale;
  const double shares = currency / price;
  agent.money -= currency;
  agent.stock += shares;
  return {shares, currency};
}

double clear_trades(MarketState& state, std::span<StepIntent> intents, double q, ClearingMode mode,
                    const CounterRng& rng, std::vector<TradeRecord>* trades) {
  assert(intents.size() == state.agents.size());
  const double price = state.price;

  double accepted_supply = 0.0;
  double accepted_money = 0.0;
  for (std::size_t i = 0; i < intents.size(); ++i) {
    auto& intent = intents[i];
    if (intent.fraction <= 0.0) {
      intent.accepted = false;
      continue;
    }
    intent.accepted = mode == ClearingMode::ProportionalOnly ||
                      rng.uniform(state.step, 3 * i + 2) < q;
    if (!intent.accepted) continue;
    const auto& a = state.agents[i];
    if (intent.side == Side::Sell) {
      accepted_supply += intent.fraction * a.stock;
    } else {
      accepted_money += intent.fraction * a.money;
    }
  }
  const double accepted_demand = accepted_money / price;
  const double executed = std::min(accepted_supply, accepted_demand);
  if (!(executed > 0.0)) return 0.0;

  // The heavier side is rationed, the lighter side fills completely.
  const double sell_scale = accepted_supply > accepted_demand ? executed / accepted_supply : 1.0;
  const double buy_scale = accepted_demand > accepted_supply ? executed / accepted_demand : 1.0;

  for (std::size_t i = 0; i < intents.size(); ++i) {
    const auto& intent = intents[i];
    if (!intent.accepted) continue;
    const double scale = intent.side == Side::Sell ? sell_scale : buy_scale;
    auto [shares, currency] = fill_order(state.agents[i], intent.side, intent.fraction, scale, price);
    if (trades != nullptr && shares > 0.0) {
      trades->push_back({state.step, static_cast<std::uint32_t>(i), intent.side, shares, currency});
    }
  }
  return executed;
}

StepOutcome execute_step(MarketState& state, const SimConfig& config, const CounterRng& rng,
                         std::span<StepIntent> intents, bool record_trades) {
  StepOutcome out;
  out.price_before = state.price;

  const auto totals = aggregate_orders(state, intents);
  out.supply_s = totals.supply_s;
  out.demand_d = totals.demand_d;
  out.q = acceptance_probability(totals.supply_s, totals.demand_d);
  out.imbalance = totals.supply_s - totals.demand_d;
  out.volume_offered = std::min(totals.supply_s, totals.demand_d);

  out.volume_executed = clear_trades(state, intents, out.q, config.clearing_mode, rng,
                                     record_trades ? &out.per_trade_volumes : nullptr);

  state.price = apply_rule(state.price, PriceRule::from_config(config), totals.supply_s,
                           totals.demand_d);
  if (config.interest_rate > 0.0) {
    const double growth = 1.0 + config.interest_rate;
    for (auto& a : state.agents) a.money *= growth;
  }
  ++state.step;

  out.step = state.step;
  out.price_after = state.price;
  assert(state.price > 0.0 && std::isfinite(state.price));
  return out;
}

StepOutcome market_step(MarketState& state, const SimConfig& config, const CounterRng& rng,
                        StepWorkspace& workspace) {
  draw_intents(state, config.invest_fraction, rng, workspace.intents);
  return execute_step(state, config, rng, workspace.intents, workspace.record_trades);
}

StepOutcome market_step(MarketState& state, const SimConfig& config, const CounterRng& rng) {
  StepWorkspace workspace;
  workspace.record_trades = true;
  return market_step(state, config, rng, workspace);
}

double wealth(const AgentState& agent, double price, WealthUnit unit) {
  if (unit == WealthUnit::Money) return agent.money + agent.stock * price;
  return agent.stock + agent.money / price;
}

double wealth_after_trade(const AgentState& before, Side side, double phi, double f, double price) {
  const double w = wealth(before, price, WealthUnit::Money);
  const double stock_value = before.stock * price;
  if (side == Side::Sell) return w + f * (1.0 - phi) * stock_value;
  return w + f * (stock_value + phi * before.money);
}

bool wealth_update_identity_check(const AgentState& before, const AgentState& after, Side side,
                                  double phi, double f, double price) {
  const double simulated = wealth(after, price * (1.0 + f), WealthUnit::Money);
  const double closed = wealth_after_trade(before, side, phi, f, price);
  const double scale = std::max({std::abs(simulated), std::abs(closed),
                                 wealth(before, price, WealthUnit::Money)});
  if (scale == 0.0) return true;
  return std::abs(simulated - closed) <= 1e-9 * scale;
}

}  // namespace tradesim
