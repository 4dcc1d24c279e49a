#include "tradesim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace tradesim {

namespace {

void require_positive(double value, const char* key) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw ConfigError(key, "must be a positive finite number");
  }
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void SimConfig::validate() const {
  if (n_agents < 2) throw ConfigError("n_agents", "need at least 2 agents");
  if (!(invest_fraction > 0.0 && invest_fraction < 1.0)) {
    throw ConfigError("invest_fraction", "must lie in (0, 1)");
  }
  require_positive(init_stock, "init_stock");
  require_positive(init_money, "init_money");
  require_positive(init_price, "init_price");
  if (!(std::isfinite(ratio_cap) && ratio_cap > 1.0)) {
    throw ConfigError("ratio_cap", "must be greater than 1");
  }
  if (!(std::isfinite(interest_rate) && interest_rate >= 0.0)) {
    throw ConfigError("interest_rate", "must be nonnegative");
  }
}

std::string_view to_string(PriceRuleKind kind) {
  return kind == PriceRuleKind::Bounded ? "bounded" : "ratio";
}

std::string_view to_string(ClearingMode mode) {
  return mode == ClearingMode::AcceptanceRationing ? "acceptance" : "proportional";
}

PriceRuleKind parse_price_rule(std::string_view text) {
  if (text == "bounded") return PriceRuleKind::Bounded;
  if (text == "ratio") return PriceRuleKind::Ratio;
  throw ConfigError("price_rule", "expected bounded|ratio, got '" + std::string(text) + "'");
}

ClearingMode parse_clearing_mode(std::string_view text) {
  if (text == "acceptance") return ClearingMode::AcceptanceRationing;
  if (text == "proportional") return ClearingMode::ProportionalOnly;
  throw ConfigError("clearing_mode",
                    "expected acceptance|proportional, got '" + std::string(text) + "'");
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

KeyValues to_key_values(const SimConfig& config) {
  return {
      {"n_agents", std::to_string(config.n_agents)},
      {"invest_fraction", format_double(config.invest_fraction)},
      {"init_stock", format_double(config.init_stock)},
      {"init_money", format_double(config.init_money)},
      {"init_price", format_double(config.init_price)},
      {"n_steps", std::to_string(config.n_steps)},
      {"seed", std::to_string(config.seed)},
      {"price_rule", std::string(to_string(config.price_rule))},
      {"ratio_cap", format_double(config.ratio_cap)},
      {"clearing_mode", std::string(to_string(config.clearing_mode))},
      {"interest_rate", format_double(config.interest_rate)},
  };
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value) {
  if (key == "n_agents") {
    config.n_agents = parse_number<std::uint32_t>(key, value);
  } else if (key == "invest_fraction") {
    config.invest_fraction = parse_number<double>(key, value);
  } else if (key == "init_stock") {
    config.init_stock = parse_number<double>(key, value);
  } else if (key == "init_money") {
    config.init_money = parse_number<double>(key, value);
  } else if (key == "init_price") {
    config.init_price = parse_number<double>(key, value);
  } else if (key == "n_steps") {
    config.n_steps = parse_number<std::uint64_t>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "price_rule") {
    config.price_rule = parse_price_rule(value);
  } else if (key == "ratio_cap") {
    config.ratio_cap = parse_number<double>(key, value);
  } else if (key == "clearing_mode") {
    config.clearing_mode = parse_clearing_mode(value);
  } else if (key == "interest_rate") {
    config.interest_rate = parse_number<double>(key, value);
  } else {
    throw ConfigError(std::string(key), "unknown key");
  }
}

}  // namespace tradesim
