#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tradesim {

enum class PriceRuleKind { Bounded, Ratio };
enum class ClearingMode { AcceptanceRationing, ProportionalOnly };

// Raised for any invalid configuration. `key()` names the offending
// setting so front ends can point at it.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

struct SimConfig {
  std::uint32_t n_agents = 200;
  double invest_fraction = 0.5;
  double init_stock = 1000.0;
  double init_money = 1.0e6;
  double init_price = 1000.0;
  std::uint64_t n_steps = 100000;
  std::uint64_t seed = 0;
  PriceRuleKind price_rule = PriceRuleKind::Bounded;
  double ratio_cap = 2.0;
  ClearingMode clearing_mode = ClearingMode::AcceptanceRationing;
  double interest_rate = 0.0;

  // Throws ConfigError on the first invalid field.
  void validate() const;

  // (N/c)^2, the natural time unit of the crossover.
  double crossover_scale() const {
    const double r = static_cast<double>(n_agents) / invest_fraction;
    return r * r;
  }

  bool operator==(const SimConfig&) const = default;
};

std::string_view to_string(PriceRuleKind kind);
std::string_view to_string(ClearingMode mode);
PriceRuleKind parse_price_rule(std::string_view text);
ClearingMode parse_clearing_mode(std::string_view text);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// `key = value` form of every field, doubles printed with 17 significant
// digits so the text round-trips exactly.
KeyValues to_key_values(const SimConfig& config);

// Sets one field from its text form. Throws ConfigError for unknown keys
// or unparsable values; does not run validate().
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

std::string format_double(double value);

}  // namespace tradesim
