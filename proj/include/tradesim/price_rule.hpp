#pragma once

#include "tradesim/config.hpp"

namespace tradesim {

// Maps the offered supply S and demand D of one step (both in shares) to
// a multiplicative price factor.
struct PriceRule {
  PriceRuleKind variant = PriceRuleKind::Bounded;
  double ratio_cap = 2.0;

  static PriceRule from_config(const SimConfig& config) {
    return {config.price_rule, config.ratio_cap};
  }

  // Multiplicative factor p(n+1)/p(n). Requires S + D > 0.
  double factor(double supply, double demand) const;
};

// f = (D - S) / (D + 2S), so the price factor 1 + f lies in [1/2, 2].
// Throws std::domain_error when S = D = 0.
double factor_bounded(double supply, double demand);

// clamp(D / S, 1/cap, cap); S = 0 clamps to cap.
// Throws std::domain_error when S = D = 0 or cap <= 1.
double factor_ratio(double supply, double demand, double cap);

// New price after one step. An empty book (S + D = 0) leaves it unchanged.
double apply_rule(double price, const PriceRule& rule, double supply, double demand);

}  // namespace tradesim
