#include "tradesim/price_rule.hpp"

#include <algorithm>
#include <stdexcept>

namespace tradesim {

double factor_bounded(double supply, double demand) {
  if (!(supply + demand > 0.0)) {
    throw std::domain_error("factor_bounded: empty book (S + D = 0)");
  }
  return (demand - supply) / (demand + 2.0 * supply);
}

double factor_ratio(double supply, double demand, double cap) {
  if (!(cap > 1.0)) throw std::domain_error("factor_ratio: cap must exceed 1");
  if (!(supply + demand > 0.0)) {
    throw std::domain_error("factor_ratio: empty book (S + D = 0)");
  }
  if (supply == 0.0) return cap;
  return std::clamp(demand / supply, 1.0 / cap, cap);
}

double PriceRule::factor(double supply, double demand) const {
  if (variant == PriceRuleKind::Bounded) return 1.0 + factor_bounded(supply, demand);
  return factor_ratio(supply, demand, ratio_cap);
}

double apply_rule(double price, const PriceRule& rule, double supply, double demand) {
  if (!(supply + demand > 0.0)) return price;
  return price * rule.factor(supply, demand);
}

}  // namespace tradesim
