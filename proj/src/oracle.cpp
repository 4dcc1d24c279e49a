#include "tradesim/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tradesim/analysis.hpp"
#include "tradesim/rng.hpp"

namespace tradesim {

namespace {

// CDF of a branch that is uniform on [lo, hi), or an atom at lo if the
// interval is empty.
double uniform_branch_cdf(double lo, double hi, double a) {
  if (a < lo) return 0.0;
  if (!(hi > lo) || a >= hi) return 1.0;
  return (a - lo) / (hi - lo);
}

}  // namespace

double kernel_cdf(const KernelSpec& spec, double a) {
  const double A = spec.stock;
  const double stay = a >= A ? 1.0 : 0.0;
  const double buy = uniform_branch_cdf(A, A + spec.invest_fraction * spec.money / spec.price, a);
  // Sell branch lives on (A(1 - c), A]: open below, closed at A.
  const double sell_lo = A * (1.0 - spec.invest_fraction);
  double sell;
  if (!(A > sell_lo)) {
    sell = stay;
  } else if (a <= sell_lo) {
    sell = 0.0;
  } else if (a >= A) {
    sell = 1.0;
  } else {
    sell = (a - sell_lo) / (A - sell_lo);
  }
  return (1.0 - spec.q) * stay + 0.5 * spec.q * (buy + sell);
}

double kernel_atom_mass(const KernelSpec& spec) {
  double mass = 1.0 - spec.q;
  if (!(spec.invest_fraction * spec.money / spec.price > 0.0)) mass += 0.5 * spec.q;
  if (!(spec.stock * spec.invest_fraction > 0.0)) mass += 0.5 * spec.q;
  return mass;
}

AnalyticCdf kernel_analytic(const KernelSpec& spec) {
  return {[spec](double a) { return kernel_cdf(spec, a); }, spec.stock, kernel_atom_mass(spec)};
}

double EmpiricalCdf::operator()(double a) const {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), a);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

EmpiricalCdf kernel_empirical(const KernelSpec& spec, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) {
    throw InsufficientDataError("kernel_empirical: need at least 1000 samples");
  }
  const CounterRng rng(seed);
  EmpiricalCdf out;
  out.sorted.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Side side = rng.coin(i, 0) ? Side::Buy : Side::Sell;
    const double fraction = spec.invest_fraction * rng.uniform(i, 1);
    const bool accepted = fraction > 0.0 && rng.uniform(i, 2) < spec.q;
    AgentState agent{spec.stock, spec.money};
    if (accepted) fill_order(agent, side, fraction, 1.0, spec.price);
    out.sorted.push_back(agent.stock);
  }
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

KsResult ks_test(const EmpiricalCdf& empirical, const AnalyticCdf& analytic) {
  const auto& xs = empirical.sorted;
  if (xs.size() < 1000) throw InsufficientDataError("ks_test: need at least 1000 samples");
  const double n = static_cast<double>(xs.size());
  const double m = std::clamp(analytic.atom_mass, 0.0, 1.0);
  const double at = analytic.atom_location;

  KsResult out;
  const auto [first, last] = std::equal_range(xs.begin(), xs.end(), at);
  const auto atom_count = static_cast<double>(last - first);
  out.atom_observed = atom_count / n;
  out.atom_expected = m;

  bool atom_ok;
  if (m <= 0.0) {
    atom_ok = atom_count == 0.0;
  } else if (m >= 1.0) {
    atom_ok = atom_count == n;
  } else {
    atom_ok = std::abs(atom_count - n * m) <= 3.0 * std::sqrt(n * m * (1.0 - m));
  }

  // Continuous remainder: empirical samples off the atom against
  // (F(a) - m 1[a >= at]) / (1 - m).
  const double n_cont = n - atom_count;
  bool ks_ok = true;
  if (n_cont > 0.0 && m < 1.0) {
    auto continuous = [&](double a) {
      const double value = analytic.cdf(a) - (a >= at ? m : 0.0);
      return std::clamp(value / (1.0 - m), 0.0, 1.0);
    };
    double d = 0.0;
    double seen = 0.0;
    for (auto it = xs.begin(); it != xs.end(); ++it) {
      if (it == first) {
        it = last;
        if (it == xs.end()) break;
      }
      const double model = continuous(*it);
      d = std::max(d, std::abs(model - seen / n_cont));
      seen += 1.0;
      d = std::max(d, std::abs(seen / n_cont - model));
    }
    out.statistic = d;
    out.critical = 1.63 / std::sqrt(n_cont);
    ks_ok = d < out.critical;
  } else if (n_cont > 0.0) {
    ks_ok = false;  // mass found off an atom that should hold everything
  }
  out.pass = atom_ok && ks_ok;
  return out;
}

OracleReport run_oracle_grid(std::size_t n_specs, std::size_t n_samples, std::uint64_t seed,
                             double q_bias) {
  if (n_samples < 1000) {
    throw InsufficientDataError("run_oracle_grid: need at least 1000 samples per spec");
  }
  RngStream draw(seed, 0xfeedULL);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, draw.uniform());
  };

  OracleReport report;
  for (std::size_t i = 0; i < n_specs; ++i) {
    KernelSpec spec;
    spec.stock = (i % 11 == 3) ? 0.0 : log_uniform(1e-2, 1e4);
    spec.money = (i % 13 == 5) ? 0.0 : log_uniform(1e-1, 1e7);
    spec.price = log_uniform(1e-1, 1e4);
    spec.invest_fraction = 0.05 + 0.9 * draw.uniform();
    switch (i % 10) {
      case 0: spec.q = 0.0; break;
      case 1: spec.q = 1.0; break;
      default: spec.q = draw.uniform(); break;
    }
    KernelSpec analytic_spec = spec;
    analytic_spec.q = std::clamp(spec.q + q_bias, 0.0, 1.0);

    const auto empirical = kernel_empirical(spec, n_samples, CounterRng::mix(seed + i));
    OracleRow row{i, spec, ks_test(empirical, kernel_analytic(analytic_spec))};
    if (!row.result.pass) ++report.failures;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace tradesim
