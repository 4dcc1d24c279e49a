#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tradesim/model.hpp"

namespace tradesim {

// Conditioning state of the one-agent, one-step transition law: holdings
// (stock, money) at a fixed price, with an injected acceptance
// probability q rather than the aggregate one.
struct KernelSpec {
  double stock = 0.0;
  double money = 0.0;
  double price = 1.0;
  double q = 1.0;
  double invest_fraction = 0.5;
};

// P(next stock <= a): mass 1 - q stays at A, q/2 buys uniformly onto
// [A, A + cG/p), q/2 sells uniformly onto (A(1 - c), A].
double kernel_cdf(const KernelSpec& spec, double a);

// Mass of the atom at A (non-execution plus any degenerate branch).
double kernel_atom_mass(const KernelSpec& spec);

struct AnalyticCdf {
  std::function<double(double)> cdf;
  double atom_location = 0.0;
  double atom_mass = 0.0;
};

AnalyticCdf kernel_analytic(const KernelSpec& spec);

struct EmpiricalCdf {
  std::vector<double> sorted;  // ascending samples
  double operator()(double a) const;
};

// Samples the next-step stock by running the model's single-agent fill
// arithmetic at fixed price. Requires n_samples >= 1000.
EmpiricalCdf kernel_empirical(const KernelSpec& spec, std::size_t n_samples, std::uint64_t seed);

struct KsResult {
  double statistic = 0.0;  // KS distance of the continuous part
  double critical = 0.0;   // 1% critical value 1.63 / sqrt(n_continuous)
  double atom_observed = 0.0;
  double atom_expected = 0.0;
  bool pass = false;
};

// The atom is split out and checked against a binomial 3-sigma band; the
// remainder is compared with the analytic continuous part at the 1% level.
KsResult ks_test(const EmpiricalCdf& empirical, const AnalyticCdf& analytic);

struct OracleRow {
  std::size_t index = 0;
  KernelSpec spec;
  KsResult result;
};

struct OracleReport {
  std::vector<OracleRow> rows;
  std::size_t failures = 0;
  std::size_t allowed_failures = 3;
  bool pass() const { return failures <= allowed_failures; }
};

// Randomized grid of kernel specs, each sampled and tested. `q_bias` is a
// fault-injection hook: the analytic side uses q + q_bias (clamped).
OracleReport run_oracle_grid(std::size_t n_specs, std::size_t n_samples, std::uint64_t seed,
                             double q_bias = 0.0);

}  // namespace tradesim
