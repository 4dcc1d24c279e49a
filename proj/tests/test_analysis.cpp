#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "synthetic.hpp"
#include "tradesim/analysis.hpp"

using namespace tradesim;
namespace syn = tradesim::testing;

TEST_CASE("log_binned_histogram") {
  std::vector<double> three = {1.0, 10.0, 100.0};
  auto bins = log_binned_histogram(three, 1);
  REQUIRE(bins.size() == 3);
  for (const auto& b : bins) CHECK(b.count == 1);

  auto samples = syn::pareto_samples(5000, -1.7, 0.3, 2);
  for (int per_decade : {1, 3, 10}) {
    double mass = 0.0;
    for (const auto& b : log_binned_histogram(samples, per_decade)) mass += b.density * (b.hi - b.lo);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }

  std::vector<double> mixed = {-1.0, 0.0, 2.0, 3.0};
  double mass = 0.0;
  for (const auto& b : log_binned_histogram(mixed, 2)) mass += b.density * (b.hi - b.lo);
  CHECK(mass == doctest::Approx(0.5));

  CHECK_THROWS_AS(log_binned_histogram(std::vector<double>{}, 5), EmptyInputError);
  CHECK_THROWS_AS(log_binned_histogram(std::vector<double>{0.0, -2.0}, 5), EmptyInputError);
}

TEST_CASE("fit_power_law_tail errors and conventions") {
  std::vector<double> five = {1, 2, 3, 4, 5};
  CHECK_THROWS_AS(fit_power_law_tail(five), InsufficientDataError);
  CHECK_THROWS_AS(fit_power_law_tail(five, 1.0), InsufficientDataError);
  std::vector<double> same(100, 4.0);
  CHECK_THROWS_AS(fit_power_law_tail(same), DegenerateFitError);
  CHECK_THROWS_AS(fit_power_law_tail(same, 4.0), DegenerateFitError);

  auto samples = syn::pareto_samples(20000, -2.0, 1.0, 3);
  const auto fit = fit_power_law_tail(samples);
  CHECK(fit.n_tail >= 10);
  CHECK(fit.exponent < -1.0);
  CHECK(fit.std_error == doctest::Approx(std::abs(fit.exponent + 1.0) / std::sqrt(fit.n_tail)));
  CHECK(fit.ks_statistic >= 0.0);
  CHECK(fit.ks_statistic <= 1.0);
}

TEST_CASE("MLE scale equivariance") {
  auto samples = syn::pareto_samples(20000, -1.6, 2.0, 4);
  const auto base = fit_power_law_tail(samples);
  for (double k : {1e-3, 7.0, 1e5}) {
    std::vector<double> scaled(samples);
    for (auto& x : scaled) x *= k;
    const auto fit = fit_power_law_tail(scaled);
    CHECK(fit.xmin == doctest::Approx(base.xmin * k).epsilon(1e-9));
    CHECK(std::abs(fit.exponent - base.exponent) < 1e-6);
  }
}

TEST_CASE("detect_crossover") {
  std::vector<double> flat(10000, 3.0);
  CHECK_THROWS_AS(detect_crossover(flat, 20), NoCrossoverError);

  std::vector<double> step(20000);
  for (std::size_t i = 0; i < step.size(); ++i) step[i] = i + 1 < 7000 ? 100.0 : 10.0;
  const auto res = detect_crossover(step, 50);
  CHECK(std::abs(res.tau - 7000.0) <= 50.0);
  CHECK(res.early_level == doctest::Approx(100.0).epsilon(0.05));
  CHECK(res.late_level == doctest::Approx(10.0).epsilon(0.05));

  std::vector<double> short_series(99, 1.0);
  CHECK_THROWS_AS(detect_crossover(short_series, 10), InsufficientDataError);
}

TEST_CASE("tau_scaling") {
  std::vector<TauPoint> exact;
  for (double n : {50.0, 100.0, 200.0}) {
    for (double c : {0.3, 0.5, 0.9}) exact.push_back({n, c, 0.04 * (n / c) * (n / c)});
  }
  const auto fit = tau_scaling(exact);
  CHECK(std::abs(fit.slope - 2.0) < 1e-9);
  CHECK(std::abs(fit.intercept - std::log(0.04)) < 1e-9);

  std::vector<TauPoint> two = {{50, 0.5, 10.0}, {100, 0.5, 40.0}};
  CHECK_THROWS_AS(tau_scaling(two), InsufficientDataError);
}

TEST_CASE("returns") {
  std::vector<double> p = {100.0, 110.0};
  auto r = returns(p, 1);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0] == std::log(1.1));
  CHECK_THROWS_AS(returns(p, 2), std::out_of_range);
  CHECK_THROWS_AS(returns(p, 0), std::out_of_range);

  std::vector<double> flat(50, 7.0);
  for (double v : returns(flat, 3).values) CHECK(v == 0.0);

  // Additivity: the horizon-2t return is the sum of two horizon-t returns,
  // up to the rounding of the logarithms.
  std::vector<double> walk = {1.0, 2.0, 4.0, 2.0, 1.0, 8.0, 16.0, 0.5, 0.25};
  for (std::size_t t : {1u, 2u}) {
    auto r1 = returns(walk, t);
    auto r2 = returns(walk, 2 * t);
    CHECK(r2.values.size() == walk.size() - 2 * t);
    for (std::size_t i = 0; i < r2.values.size(); ++i) {
      CHECK(std::abs(r2.values[i] - (r1.values[i] + r1.values[i + t])) <= 4e-16 * (1.0 + std::abs(r2.values[i])));
    }
  }
}

TEST_CASE("return_tail_analysis errors") {
  CHECK_THROWS_AS(return_tail_analysis(ReturnSeries{1, std::vector<double>(500, 0.1)}),
                  InsufficientDataError);
  CHECK_THROWS_AS(return_tail_analysis(ReturnSeries{1, std::vector<double>(5000, 0.1)}),
                  DegenerateFitError);
}

TEST_CASE("price_impact_fit") {
  std::vector<ImpactSample> sqrt_law;
  std::vector<ImpactSample> linear;
  for (int i = 1; i <= 2000; ++i) {
    const double v = 0.5 * i;
    sqrt_law.push_back({v, std::sqrt(v)});
    linear.push_back({v, -3.0 * v});
  }
  CHECK(std::abs(price_impact_fit(sqrt_law).alpha - 0.5) < 1e-9);
  CHECK(std::abs(price_impact_fit(linear).alpha - 1.0) < 1e-9);
  std::vector<ImpactSample> still(2000, ImpactSample{5.0, 0.0});
  CHECK_THROWS_AS(price_impact_fit(still), InsufficientDataError);

  std::vector<StepOutcome> outcomes(1500);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    outcomes[i].volume_offered = 1.0 + i;
    outcomes[i].price_before = 100.0;
    outcomes[i].price_after = 100.0 + 2.0 * std::pow(1.0 + i, 0.75);
  }
  CHECK(std::abs(price_impact_fit(outcomes).alpha - 0.75) < 1e-9);
}

TEST_CASE("per_trade_volume_distribution errors") {
  CHECK_THROWS_AS(per_trade_volume_distribution(std::vector<TradeRecord>{}), InsufficientDataError);
  std::vector<TradeRecord> same(2000, TradeRecord{0, 0, Side::Buy, 2.0, 20.0});
  CHECK_THROWS_AS(per_trade_volume_distribution(same), DegenerateFitError);
}
