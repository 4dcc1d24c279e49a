#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tradesim/model.hpp"

namespace tradesim {

class AnalysisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public AnalysisError {
public:
  using AnalysisError::AnalysisError;
};

class InsufficientDataError : public AnalysisError {
public:
  using AnalysisError::AnalysisError;
};

class DegenerateFitError : public AnalysisError {
public:
  using AnalysisError::AnalysisError;
};

class NoCrossoverError : public AnalysisError {
public:
  using AnalysisError::AnalysisError;
};

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  double density = 0.0;
  std::size_t count = 0;
};

// Exponents are density exponents: a density ~ x^exponent, so a Pareto
// law with survival exponent a reports exponent = -(a + 1).
struct TailFitResult {
  double exponent = 0.0;
  double xmin = 0.0;
  std::size_t n_tail = 0;
  double std_error = 0.0;  // |exponent + 1| / sqrt(n_tail)
  double ks_statistic = 0.0;
};

struct CrossoverResult {
  double tau = 0.0;          // fitted center, in steps
  double early_level = 0.0;  // volume plateau before the crossover
  double late_level = 0.0;   // volume plateau after it
  double width = 0.0;        // steps between the 27% and 73% points of the logistic
  double fit_residual = 0.0; // rms residual in log-volume
};

struct ReturnSeries {
  std::size_t horizon = 1;
  std::vector<double> values;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;  // standard error of the slope
};

struct TauPoint {
  double n_agents = 0.0;
  double invest_fraction = 0.0;
  double tau = 0.0;
};

struct ReturnTailResult {
  TailFitResult tail;
  double excess_kurtosis = 0.0;
};

struct ImpactSample {
  double volume = 0.0;
  double price_change = 0.0;
};

struct ImpactFit {
  double alpha = 0.0;
  double std_error = 0.0;
};

struct TradeVolumeFits {
  TailFitResult shares;
  TailFitResult currency;
};

// Geometric bins aligned to powers of ten. density = count / (n_total *
// width), where n_total includes nonpositive samples, so the integrated
// density equals the positive fraction.
std::vector<HistogramBin> log_binned_histogram(std::span<const double> samples,
                                               int bins_per_decade);

// Continuous maximum-likelihood tail fit on the positive samples >= xmin.
// Without xmin the cutoff is chosen among the 50th-95th percentiles by
// minimum Kolmogorov-Smirnov distance.
TailFitResult fit_power_law_tail(std::span<const double> samples,
                                 std::optional<double> xmin = std::nullopt);

// Logistic step in log-volume vs log-time, fitted to the moving average
// of log-volume.
CrossoverResult detect_crossover(std::span<const double> volume_series,
                                 std::size_t smoothing_window);

// Ordinary least squares y = slope * x + intercept. Needs >= 3 points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Slope of ln tau against ln(N/c).
LinearFit tau_scaling(std::span<const TauPoint> points);

// r(t0) = ln(p(t0 + horizon) / p(t0)). Throws std::out_of_range unless
// 1 <= horizon < prices.size().
ReturnSeries returns(std::span<const double> prices, std::size_t horizon);

double excess_kurtosis(std::span<const double> values);

ReturnTailResult return_tail_analysis(const ReturnSeries& series);

// Slope of ln|dp| against ln V over samples with V > 0 and dp != 0.
ImpactFit price_impact_fit(std::span<const ImpactSample> samples);
ImpactFit price_impact_fit(std::span<const StepOutcome> outcomes);

TradeVolumeFits per_trade_volume_distribution(std::span<const TradeRecord> trades);
TradeVolumeFits per_trade_volume_distribution(std::span<const StepOutcome> outcomes);

}  // namespace tradesim
