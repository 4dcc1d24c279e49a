#include "tradesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tradesim {

namespace {

double bin_edge(long k, int bins_per_decade) {
  return std::pow(10.0, static_cast<double>(k) / bins_per_decade);
}

// Tail fit at one cutoff. `logs` are the sorted logs of the positive
// samples, `prefix[i]` the sum of logs[0..i).
struct TailScan {
  std::span<const double> logs;
  std::vector<double> prefix;

  explicit TailScan(std::span<const double> sorted_logs) : logs(sorted_logs) {
    prefix.resize(logs.size() + 1, 0.0);
    for (std::size_t i = 0; i < logs.size(); ++i) prefix[i + 1] = prefix[i] + logs[i];
  }

  // Returns false when the tail has no spread.
  bool fit(std::size_t first, TailFitResult& out) const {
    const std::size_t m = logs.size() - first;
    const double log_xmin = logs[first];
    if (logs.back() == log_xmin) return false;
    const double sum = (prefix[logs.size()] - prefix[first]) - static_cast<double>(m) * log_xmin;
    if (!(sum > 0.0)) return false;
    const double survival = static_cast<double>(m) / sum;  // alpha - 1

    double ks = 0.0;
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = first; i < logs.size(); ++i) {
      const double model = -std::expm1(-survival * (logs[i] - log_xmin));
      const double below = static_cast<double>(i - first) * inv_m;
      const double upto = static_cast<double>(i - first + 1) * inv_m;
      ks = std::max({ks, std::abs(model - below), std::abs(upto - model)});
    }
    out.exponent = -(1.0 + survival);
    out.xmin = std::exp(log_xmin);
    out.n_tail = m;
    out.std_error = survival / std::sqrt(static_cast<double>(m));
    out.ks_statistic = ks;
    return true;
  }
};

constexpr std::size_t kMinTail = 10;
constexpr std::size_t kMaxCutoffCandidates = 128;

double sigmoid_weight(double u, double center, double width) {
  return 1.0 / (1.0 + std::exp((u - center) / width));
}

struct LogisticFit {
  double center = 0.0;
  double width = 1.0;
  double early = 0.0;
  double late = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

// Profiles out the two levels by linear least squares for a given
// (center, width).
LogisticFit fit_levels(std::span<const double> u, std::span<const double> y, double center,
                       double width) {
  double sss = 0.0, ssl = 0.0, sll = 0.0, sys = 0.0, syl = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = sigmoid_weight(u[i], center, width);
    const double l = 1.0 - s;
    sss += s * s;
    ssl += s * l;
    sll += l * l;
    sys += y[i] * s;
    syl += y[i] * l;
  }
  LogisticFit fit;
  fit.center = center;
  fit.width = width;
  const double det = sss * sll - ssl * ssl;
  if (!(std::abs(det) > 1e-12 * (sss * sll + 1e-300))) return fit;
  fit.early = (sys * sll - syl * ssl) / det;
  fit.late = (syl * sss - sys * ssl) / det;
  double sse = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = sigmoid_weight(u[i], center, width);
    const double r = y[i] - (fit.late + (fit.early - fit.late) * s);
    sse += r * r;
  }
  fit.sse = sse;
  return fit;
}

}  // namespace

std::vector<HistogramBin> log_binned_histogram(std::span<const double> samples,
                                               int bins_per_decade) {
  if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be >= 1");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t positive = 0;
  for (double x : samples) {
    if (x > 0.0 && std::isfinite(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      ++positive;
    }
  }
  if (positive == 0) throw EmptyInputError("log_binned_histogram: no positive samples");

  auto index_of = [&](double x) {
    auto k = static_cast<long>(std::floor(std::log10(x) * bins_per_decade));
    while (x < bin_edge(k, bins_per_decade)) --k;
    while (x >= bin_edge(k + 1, bins_per_decade)) ++k;
    return k;
  };
  const long first = index_of(lo);
  const long last = index_of(hi);

  std::vector<HistogramBin> bins(static_cast<std::size_t>(last - first + 1));
  for (long k = first; k <= last; ++k) {
    auto& bin = bins[static_cast<std::size_t>(k - first)];
    bin.lo = bin_edge(k, bins_per_decade);
    bin.hi = bin_edge(k + 1, bins_per_decade);
  }
  for (double x : samples) {
    if (x > 0.0 && std::isfinite(x)) ++bins[static_cast<std::size_t>(index_of(x) - first)].count;
  }
  const double total = static_cast<double>(samples.size());
  for (auto& bin : bins) {
    bin.density = static_cast<double>(bin.count) / (total * (bin.hi - bin.lo));
  }
  return bins;
}

TailFitResult fit_power_law_tail(std::span<const double> samples, std::optional<double> xmin) {
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (double x : samples) {
    if (x > 0.0 && std::isfinite(x) && (!xmin || x >= *xmin)) logs.push_back(std::log(x));
  }
  if (logs.size() < kMinTail) {
    throw InsufficientDataError("fit_power_law_tail: need at least 10 tail samples, got " +
                                std::to_string(logs.size()));
  }
  std::sort(logs.begin(), logs.end());
  const TailScan scan(logs);

  TailFitResult best;
  if (xmin) {
    if (logs.front() == logs.back()) {
      throw DegenerateFitError("fit_power_law_tail: tail has no spread");
    }
    const double log_xmin = std::log(*xmin);
    const double m = static_cast<double>(logs.size());
    const double survival = m / (scan.prefix.back() - m * log_xmin);
    double ks = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
      const double model = -std::expm1(-survival * (logs[i] - log_xmin));
      ks = std::max({ks, std::abs(model - i / m), std::abs((i + 1) / m - model)});
    }
    best.exponent = -(1.0 + survival);
    best.xmin = *xmin;
    best.n_tail = logs.size();
    best.std_error = survival / std::sqrt(m);
    best.ks_statistic = ks;
    return best;
  }

  const std::size_t n = logs.size();
  const std::size_t lo = n / 2;
  const std::size_t hi = std::min((n * 95) / 100, n - kMinTail);
  if (hi < lo) {
    throw InsufficientDataError("fit_power_law_tail: too few samples for the cutoff scan");
  }
  const std::size_t span = hi - lo;
  const std::size_t stride = std::max<std::size_t>(1, span / kMaxCutoffCandidates);

  bool found = false;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = lo; k <= hi; k += stride) {
    // Ties: the tail always starts at the first occurrence of the cutoff.
    const std::size_t first =
        static_cast<std::size_t>(std::lower_bound(logs.begin(), logs.end(), logs[k]) - logs.begin());
    if (logs[first] == previous) continue;
    previous = logs[first];
    TailFitResult candidate;
    if (!scan.fit(first, candidate)) continue;
    if (!found || candidate.ks_statistic < best.ks_statistic) {
      best = candidate;
      found = true;
    }
  }
  if (!found) throw DegenerateFitError("fit_power_law_tail: samples have no spread");
  return best;
}

CrossoverResult detect_crossover(std::span<const double> volume_series,
                                 std::size_t smoothing_window) {
  const std::size_t n = volume_series.size();
  if (smoothing_window == 0) throw std::invalid_argument("smoothing_window must be >= 1");
  if (n < 10 * smoothing_window || n < 10) {
    throw InsufficientDataError("detect_crossover: series shorter than 10 smoothing windows");
  }
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(volume_series[i] > 0.0)) {
      throw std::invalid_argument("detect_crossover: volumes must be positive");
    }
    prefix[i + 1] = prefix[i] + std::log(volume_series[i]);
  }

  // Log-spaced sample points of the centered moving average.
  constexpr std::size_t kMaxPoints = 4096;
  std::vector<double> u;
  std::vector<double> y;
  const double log_n = std::log(static_cast<double>(n));
  std::size_t last_index = std::numeric_limits<std::size_t>::max();
  const std::size_t points = std::min(n, kMaxPoints);
  for (std::size_t j = 0; j < points; ++j) {
    const double t = std::exp(log_n * static_cast<double>(j) / static_cast<double>(points - 1));
    const auto index = std::min(n - 1, static_cast<std::size_t>(std::llround(t)) - 1);
    if (index == last_index) continue;
    last_index = index;
    const std::size_t half = smoothing_window / 2;
    const std::size_t a = index >= half ? index - half : 0;
    const std::size_t b = std::min(n, a + smoothing_window);
    u.push_back(std::log(static_cast<double>(index + 1)));
    y.push_back((prefix[b] - prefix[a]) / static_cast<double>(b - a));
  }

  const double u_lo = u.front();
  const double u_hi = u.back();
  LogisticFit best;
  {
    constexpr int kCenters = 120;
    constexpr int kWidths = 40;
    for (int i = 0; i < kCenters; ++i) {
      const double center = u_lo + (u_hi - u_lo) * (i + 0.5) / kCenters;
      for (int j = 0; j < kWidths; ++j) {
        const double width = 1e-3 * std::pow(5e3, static_cast<double>(j) / (kWidths - 1));
        auto fit = fit_levels(u, y, center, width);
        if (fit.sse < best.sse) best = fit;
      }
    }
  }
  // Zoom in around the best grid point.
  double center_step = (u_hi - u_lo) / 120.0;
  double log_width_step = std::log(5e3) / 39.0;
  for (int round = 0; round < 6; ++round) {
    const LogisticFit anchor = best;
    for (int i = -7; i <= 7; ++i) {
      const double center = std::clamp(anchor.center + i * center_step / 7.0, u_lo, u_hi);
      for (int j = -7; j <= 7; ++j) {
        const double width = anchor.width * std::exp(j * log_width_step / 7.0);
        auto fit = fit_levels(u, y, center, width);
        if (fit.sse < best.sse) best = fit;
      }
    }
    center_step /= 3.0;
    log_width_step /= 3.0;
  }

  const double rms = std::sqrt(best.sse / static_cast<double>(u.size()));
  // Rounding alone can separate the levels of a flat series.
  const double resolution = 1e-9 * std::max(1.0, std::abs(best.early));
  if (!std::isfinite(best.sse) || !(best.early - best.late > std::max(3.0 * rms, resolution))) {
    throw NoCrossoverError("detect_crossover: early and late levels are indistinguishable");
  }
  CrossoverResult out;
  out.tau = std::exp(best.center);
  out.early_level = std::exp(best.early);
  out.late_level = std::exp(best.late);
  out.width = out.tau * (std::exp(best.width) - std::exp(-best.width));
  out.fit_residual = rms;
  return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("linear_fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw InsufficientDataError("linear_fit: need at least 3 points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateFitError("linear_fit: all x values are equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.std_error = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  return fit;
}

LinearFit tau_scaling(std::span<const TauPoint> points) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) {
    x.push_back(std::log(p.n_agents / p.invest_fraction));
    y.push_back(std::log(p.tau));
  }
  std::vector<double> distinct = x;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (points.size() < 3 || distinct.size() < 3) {
    throw InsufficientDataError("tau_scaling: need at least 3 points with distinct N/c");
  }
  return linear_fit(x, y);
}

ReturnSeries returns(std::span<const double> prices, std::size_t horizon) {
  if (horizon < 1 || horizon >= prices.size()) {
    throw std::out_of_range("returns: horizon must lie in [1, series length)");
  }
  ReturnSeries out;
  out.horizon = horizon;
  out.values.resize(prices.size() - horizon);
  for (std::size_t t = 0; t + horizon < prices.size(); ++t) {
    out.values[t] = std::log(prices[t + horizon] / prices[t]);
  }
  return out;
}

double excess_kurtosis(std::span<const double> values) {
  if (values.size() < 2) throw InsufficientDataError("excess_kurtosis: need at least 2 values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw DegenerateFitError("excess_kurtosis: zero variance");
  return m4 / (m2 * m2) - 3.0;
}

ReturnTailResult return_tail_analysis(const ReturnSeries& series) {
  if (series.values.size() < 1000) {
    throw InsufficientDataError("return_tail_analysis: need at least 1000 returns");
  }
  ReturnTailResult out;
  out.excess_kurtosis = excess_kurtosis(series.values);
  std::vector<double> magnitudes(series.values.size());
  std::transform(series.values.begin(), series.values.end(), magnitudes.begin(),
                 [](double r) { return std::abs(r); });
  out.tail = fit_power_law_tail(magnitudes);
  return out;
}

ImpactFit price_impact_fit(std::span<const ImpactSample> samples) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : samples) {
    const double dp = std::abs(s.price_change);
    if (s.volume > 0.0 && dp > 0.0 && std::isfinite(s.volume) && std::isfinite(dp)) {
      x.push_back(std::log(s.volume));
      y.push_back(std::log(dp));
    }
  }
  if (x.size() < 1000) {
    throw InsufficientDataError("price_impact_fit: need at least 1000 steps with V > 0 and dp != 0");
  }
  const auto fit = linear_fit(x, y);
  return {fit.slope, fit.std_error};
}

ImpactFit price_impact_fit(std::span<const StepOutcome> outcomes) {
  std::vector<ImpactSample> samples;
  samples.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    samples.push_back({o.volume_offered, o.price_after - o.price_before});
  }
  return price_impact_fit(samples);
}

TradeVolumeFits per_trade_volume_distribution(std::span<const TradeRecord> trades) {
  if (trades.size() < 1000) {
    throw InsufficientDataError("per_trade_volume_distribution: need at least 1000 trades");
  }
  std::vector<double> shares(trades.size());
  std::vector<double> currency(trades.size());
  for (std::size_t i = 0; i < trades.size(); ++i) {
    shares[i] = trades[i].shares;
    currency[i] = trades[i].currency;
  }
  return {fit_power_law_tail(shares), fit_power_law_tail(currency)};
}

TradeVolumeFits per_trade_volume_distribution(std::span<const StepOutcome> outcomes) {
  std::vector<TradeRecord> pooled;
  for (const auto& o : outcomes) {
    pooled.insert(pooled.end(), o.per_trade_volumes.begin(), o.per_trade_volumes.end());
  }
  return per_trade_volume_distribution(pooled);
}

}  // namespace tradesim
