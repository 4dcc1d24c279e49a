#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tradesim/analysis.hpp"
#include "tradesim/config.hpp"
#include "tradesim/harness.hpp"
#include "tradesim/model.hpp"
#include "tradesim/oracle.hpp"
#include "tradesim/price_rule.hpp"

namespace py = pybind11;
using namespace tradesim;

namespace {

// A market plus its random stream, stepped from Python.
class Market {
 public:
  explicit Market(const SimConfig& config)
      : config_(config), state_(init_state(config)), rng_(config.seed) {}

  py::dict step() {
    const auto out = market_step(state_, config_, rng_, workspace_);
    py::dict d;
    d["step"] = out.step;
    d["supply"] = out.supply_s;
    d["demand"] = out.demand_d;
    d["q"] = out.q;
    d["vol_offered"] = out.volume_offered;
    d["vol_executed"] = out.volume_executed;
    d["price"] = out.price_after;
    return d;
  }

  void advance(std::uint64_t steps) {
    for (std::uint64_t i = 0; i < steps; ++i) market_step(state_, config_, rng_, workspace_);
  }

  double price() const { return state_.price; }
  std::uint64_t current_step() const { return state_.step; }
  double total_stock() const { return state_.total_stock(); }
  double total_money() const { return state_.total_money(); }

  std::vector<double> stocks() const {
    std::vector<double> out;
    for (const auto& a : state_.agents) out.push_back(a.stock);
    return out;
  }
  std::vector<double> money() const {
    std::vector<double> out;
    for (const auto& a : state_.agents) out.push_back(a.money);
    return out;
  }

  void save(const std::filesystem::path& path) const { snapshot_state(config_, state_, path); }

  static Market load(const std::filesystem::path& path) {
    auto cp = restore_state(path);
    Market m(cp.config);
    m.state_ = std::move(cp.state);
    return m;
  }

  const SimConfig& config() const { return config_; }

 private:
  SimConfig config_;
  MarketState state_;
  CounterRng rng_;
  StepWorkspace workspace_;
};

py::dict run(const SimConfig& config, const std::string& snapshot_schedule,
             std::optional<std::filesystem::path> output_dir) {
  RecordingOptions opts;
  opts.keep_rows = false;
  opts.keep_series = true;
  opts.snapshot_steps = parse_snapshot_schedule(snapshot_schedule, config);
  opts.output_dir = std::move(output_dir);
  RunRecord rec;
  {
    py::gil_scoped_release release;
    rec = run_simulation(config, opts);
  }
  std::vector<double> stocks, money;
  for (const auto& a : rec.final_state.agents) {
    stocks.push_back(a.stock);
    money.push_back(a.money);
  }
  py::dict d;
  d["price"] = rec.price_series;
  d["volume"] = rec.volume_series;
  d["final_stock"] = stocks;
  d["final_money"] = money;
  d["final_price"] = rec.final_state.price;
  d["max_stock_drift"] = rec.max_stock_drift;
  d["max_money_drift"] = rec.max_money_drift;
  d["snapshot_steps"] = [&] {
    std::vector<std::uint64_t> steps;
    for (const auto& s : rec.snapshots) steps.push_back(s.step);
    return steps;
  }();
  return d;
}

py::dict tail_dict(const TailFitResult& t) {
  py::dict d;
  d["exponent"] = t.exponent;
  d["xmin"] = t.xmin;
  d["n_tail"] = t.n_tail;
  d["stderr"] = t.std_error;
  d["ks"] = t.ks_statistic;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-good agent market simulation";

  py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_RuntimeError);
  py::register_exception<SnapshotError>(m, "SnapshotError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<PriceRuleKind>(m, "PriceRule")
      .value("Bounded", PriceRuleKind::Bounded)
      .value("Ratio", PriceRuleKind::Ratio);
  py::enum_<ClearingMode>(m, "ClearingMode")
      .value("AcceptanceRationing", ClearingMode::AcceptanceRationing)
      .value("ProportionalOnly", ClearingMode::ProportionalOnly);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def(py::init([](py::kwargs kw) {
        SimConfig c;
        for (auto [key, value] : kw) set_config_value(c, py::str(key).cast<std::string>(), py::str(value).cast<std::string>());
        return c;
      }))
      .def_readwrite("n_agents", &SimConfig::n_agents)
      .def_readwrite("invest_fraction", &SimConfig::invest_fraction)
      .def_readwrite("init_stock", &SimConfig::init_stock)
      .def_readwrite("init_money", &SimConfig::init_money)
      .def_readwrite("init_price", &SimConfig::init_price)
      .def_readwrite("n_steps", &SimConfig::n_steps)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("price_rule", &SimConfig::price_rule)
      .def_readwrite("ratio_cap", &SimConfig::ratio_cap)
      .def_readwrite("clearing_mode", &SimConfig::clearing_mode)
      .def_readwrite("interest_rate", &SimConfig::interest_rate)
      .def("validate", &SimConfig::validate)
      .def("to_dict", [](const SimConfig& c) {
        py::dict d;
        for (const auto& [k, v] : to_key_values(c)) d[py::str(k)] = v;
        return d;
      })
      .def(py::self == py::self)
      .def("__repr__", [](const SimConfig& c) {
        std::string s = "SimConfig(";
        bool first = true;
        for (const auto& [k, v] : to_key_values(c)) {
          s += (first ? "" : ", ") + k + "=" + v;
          first = false;
        }
        return s + ")";
      });

  py::class_<Market>(m, "Market")
      .def(py::init<const SimConfig&>())
      .def("step", &Market::step, "Advance one step and return its record.")
      .def("advance", &Market::advance, py::arg("steps"),
           py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("price", &Market::price)
      .def_property_readonly("step_index", &Market::current_step)
      .def_property_readonly("config", &Market::config)
      .def("total_stock", &Market::total_stock)
      .def("total_money", &Market::total_money)
      .def("stocks", &Market::stocks)
      .def("money", &Market::money)
      .def("save", &Market::save, py::arg("path"))
      .def_static("load", &Market::load, py::arg("path"));

  m.def("run", &run, py::arg("config"), py::arg("snapshot_schedule") = "auto",
        py::arg("output_dir") = std::nullopt,
        "Run a full simulation; returns price and volume series and the final holdings.");

  m.def("factor_bounded", &factor_bounded, py::arg("supply"), py::arg("demand"));
  m.def("factor_ratio", &factor_ratio, py::arg("supply"), py::arg("demand"), py::arg("cap") = 2.0);
  m.def("acceptance_probability", &acceptance_probability, py::arg("supply"), py::arg("demand"));
  m.def("stationary_start", &stationary_start);
  m.def("default_step_budget", &default_step_budget);

  m.def(
      "fit_power_law_tail",
      [](const std::vector<double>& samples, std::optional<double> xmin) {
        return tail_dict(fit_power_law_tail(samples, xmin));
      },
      py::arg("samples"), py::arg("xmin") = std::nullopt);
  m.def(
      "log_binned_histogram",
      [](const std::vector<double>& samples, int bins_per_decade) {
        py::list out;
        for (const auto& b : log_binned_histogram(samples, bins_per_decade)) {
          out.append(py::make_tuple(b.lo, b.hi, b.density, b.count));
        }
        return out;
      },
      py::arg("samples"), py::arg("bins_per_decade") = 5);
  m.def(
      "detect_crossover",
      [](const std::vector<double>& volume, std::size_t window) {
        const auto r = detect_crossover(volume, window);
        py::dict d;
        d["tau"] = r.tau;
        d["early_level"] = r.early_level;
        d["late_level"] = r.late_level;
        d["width"] = r.width;
        d["fit_residual"] = r.fit_residual;
        return d;
      },
      py::arg("volume"), py::arg("window"));
  m.def(
      "returns",
      [](const std::vector<double>& prices, std::size_t horizon) {
        return returns(prices, horizon).values;
      },
      py::arg("prices"), py::arg("horizon") = 1);
  m.def("excess_kurtosis", [](const std::vector<double>& v) { return excess_kurtosis(v); });
  m.def(
      "tau_scaling",
      [](const std::vector<std::tuple<double, double, double>>& points) {
        std::vector<TauPoint> pts;
        for (const auto& [n, c, tau] : points) pts.push_back({n, c, tau});
        const auto fit = tau_scaling(pts);
        return py::make_tuple(fit.slope, fit.intercept, fit.std_error);
      },
      py::arg("points"));

  m.def(
      "kernel_cdf",
      [](double stock, double money, double price, double q, double c, double a) {
        return kernel_cdf(KernelSpec{stock, money, price, q, c}, a);
      },
      py::arg("stock"), py::arg("money"), py::arg("price"), py::arg("q"), py::arg("invest_fraction"),
      py::arg("a"));
  m.def(
      "oracle_check",
      [](std::size_t specs, std::size_t samples, std::uint64_t seed, double q_bias) {
        OracleReport report;
        {
          py::gil_scoped_release release;
          report = run_oracle_grid(specs, samples, seed, q_bias);
        }
        py::dict d;
        d["pass"] = report.pass();
        d["failures"] = report.failures;
        d["specs"] = report.rows.size();
        return d;
      },
      py::arg("specs") = 50, py::arg("samples") = 100000, py::arg("seed") = 1,
      py::arg("q_bias") = 0.0);
}
