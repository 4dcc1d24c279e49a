"""Two-good agent market simulation (C++ core)."""

from ._core import (
    AnalysisError,
    ClearingMode,
    ConfigError,
    Market,
    PriceRule,
    SimConfig,
    SnapshotError,
    acceptance_probability,
    default_step_budget,
    detect_crossover,
    excess_kurtosis,
    factor_bounded,
    factor_ratio,
    fit_power_law_tail,
    kernel_cdf,
    log_binned_histogram,
    oracle_check,
    returns,
    run,
    stationary_start,
    tau_scaling,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
