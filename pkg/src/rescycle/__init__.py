"""Resilience cycles in daily market performance.

Typical use::

    from rescycle import RunConfig, load_prices, run_analysis
    analysis = run_analysis(load_prices(cfg := RunConfig.load()), cfg)
"""

from ._kernels import BACKEND
from .config import RunConfig
from .cycles import ResilienceCycle, Run, extract_cycles, segment_runs, tau_filter
from .dynamics import TailFit, bootstrap_ks, exceedance, fit_power_law, rank_size
from .ingest import PriceSeries, fetch_history, parse_csv
from .metrics import CycleScores, ToleranceConfig, score_all
from .pipeline import load_prices, run_analysis
from .preprocess import PerformanceSeries, normalize, rlowess
from .sensitivity import SweepResult, sweep_et, sweep_rr

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CycleScores", "PerformanceSeries", "PriceSeries", "ResilienceCycle",
    "Run", "RunConfig", "SweepResult", "TailFit", "ToleranceConfig", "bootstrap_ks",
    "exceedance", "extract_cycles", "fetch_history", "fit_power_law", "load_prices",
    "normalize", "parse_csv", "rank_size", "rlowess", "run_analysis", "score_all",
    "segment_runs", "sweep_et", "sweep_rr", "tau_filter",
]
