"""End-to-end analysis: prices -> LoP -> cycles -> scores."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .cycles import identify_cycles
from .ingest import parse_csv
from .metrics import score_all
from .preprocess import PerformanceSeries, normalize, rlowess

BUNDLED_NASDAQ = "ixic_2013-09-16_2018-04-16.csv"


@dataclass(frozen=True, eq=False)
class Analysis:
    series: PerformanceSeries
    cycles: list
    scores: list


def bundled_nasdaq():
    """NASDAQ Composite daily closes, 2013-09-16 to 2018-04-16."""
    return resources.files("rescycle.data").joinpath(BUNDLED_NASDAQ).read_bytes()


def load_prices(cfg):
    path = cfg["input"]
    tau = cfg["cycles.tau_days"]
    if not path:
        return parse_csv(bundled_nasdaq(), cfg["symbol"], tau_days=tau)
    with open(path, "rb") as fh:
        return parse_csv(fh, cfg["symbol"], tau_days=tau)


def performance_series(prices, cfg):
    if cfg["preprocess.normalize"]:
        series = normalize(prices)
    else:
        series = PerformanceSeries(prices.symbol, list(prices.closes), dates=tuple(prices.dates))
    if cfg["preprocess.smooth"]:
        series = rlowess(series, cfg["preprocess.span_days"])
    return series


def run_analysis(prices, cfg):
    series = performance_series(prices, cfg)
    cycles = identify_cycles(series, cfg["cycles.tau_days"])
    scores = score_all(cycles, series, cfg.tolerance())
    return Analysis(series=series, cycles=cycles, scores=scores)
