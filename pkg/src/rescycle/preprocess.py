"""Normalisation to level-of-performance (LoP) and robust LOWESS de-noising."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import ConfigError

ROBUST_ITERATIONS = 5


@dataclass(frozen=True, eq=False)
class PerformanceSeries:
    """LoP values indexed by trading day ``t = 0..n-1``.

    ``lop`` is a read-only float64 array. ``dates`` is carried along for
    reporting only and may be empty.
    """

    symbol: str
    lop: np.ndarray
    smoothed: bool = False
    dates: tuple = field(default=())

    def __post_init__(self):
        arr = np.array(self.lop, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("lop must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("lop contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "lop", arr)

    def __len__(self):
        return self.lop.shape[0]


def normalize(series):
    """Divide every close by the series maximum."""
    closes = np.asarray(series.closes, dtype=np.float64)
    return PerformanceSeries(
        symbol=series.symbol,
        lop=closes / closes.max(),
        smoothed=False,
        dates=tuple(series.dates),
    )


def rlowess(series, span_days=4, iterations=ROBUST_ITERATIONS):
    """Robust local-linear regression smoother.

    Each point is refit from its ``span_days`` nearest neighbours with tricube
    distance weights (the farthest neighbour gets weight zero). Then
    ``iterations`` robust passes reweight every point by the bisquare of its
    residual over ``6 * median(|residual|)``. The passes stop early once the
    median absolute residual is negligible against the data range.

    Parameters
    ----------
    series : PerformanceSeries
    span_days : int
        Window size in points, ``2 <= span_days <= len(series)``.
    iterations : int
        Number of robust reweighting passes.

    Returns
    -------
    PerformanceSeries
        Same length, ``smoothed=True``.
    """
    y = np.ascontiguousarray(series.lop, dtype=np.float64)
    n = y.shape[0]
    span = int(span_days)
    if span < 2:
        raise ConfigError(f"span_days must be at least 2, got {span_days}")
    if span > n:
        raise ConfigError(f"span_days={span} exceeds series length {n}")

    weights = np.ones(n)
    fit = _kernels.local_linear(y, span, weights)
    spread = float(np.ptp(y))
    for _ in range(iterations):
        resid = y - fit
        mad = float(np.median(np.abs(resid)))
        if mad <= 1e-12 * spread:
            break
        u = resid / (6.0 * mad)
        weights = np.where(np.abs(u) < 1.0, (1.0 - u * u) ** 2, 0.0)
        fit = _kernels.local_linear(y, span, weights)

    return replace(series, lop=fit, smoothed=True)
