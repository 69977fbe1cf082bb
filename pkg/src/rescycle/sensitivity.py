"""RI trajectories under sweeps of the tolerance thresholds."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .metrics import score_all

GRID_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SweepResult:
    """RI of every scored cycle at every grid value.

    ``scores`` has shape ``(len(grid), n_cycles)``. An ET sweep may carry a
    finer ``micro`` sweep over a sub-range as a separate result.
    """

    parameter: str
    grid: np.ndarray
    scores: np.ndarray
    cycles: tuple = ()
    micro: "SweepResult | None" = None

    def __post_init__(self):
        if self.scores.shape[0] != self.grid.shape[0]:
            raise ValueError("one score row per grid value required")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")


def grid(lo, hi, step):
    """``lo + i * step`` up to ``hi``; ``hi`` is kept when it is a whole number of steps."""
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("hi must not be below lo")
    span = (hi - lo) / step
    k = round(span)
    if abs(lo + k * step - hi) <= GRID_TOL:
        values = lo + np.arange(k + 1) * step
        values[-1] = hi
        return values
    return lo + np.arange(math.floor(span) + 1) * step


def _sweep(parameter, values, cycles, series, cfg):
    rows = []
    kept = None
    for v in values:
        scored = score_all(cycles, series, replace(cfg, **{parameter: float(v)}))
        if kept is None:
            kept = tuple(s.cycle for s in scored)
        rows.append([s.ri for s in scored])
    scores = np.array(rows, dtype=np.float64).reshape(len(values), len(kept or ()))
    return SweepResult(parameter=parameter, grid=np.asarray(values), scores=scores,
                       cycles=kept or ())


def sweep_rr(cycles, series, cfg, lo=0.0001, hi=0.002, step=0.0001):
    """Vary ``p_rr`` over a closed grid with ``p_et`` held fixed."""
    return _sweep("p_rr", grid(lo, hi, step), cycles, series, cfg)


def sweep_et(cycles, series, cfg, lo=0.0, hi=1.0, step=0.01, micro=(0.99, 1.0, 0.001)):
    """Vary ``p_et`` over a main grid plus an optional finer ``micro`` grid."""
    main = _sweep("p_et", grid(lo, hi, step), cycles, series, cfg)
    if micro is None:
        return main
    fine = _sweep("p_et", grid(*micro), cycles, series, cfg)
    return replace(main, micro=fine)
