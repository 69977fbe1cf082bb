"""Drawdown/drawup segmentation and resilience-cycle extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Direction = Literal["down", "up"]


@dataclass(frozen=True)
class Run:
    """Maximal drawdown or drawup; endpoints are shared with the neighbours."""

    direction: Direction
    start: int
    end: int

    @property
    def duration(self):
        return self.end - self.start


@dataclass(frozen=True)
class ResilienceCycle:
    """One drawdown followed by its drawup.

    A drawdown that runs to the end of the data has ``t_post == t_event`` and
    ``p_post == p_event``: the collapse case.
    """

    t_pre: int
    t_event: int
    t_post: int
    p_pre: float
    p_event: float
    p_post: float


def _direction(lop, start, end):
    return "down" if lop[end] < lop[start] else "up"


def segment_runs(series):
    """Split ``[0, n-1]`` into alternating weakly monotone runs.

    Flat steps stay with the run in progress; a flat prefix joins the first
    run. A constant series is one ``up`` run.
    """
    lop = np.asarray(series.lop)
    n = lop.shape[0]
    if n < 2:
        raise ValueError("series needs at least two points")
    steps = np.sign(np.diff(lop))
    nonzero = np.flatnonzero(steps)
    if nonzero.size == 0:
        return [Run("up", 0, n - 1)]

    current = "down" if steps[nonzero[0]] < 0 else "up"
    runs = []
    start = 0
    for j, s in enumerate(steps):
        if s == 0:
            continue
        d = "down" if s < 0 else "up"
        if d != current:
            runs.append(Run(current, start, j))
            start, current = j, d
    runs.append(Run(current, start, n - 1))
    return runs


def _coalesce(runs):
    out = [runs[0]]
    for r in runs[1:]:
        last = out[-1]
        if r.direction == last.direction:
            out[-1] = Run(last.direction, last.start, r.end)
        else:
            out.append(r)
    return out


def tau_filter(runs, series, tau_days=3):
    """Merge runs spanning fewer than ``tau_days`` days into their neighbours.

    Repeatedly take the shortest short run (earliest start on ties) and fuse
    it with both neighbours, or with its one neighbour when it sits at either
    end. The fused run points the way of its net LoP change, and adjacent
    runs that end up pointing the same way are fused too. Stops when no run
    is short, or when only two runs (both at an end) remain.
    """
    lop = np.asarray(series.lop)
    runs = list(runs)
    while len(runs) >= 3:
        short = [k for k, r in enumerate(runs) if r.duration < tau_days]
        if not short:
            break
        k = min(short, key=lambda i: (runs[i].duration, runs[i].start))
        lo = max(k - 1, 0)
        hi = min(k + 1, len(runs) - 1)
        start, end = runs[lo].start, runs[hi].end
        merged = Run(_direction(lop, start, end), start, end)
        runs = _coalesce(runs[:lo] + [merged] + runs[hi + 1:])
    return runs


def extract_cycles(runs, series):
    """Pair each drawdown with the drawup that follows it."""
    lop = np.asarray(series.lop)
    last = lop.shape[0] - 1
    cycles = []
    for k, r in enumerate(runs):
        if r.direction != "down":
            continue
        t_post = runs[k + 1].end if k + 1 < len(runs) else last
        cycles.append(ResilienceCycle(
            t_pre=r.start,
            t_event=r.end,
            t_post=t_post,
            p_pre=float(lop[r.start]),
            p_event=float(lop[r.end]),
            p_post=float(lop[t_post]),
        ))
    return cycles


def identify_cycles(series, tau_days=3):
    """``segment_runs`` -> ``tau_filter`` -> ``extract_cycles``."""
    runs = tau_filter(segment_runs(series), series, tau_days)
    return extract_cycles(runs, series)
