"""Per-cycle resilience scoring.

The resilience indicator is the product of four elemental functions,
``RI = R_m * (1 - R_e) * R_d * R_s``:

* resistance ``R_m``: trough LoP plus the robustness band width;
* re-stabilisation ``R_e``: how far the trough fell below the elasticity
  threshold, relative to the drop;
* rebuilding ``R_d``: recovery slope over failure slope;
* reconfiguration ``R_s``: recovered height over lost height.

Three comparators are computed alongside: the resilience-triangle area
(``r1``), the area ratio (``r2``) and the recovery-speed product (``r3``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .cycles import ResilienceCycle
from .errors import ConfigError, DegenerateCycleError, ZeroFailureSlopeError

log = logging.getLogger(__name__)

RECOVERY_TOL = 1e-9

RestabMode = Literal["eq4", "appendix"]


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerance thresholds.

    Attributes
    ----------
    p_rr : float
        Robustness half-range as a fraction of LoP (``0.0001`` is 0.01 %).
    p_et : float
        Elasticity threshold as a fraction of the pre-event LoP.
    restab_denominator : {"eq4", "appendix"}
        ``"eq4"`` divides the re-stabilisation excess by the drop height,
        ``"appendix"`` divides it by the threshold itself.
    """

    p_rr: float = 0.0001
    p_et: float = 0.8
    restab_denominator: RestabMode = "eq4"

    def __post_init__(self):
        if not self.p_rr >= 0:
            raise ConfigError(f"p_rr must be >= 0, got {self.p_rr}")
        if not 0 <= self.p_et <= 1:
            raise ConfigError(f"p_et must lie in [0, 1], got {self.p_et}")
        if self.restab_denominator not in ("eq4", "appendix"):
            raise ConfigError(f"unknown restab_denominator {self.restab_denominator!r}")


@dataclass(frozen=True)
class CycleScores:
    cycle: ResilienceCycle
    rr_width: float
    et: float
    r_m: float
    r_e: float
    s_f: float
    s_r: float
    r_d: float
    r_s: float
    ri: float
    r1: float
    r2: float
    r3: float
    recovery_type: str


def rr_width(cfg):
    """Full width of the robustness band, ``2 * p_rr``."""
    return 2.0 * cfg.p_rr


def elasticity_threshold(cfg, cycle):
    return cfg.p_et * cycle.p_pre


def resistance(cycle, cfg):
    return cycle.p_event + rr_width(cfg)


def _drop(cycle):
    drop = cycle.p_pre - cycle.p_event
    if drop == 0:
        raise DegenerateCycleError(f"no downturn in cycle at t={cycle.t_pre}")
    return drop


def restabilization(cycle, cfg):
    """Share of the drop lying below the elasticity threshold, in ``[0, 1]``.

    Zero when the trough stays at or above the threshold.
    """
    drop = _drop(cycle)
    et = elasticity_threshold(cfg, cycle)
    if et <= cycle.p_event:
        return 0.0
    denom = drop if cfg.restab_denominator == "eq4" else et
    return min(max((et - cycle.p_event) / denom, 0.0), 1.0)


def rebuilding(cycle):
    """Failure slope, recovery slope and their ratio, per trading day.

    A cycle truncated at its trough (``t_post == t_event``) recovers at
    slope zero.
    """
    if cycle.t_event == cycle.t_pre or cycle.p_pre == cycle.p_event:
        raise ZeroFailureSlopeError(f"zero failure slope in cycle at t={cycle.t_pre}")
    s_f = (cycle.p_pre - cycle.p_event) / (cycle.t_event - cycle.t_pre)
    if cycle.t_post == cycle.t_event:
        s_r = 0.0
    else:
        s_r = (cycle.p_post - cycle.p_event) / (cycle.t_post - cycle.t_event)
    return s_f, s_r, s_r / s_f


def reconfiguration(cycle):
    return (cycle.p_post - cycle.p_event) / _drop(cycle)


def ri(cycle, cfg):
    r_m = resistance(cycle, cfg)
    r_e = restabilization(cycle, cfg)
    _, _, r_d = rebuilding(cycle)
    r_s = reconfiguration(cycle)
    return r_m * (1.0 - r_e) * r_d * r_s


def _window(cycle, series):
    lop = np.asarray(series.lop)
    return lop[cycle.t_pre:cycle.t_post + 1]


def _trapezoid(y):
    return float(np.sum((y[1:] + y[:-1]) * 0.5))


def r1(cycle, series):
    """Area between the pre-event level and the LoP over the cycle (unit days)."""
    return _trapezoid(cycle.p_pre - _window(cycle, series))


def r2(cycle, series):
    """Area under the LoP over the area under the pre-event level."""
    y = _window(cycle, series)
    return _trapezoid(y) / (cycle.p_pre * (cycle.t_post - cycle.t_pre))


def r3(cycle):
    """Recovery slope times post- and trough-to-pre LoP ratios."""
    _, s_r, _ = rebuilding(cycle)
    return s_r * (cycle.p_post / cycle.p_pre) * (cycle.p_event / cycle.p_pre)


def recovery_type(r_s, tol=RECOVERY_TOL):
    if abs(r_s) <= tol:
        return "collapse"
    if abs(r_s - 1.0) <= tol:
        return "leveled"
    return "adaptive" if r_s > 1.0 else "insufficient"


def score_cycle(cycle, series, cfg):
    r_m = resistance(cycle, cfg)
    r_e = restabilization(cycle, cfg)
    s_f, s_r, r_d = rebuilding(cycle)
    r_s = reconfiguration(cycle)
    return CycleScores(
        cycle=cycle,
        rr_width=rr_width(cfg),
        et=elasticity_threshold(cfg, cycle),
        r_m=r_m,
        r_e=r_e,
        s_f=s_f,
        s_r=s_r,
        r_d=r_d,
        r_s=r_s,
        ri=r_m * (1.0 - r_e) * r_d * r_s,
        r1=r1(cycle, series),
        r2=r2(cycle, series),
        r3=s_r * (cycle.p_post / cycle.p_pre) * (cycle.p_event / cycle.p_pre),
        recovery_type=recovery_type(r_s),
    )


def score_all(cycles, series, cfg):
    """Score every cycle, in order.

    Cycles without a downturn are skipped with a warning rather than
    aborting the batch; their indices are available via
    :func:`degenerate_cycles`.
    """
    out = []
    for k, c in enumerate(cycles):
        try:
            out.append(score_cycle(c, series, cfg))
        except DegenerateCycleError as exc:
            log.warning("skipping cycle %d: %s", k, exc)
    return out


def degenerate_cycles(cycles):
    """Indices of cycles that :func:`score_all` would skip."""
    return [k for k, c in enumerate(cycles)
            if c.p_pre == c.p_event or c.t_event == c.t_pre]
