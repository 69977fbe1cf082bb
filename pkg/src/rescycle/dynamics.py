"""Distribution of cycle scores: rank-size, exceedance and power-law tail fit."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import InsufficientTailError

MIN_FIT_SIZE = 10


@dataclass(frozen=True)
class TailFit:
    """Continuous power law ``p(x) ~ x**-alpha`` for ``x >= x_min``.

    ``p_values`` holds per-batch bootstrap p-values and ``p_mean`` their mean;
    both are empty/None until :func:`bootstrap_ks` runs.
    """

    alpha: float
    x_min: float
    n_tail: int
    ks_stat: float
    n: int
    p_values: tuple = ()
    p_mean: float | None = None

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return 1.0 - (x / self.x_min) ** (1.0 - self.alpha)


def rank_size(values):
    """Pairs ``(rank, value)`` with values descending; ties keep input order."""
    v = np.asarray(values, dtype=np.float64)
    order = np.argsort(-v, kind="stable")
    return [(r + 1, float(v[i])) for r, i in enumerate(order)]


def exceedance(values):
    """Pairs ``(x, P[X >= x])`` for each distinct value, ascending in ``x``."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    n = v.shape[0]
    xs, first = np.unique(v, return_index=True)
    return [(float(x), (n - i) / n) for x, i in zip(xs, first)]


def fit_power_law(values):
    """Fit a continuous power law to the upper tail.

    Every distinct value is tried as ``x_min``; the exponent is the maximum
    likelihood estimate ``1 + n_tail / sum(log(x / x_min))`` and the
    candidate with the smallest Kolmogorov-Smirnov distance between the tail
    and the fitted CDF wins (the lowest ``x_min`` on ties).

    Raises
    ------
    InsufficientTailError
        Fewer than 10 values, or no candidate leaves at least two distinct
        tail values.
    """
    x = np.sort(np.asarray(values, dtype=np.float64))
    if x.shape[0] < MIN_FIT_SIZE:
        raise InsufficientTailError(f"need at least {MIN_FIT_SIZE} values, got {x.shape[0]}")
    if x[0] <= 0 or not np.all(np.isfinite(x)):
        raise ValueError("values must be positive and finite")
    i, alpha, ks = _kernels.powerlaw_scan(np.ascontiguousarray(x))
    if i < 0:
        raise InsufficientTailError("no x_min candidate leaves a usable tail")
    return TailFit(alpha=float(alpha), x_min=float(x[i]), n_tail=int(x.shape[0] - i),
                   ks_stat=float(ks), n=int(x.shape[0]))


def _rep_rng(seed, rep):
    return np.random.default_rng(np.random.SeedSequence([seed, rep]))


def synthetic_sample(body, fit, rng):
    """Semi-parametric resample of the fitted data.

    Each of ``fit.n`` points comes from the power law with probability
    ``n_tail / n`` and otherwise is drawn with replacement from ``body``.
    """
    n_pl = rng.binomial(fit.n, fit.n_tail / fit.n) if body.size else fit.n
    u = rng.random(n_pl)
    tail = fit.x_min * (1.0 - u) ** (-1.0 / (fit.alpha - 1.0))
    rest = rng.choice(body, size=fit.n - n_pl, replace=True) if n_pl < fit.n else body[:0]
    return np.concatenate([rest, tail])


def bootstrap_ks(values, fit, reps=1000, seed=42, batch_size=50):
    """Bootstrap goodness-of-fit p-value for a :class:`TailFit`.

    Each rep refits a synthetic sample (:func:`synthetic_sample`) and scores
    1 when its K-S distance is at least the observed one. Rep ``k`` draws
    from its own generator seeded by ``(seed, k)``. The indicators are
    averaged in consecutive batches of ``batch_size`` to give ``p_values``;
    ``p_mean`` is their mean, which is the overall fraction whenever
    ``batch_size`` divides ``reps``.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    v = np.asarray(values, dtype=np.float64)
    body = np.sort(v[v < fit.x_min])

    hits = np.zeros(reps)
    for k in range(reps):
        sample = synthetic_sample(body, fit, _rep_rng(seed, k))
        try:
            syn = fit_power_law(sample)
        except InsufficientTailError:
            continue  # counts as no exceedance
        hits[k] = syn.ks_stat >= fit.ks_stat

    p_values = tuple(float(hits[i:i + batch_size].mean()) for i in range(0, reps, batch_size))
    return replace(fit, p_values=p_values, p_mean=float(np.mean(p_values)))
