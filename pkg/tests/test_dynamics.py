import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rescycle.dynamics import (
    bootstrap_ks, exceedance, fit_power_law, rank_size, synthetic_sample,
)
from rescycle.errors import InsufficientTailError


def pareto(n, alpha, x_min=1.0, seed=0):
    """Inverse-CDF draws: x_min * u ** (-1 / (alpha - 1))."""
    u = 1.0 - np.random.default_rng(seed).random(n)
    return x_min * u ** (-1.0 / (alpha - 1.0))


def brute_fit(x):
    """Scan every distinct x_min with a textbook K-S distance."""
    x = np.sort(np.asarray(x, dtype=float))
    best = None
    for xmin in np.unique(x)[:-1]:
        tail = x[x >= xmin]
        m = tail.size
        s = np.sum(np.log(tail / xmin))
        if s <= 0:
            continue
        a = 1 + m / s
        cdf = 1 - (tail / xmin) ** (1 - a)
        d = max(np.max(np.arange(1, m + 1) / m - cdf), np.max(cdf - np.arange(m) / m))
        if best is None or d < best[2] - 1e-15:
            best = (xmin, a, d, m)
    return best


def test_rank_size():
    assert rank_size([3, 1, 2]) == [(1, 3.0), (2, 2.0), (3, 1.0)]
    assert rank_size([5.0]) == [(1, 5.0)]
    assert rank_size([2, 1, 2]) == [(1, 2.0), (2, 2.0), (3, 1.0)]


def test_exceedance():
    assert exceedance([1, 2, 3, 4]) == [(1, 1.0), (2, 0.75), (3, 0.5), (4, 0.25)]
    assert exceedance([2, 2, 2]) == [(2.0, 1.0)]
    assert exceedance([3, 1, 3, 2]) == [(1, 1.0), (2, 0.75), (3, 0.5)]


@given(st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=60))
@settings(max_examples=80, deadline=None)
def test_exceedance_monotone(values):
    probs = [p for _, p in exceedance(values)]
    assert probs[0] == 1.0
    assert all(a >= b for a, b in zip(probs, probs[1:]))


def test_exceedance_slope_on_pareto():
    pts = np.array(exceedance(pareto(1000, 2.5, seed=11)))
    slope = np.polyfit(np.log(pts[:, 0]), np.log(pts[:, 1]), 1)[0]
    assert slope == pytest.approx(-1.5, abs=0.15)


def test_fit_recovers_alpha():
    fit = fit_power_law(pareto(5000, 2.5, seed=1))
    assert 2.4 <= fit.alpha <= 2.6
    assert fit.x_min <= np.quantile(pareto(5000, 2.5, seed=1), 0.5)
    assert fit.n == 5000 and 2 <= fit.n_tail <= 5000
    assert 0 <= fit.ks_stat <= 1


@pytest.mark.parametrize("seed", range(5))
def test_fit_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    x = np.concatenate([rng.uniform(0.2, 1.0, 60), pareto(150, 2.2, seed=seed)])
    fit = fit_power_law(x)
    xmin, a, d, m = brute_fit(x)
    assert fit.x_min == xmin and fit.n_tail == m
    assert fit.alpha == pytest.approx(a, rel=1e-10)
    assert fit.ks_stat == pytest.approx(d, abs=1e-12)


@pytest.mark.parametrize("c", [1e-3, 0.37, 250.0])
def test_scale_equivariance(c):
    x = pareto(800, 2.7, seed=4)
    base, scaled = fit_power_law(x), fit_power_law(c * x)
    assert scaled.alpha == pytest.approx(base.alpha, rel=1e-9)
    assert scaled.x_min == pytest.approx(c * base.x_min, rel=1e-12)
    assert scaled.n_tail == base.n_tail


def test_degenerate_inputs():
    with pytest.raises(InsufficientTailError):
        fit_power_law([1.0, 2.0])
    with pytest.raises(InsufficientTailError):
        fit_power_law([3.0] * 20)
    with pytest.raises(ValueError):
        fit_power_law([0.0] + [1.0] * 20)


def test_alpha_error_shrinks_with_n():
    err = {n: np.mean([abs(fit_power_law(pareto(n, 2.5, seed=100 + s)).alpha - 2.5)
                       for s in range(20)]) for n in (500, 5000)}
    assert err[5000] < err[500]


def test_synthetic_sample_shape():
    x = pareto(300, 2.5, seed=2)
    fit = fit_power_law(x)
    body = np.sort(x[x < fit.x_min])
    s = synthetic_sample(body, fit, np.random.default_rng(0))
    assert s.shape == (300,)
    synthetic_tail = s[s >= fit.x_min]
    assert np.all(np.isin(s[s < fit.x_min], body))
    assert synthetic_tail.size > 0


def test_bootstrap_basics():
    x = pareto(200, 2.5, seed=3)
    fit = fit_power_law(x)
    one = bootstrap_ks(x, fit, reps=1, seed=0)
    assert len(one.p_values) == 1
    out = bootstrap_ks(x, fit, reps=100, seed=5, batch_size=25)
    assert len(out.p_values) == 4
    assert out.p_mean == pytest.approx(np.mean(out.p_values))
    assert all(0 <= p <= 1 for p in out.p_values)
    assert (out.alpha, out.x_min, out.ks_stat) == (fit.alpha, fit.x_min, fit.ks_stat)


def test_bootstrap_deterministic():
    x = pareto(200, 2.5, seed=3)
    fit = fit_power_law(x)
    a = bootstrap_ks(x, fit, reps=60, seed=9, batch_size=10)
    b = bootstrap_ks(x, fit, reps=60, seed=9, batch_size=10)
    c = bootstrap_ks(x, fit, reps=60, seed=10, batch_size=10)
    assert a.p_values == b.p_values
    assert a.p_values != c.p_values


def test_bootstrap_reps_are_independent_streams():
    # rep k uses the same stream whatever the total rep count
    x = pareto(200, 2.5, seed=3)
    fit = fit_power_law(x)
    short = bootstrap_ks(x, fit, reps=20, seed=1, batch_size=1)
    long = bootstrap_ks(x, fit, reps=40, seed=1, batch_size=1)
    assert long.p_values[:20] == short.p_values


def test_bootstrap_accepts_true_power_law():
    x = pareto(400, 2.5, seed=21)
    fit = fit_power_law(x)
    assert bootstrap_ks(x, fit, reps=200, seed=0).p_mean > 0.05
