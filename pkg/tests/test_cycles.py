import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rescycle.cycles import Run, extract_cycles, identify_cycles, segment_runs, tau_filter

from .conftest import series


def runs_from_breakpoints(bps, lop):
    """Re-derive alternating runs from turning points alone."""
    segs = [("down" if lop[b] < lop[a] else "up", a, b) for a, b in zip(bps, bps[1:])]
    keep = [bps[0]]
    for k in range(1, len(segs)):
        if segs[k][0] != segs[k - 1][0]:
            keep.append(segs[k][1])
    keep.append(bps[-1])
    if keep == list(bps):
        return keep, [Run(*s) for s in segs]
    return runs_from_breakpoints(keep, lop)


def brute_tau_filter(lop, tau):
    n = len(lop)
    steps = np.sign(np.diff(lop))
    # raw turning points: direction changes of the step sign, flats ignored
    bps, last = [0], 0
    for j, s in enumerate(steps):
        if s == 0:
            continue
        if last and s != last:
            bps.append(j)
        last = s
    bps.append(n - 1)
    bps, runs = runs_from_breakpoints(bps, lop)
    while len(runs) >= 3:
        short = [k for k, r in enumerate(runs) if r.end - r.start < tau]
        if not short:
            break
        k = min(short, key=lambda i: (runs[i].end - runs[i].start, runs[i].start))
        drop = {runs[k].start, runs[k].end} - {0, n - 1}
        bps, runs = runs_from_breakpoints([b for b in bps if b not in drop], lop)
    return runs


def test_single_v():
    s = series([1, 0.9, 0.8, 0.9, 1.0])
    assert segment_runs(s) == [Run("down", 0, 2), Run("up", 2, 4)]


def test_monotone_increasing():
    assert segment_runs(series([0.1, 0.2, 0.4, 0.5])) == [Run("up", 0, 3)]


def test_plateau_absorbed():
    s = series([1, 0.9, 0.9, 0.8, 1.0])
    assert segment_runs(s) == [Run("down", 0, 3), Run("up", 3, 4)]


def test_leading_plateau_and_constant():
    assert segment_runs(series([0.5, 0.5, 0.4, 0.6])) == [Run("down", 0, 2), Run("up", 2, 3)]
    assert segment_runs(series([0.5, 0.5, 0.5])) == [Run("up", 0, 2)]


def test_blip_absorbed():
    lop = [1.0, 0.95, 0.9, 0.85, 0.87, 0.8, 0.75, 0.7, 0.72, 0.74, 0.76, 0.78]
    s = series(lop)
    out = tau_filter(segment_runs(s), s, 3)
    assert out == [Run("down", 0, 7), Run("up", 7, 11)]


def test_fixpoint_when_all_long():
    s = series([1.0, 0.9, 0.8, 0.7, 0.8, 0.9, 1.0, 0.9, 0.8, 0.7])
    runs = segment_runs(s)
    assert tau_filter(runs, s, 3) == runs


def test_two_short_boundary_runs_are_kept():
    s = series([0.5, 0.4, 0.6])
    assert tau_filter(segment_runs(s), s, 3) == [Run("down", 0, 1), Run("up", 1, 2)]


@pytest.mark.parametrize("seed", range(40))
def test_tau_filter_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    lop = 0.5 + np.cumsum(rng.normal(0, 0.01, 60))
    s = series(lop)
    got = tau_filter(segment_runs(s), s, 3)
    assert got == brute_tau_filter(lop, 3)


@given(arrays(float, st.integers(2, 80), elements=st.sampled_from([0.1, 0.2, 0.3, 0.4, 0.5, 0.6])),
       st.integers(1, 6))
@settings(max_examples=200, deadline=None)
def test_tau_filter_properties(lop, tau):
    s = series(lop)
    raw = segment_runs(s)
    assert raw[0].start == 0 and raw[-1].end == len(lop) - 1
    for a, b in zip(raw, raw[1:]):
        assert a.end == b.start and a.direction != b.direction
    for r in raw:
        seg = lop[r.start:r.end + 1]
        assert np.all(np.diff(seg) <= 0) if r.direction == "down" else np.all(np.diff(seg) >= 0)

    out = tau_filter(raw, s, tau)
    assert out == brute_tau_filter(lop, tau)
    assert out == tau_filter(raw, s, tau)
    for a, b in zip(out, out[1:]):
        assert a.end == b.start and a.direction != b.direction
    if len(out) >= 3:
        assert all(r.duration >= tau for r in out)
    cyc = extract_cycles(out, s)
    for a, b in zip(cyc, cyc[1:]):
        assert a.t_post <= b.t_pre
    for c in cyc:
        assert c.t_pre < c.t_event <= c.t_post
        assert c.p_event <= c.p_pre and c.p_event <= c.p_post


def test_extract_single_cycle():
    s = series([1, 0.9, 0.8, 0.9, 1.0])
    cyc = extract_cycles([Run("down", 0, 2), Run("up", 2, 4)], s)
    assert len(cyc) == 1
    c = cyc[0]
    assert (c.t_pre, c.t_event, c.t_post) == (0, 2, 4)
    assert (c.p_pre, c.p_event, c.p_post) == (1.0, 0.8, 1.0)


def test_no_downturn_no_cycle():
    s = series([0.1, 0.2, 0.3, 0.4])
    assert extract_cycles([Run("up", 0, 3)], s) == []


def test_series_ending_in_decline_is_collapse():
    s = series([0.5, 0.6, 0.7, 0.6, 0.5, 0.4])
    cyc = extract_cycles(segment_runs(s), s)
    assert len(cyc) == 1
    assert cyc[0].t_post == cyc[0].t_event == 5
    assert cyc[0].p_post == cyc[0].p_event


def test_pipeline_is_deterministic():
    rng = np.random.default_rng(3)
    s = series(0.5 + np.cumsum(rng.normal(0, 0.01, 300)))
    assert identify_cycles(s, 3) == identify_cycles(s, 3)
