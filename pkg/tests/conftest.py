import numpy as np
import pytest

from rescycle.cycles import ResilienceCycle
from rescycle.metrics import ToleranceConfig
from rescycle.preprocess import PerformanceSeries

HEADER = "Date,Open,High,Low,Close,Adj Close,Volume"


def make_csv(closes, start="2020-01-01", header=HEADER):
    import datetime as dt

    day = dt.date.fromisoformat(start)
    lines = [header]
    for k, c in enumerate(closes):
        d = day + dt.timedelta(days=k)
        lines.append(f"{d.isoformat()},1,1,1,{c},{c},100")
    return ("\n".join(lines) + "\n").encode()


def series(values, symbol="T"):
    return PerformanceSeries(symbol, np.asarray(values, dtype=float))


@pytest.fixture
def appendix_series():
    # worked example: pre 0.4 at day 1, trough 0.1 at day 2, back to 0.4 at day 5
    return series([0.3, 0.4, 0.1, 0.2, 0.3, 0.4])


@pytest.fixture
def appendix_cycle():
    return ResilienceCycle(t_pre=1, t_event=2, t_post=5, p_pre=0.4, p_event=0.1, p_post=0.4)


@pytest.fixture
def appendix_cfg():
    return ToleranceConfig(p_rr=0.01, p_et=0.5, restab_denominator="appendix")
