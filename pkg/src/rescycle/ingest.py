"""Daily price history ingestion.

Only the ``Date`` and ``Close`` columns of a Yahoo-style OHLCV export are
read. Rows whose close is missing (``null``, empty, ``NaN``) are dropped and
counted; anything else that fails to parse is an error with its line number.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
import math
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from typing import Callable

from .errors import FetchError, FormatError, InsufficientDataError, RowError

log = logging.getLogger(__name__)

DEFAULT_URL_TEMPLATE = (
    "https://query1.finance.yahoo.com/v7/finance/download/{symbol}"
    "?period1={start_epoch}&period2={end_epoch}&interval=1d&events=history"
)

_MISSING = {"", "null", "nan", "na", "n/a", "none"}

Transport = Callable[[str], "tuple[int, bytes]"]


@dataclass(frozen=True)
class PriceSeries:
    """Closing values of one instrument, one per trading day.

    ``dropped`` is the number of input rows discarded for a missing close.
    """

    symbol: str
    dates: tuple[dt.date, ...]
    closes: tuple[float, ...]
    dropped: int = 0

    def __post_init__(self):
        if len(self.dates) != len(self.closes):
            raise ValueError("dates and closes differ in length")
        for a, b in zip(self.dates, self.dates[1:]):
            if not a < b:
                raise ValueError(f"dates not strictly increasing at {b}")
        for c in self.closes:
            if not (math.isfinite(c) and c > 0):
                raise ValueError(f"close value {c!r} is not positive and finite")

    def __len__(self):
        return len(self.closes)

    @property
    def observations(self):
        return list(zip(self.dates, self.closes))


def _text_of(raw):
    if isinstance(raw, str):
        return raw
    if isinstance(raw, (bytes, bytearray)):
        return bytes(raw).decode("utf-8-sig")
    data = raw.read()
    return data if isinstance(data, str) else data.decode("utf-8-sig")


def parse_csv(raw, symbol, tau_days=1):
    """Parse a daily-history CSV into a :class:`PriceSeries`.

    Parameters
    ----------
    raw : bytes, str or file-like
        UTF-8 CSV text with a header row containing ``Date`` and ``Close``.
    symbol : str
        Identifier stored on the result.
    tau_days : int
        Cycle filter length; at least ``2 * tau_days`` valid rows are required.

    Raises
    ------
    FormatError
        Header lacks ``Date`` or ``Close``.
    RowError
        Unparseable date, non-numeric or non-positive close, duplicate date.
    InsufficientDataError
        Fewer than ``2 * tau_days`` valid rows.
    """
    reader = csv.reader(io.StringIO(_text_of(raw)))
    header = next(reader, None)
    if header is None:
        raise FormatError("empty input")
    names = [h.strip() for h in header]
    try:
        i_date = names.index("Date")
        i_close = names.index("Close")
    except ValueError:
        raise FormatError(f"header must contain Date and Close, got {names}") from None

    rows = []
    dropped = 0
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) <= max(i_date, i_close):
            raise RowError(lineno, f"expected at least {max(i_date, i_close) + 1} fields")
        try:
            day = dt.date.fromisoformat(rec[i_date].strip())
        except ValueError:
            raise RowError(lineno, f"bad date {rec[i_date]!r}") from None
        field = rec[i_close].strip()
        if field.lower() in _MISSING:
            dropped += 1
            continue
        try:
            close = float(field)
        except ValueError:
            raise RowError(lineno, f"bad close {field!r}") from None
        if not (math.isfinite(close) and close > 0):
            raise RowError(lineno, f"close must be positive, got {field!r}")
        rows.append((day, close, lineno))

    rows.sort(key=lambda r: r[0])
    for prev, cur in zip(rows, rows[1:]):
        if prev[0] == cur[0]:
            raise RowError(cur[2], f"duplicate date {cur[0].isoformat()}")

    need = 2 * tau_days
    if len(rows) < need:
        raise InsufficientDataError(f"{len(rows)} valid rows, need at least {need}")
    if dropped:
        log.info("%s: dropped %d rows with missing close", symbol, dropped)
    return PriceSeries(
        symbol=symbol,
        dates=tuple(r[0] for r in rows),
        closes=tuple(r[1] for r in rows),
        dropped=dropped,
    )


def serialize_csv(series):
    """Canonical two-column ``Date,Close`` text; ``parse_csv`` inverts it exactly."""
    lines = ["Date,Close"]
    lines += [f"{d.isoformat()},{c!r}" for d, c in zip(series.dates, series.closes)]
    return "\n".join(lines) + "\n"


def urllib_transport(url, timeout=30.0):
    """Default transport: plain HTTP GET returning ``(status, body)``."""
    req = urllib.request.Request(url, headers={"User-Agent": "rescycle/0.1"})
    try:
        with urllib.request.urlopen(req, timeout=timeout) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read() or b""


def _epoch(day):
    return int(dt.datetime(day.year, day.month, day.day, tzinfo=dt.timezone.utc).timestamp())


def history_url(symbol, start, end, url_template=DEFAULT_URL_TEMPLATE):
    """Resource URL for ``[start, end]``; the end day is included."""
    return url_template.format(
        symbol=urllib.parse.quote(symbol, safe=""),
        start_epoch=_epoch(start),
        end_epoch=_epoch(end) + 86400,
    )


def fetch_history(symbol, start, end, transport: Transport = urllib_transport,
                  url_template=DEFAULT_URL_TEMPLATE, tau_days=1):
    """Download a daily history with one GET and parse it.

    ``transport`` is any callable ``url -> (status, body_bytes)``.
    """
    if not start < end:
        raise ValueError("start must precede end")
    url = history_url(symbol, start, end, url_template)
    status, body = transport(url)
    if not 200 <= status < 300:
        raise FetchError(status, url)
    return parse_csv(body, symbol, tau_days=tau_days)
