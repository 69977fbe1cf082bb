"""Flat ``key = value`` run configuration with built-in defaults."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError
from .ingest import DEFAULT_URL_TEMPLATE
from .metrics import ToleranceConfig

DEFAULTS = {
    "input": "",
    "out_dir": "out",
    "symbol": "^IXIC",
    "fetch.url_template": DEFAULT_URL_TEMPLATE,
    "fetch.start": "2013-09-16",
    "fetch.end": "2018-04-16",
    "preprocess.normalize": True,
    "preprocess.smooth": True,
    "preprocess.span_days": 4,
    "cycles.tau_days": 3,
    "metric.p_rr": 0.0001,
    "metric.p_et": 0.8,
    "metric.restab_denominator": "eq4",
    "dynamics.reps": 1000,
    "dynamics.seed": 42,
    "dynamics.batch_size": 50,
    "sweep.rr_lo": 0.0001,
    "sweep.rr_hi": 0.002,
    "sweep.rr_step": 0.0001,
    "sweep.et_lo": 0.0,
    "sweep.et_hi": 1.0,
    "sweep.et_step": 0.01,
    "sweep.et_micro": True,
    "sweep.et_micro_lo": 0.99,
    "sweep.et_micro_hi": 1.0,
    "sweep.et_micro_step": 0.001,
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def coerce(key, raw):
    """Convert a string to the type of ``key``'s default."""
    if key not in DEFAULTS:
        raise ConfigError(f"unknown config key {key!r}")
    if not isinstance(raw, str):
        return raw
    kind = type(DEFAULTS[key])
    raw = raw.strip()
    try:
        if kind is bool:
            low = raw.lower()
            if low in _TRUE:
                return True
            if low in _FALSE:
                return False
            raise ValueError(raw)
        return kind(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot read {raw!r} as {kind.__name__}") from None


def parse_config_text(text):
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        values[key] = coerce(key, raw)
    return values


@dataclass
class RunConfig:
    values: dict = field(default_factory=lambda: dict(DEFAULTS))

    @classmethod
    def load(cls, path=None, overrides=None):
        """Defaults, then the config file, then ``overrides`` (flags win)."""
        values = dict(DEFAULTS)
        if path:
            try:
                with open(path, encoding="utf-8") as fh:
                    values.update(parse_config_text(fh.read()))
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from None
        for key, raw in (overrides or {}).items():
            if raw is not None:
                values[key] = coerce(key, raw)
        return cls(values)

    def __getitem__(self, key):
        return self.values[key]

    def tolerance(self):
        return ToleranceConfig(
            p_rr=self["metric.p_rr"],
            p_et=self["metric.p_et"],
            restab_denominator=self["metric.restab_denominator"],
        )
