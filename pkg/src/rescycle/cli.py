"""Command-line entry point: ``rescycle {analyze,fit,sweep,fetch,report}``."""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import json
import logging
import os
import sys

import numpy as np

from . import dynamics, sensitivity
from .config import DEFAULTS, RunConfig
from .errors import ConfigError, DataError
from .ingest import fetch_history, serialize_csv
from .pipeline import load_prices, run_analysis

log = logging.getLogger("rescycle")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

CYCLE_COLUMNS = ["cycle", "t_pre", "t_event", "t_post", "date_pre", "date_event",
                 "date_post", "p_pre", "p_event", "p_post"]
METRIC_COLUMNS = ["cycle", "t_pre", "t_event", "t_post", "p_pre", "p_event", "p_post",
                  "rr_width", "et", "r_m", "r_e", "s_f", "s_r", "r_d", "r_s", "ri",
                  "r1", "r2", "r3", "recovery_type"]
OUTPUT_FILES = ["performance.csv", "cycles.csv", "metrics.csv", "fit.json", "rank_size.csv",
                "exceedance.csv", "sensitivity_rr.csv", "sensitivity_et.csv"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x):
    """Six significant digits, the fixed float format of every output file."""
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".6g")
    return str(x)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _date(series, t):
    return series.dates[t].isoformat() if series.dates else ""


def _cycle_index(analysis):
    ids = {id(c): k for k, c in enumerate(analysis.cycles)}
    return [ids[id(s.cycle)] for s in analysis.scores]


def write_analysis(analysis, out_dir):
    s = analysis.series
    _write_csv(os.path.join(out_dir, "performance.csv"), ["t", "date", "lop"],
               ([t, _date(s, t), float(v)] for t, v in enumerate(s.lop)))
    _write_csv(os.path.join(out_dir, "cycles.csv"), CYCLE_COLUMNS,
               ([k, c.t_pre, c.t_event, c.t_post, _date(s, c.t_pre), _date(s, c.t_event),
                 _date(s, c.t_post), c.p_pre, c.p_event, c.p_post]
                for k, c in enumerate(analysis.cycles)))
    rows = []
    for k, sc in zip(_cycle_index(analysis), analysis.scores):
        c = sc.cycle
        rows.append([k, c.t_pre, c.t_event, c.t_post, c.p_pre, c.p_event, c.p_post,
                     sc.rr_width, sc.et, sc.r_m, sc.r_e, sc.s_f, sc.s_r, sc.r_d, sc.r_s,
                     sc.ri, sc.r1, sc.r2, sc.r3, sc.recovery_type])
    _write_csv(os.path.join(out_dir, "metrics.csv"), METRIC_COLUMNS, rows)


def read_metrics(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _summary(values):
    v = np.asarray(values, dtype=np.float64)
    return (f"n={v.size} mean={fmt(v.mean())} median={fmt(np.median(v))} "
            f"min={fmt(v.min())} max={fmt(v.max())}")


def _setup(args):
    cfg = RunConfig.load(args.config, args.overrides)
    os.makedirs(cfg["out_dir"], exist_ok=True)
    return cfg


def cmd_analyze(args):
    cfg = _setup(args)
    prices = load_prices(cfg)
    if prices.dropped:
        print(f"dropped {prices.dropped} rows with missing close")
    analysis = run_analysis(prices, cfg)
    write_analysis(analysis, cfg["out_dir"])
    print(f"{prices.symbol}: {len(prices)} observations, {len(analysis.cycles)} cycles, "
          f"{len(analysis.scores)} scored")
    if not analysis.scores:
        print("warning: no resilience cycles found", file=sys.stderr)
        return EXIT_OK
    print("RI " + _summary([s.ri for s in analysis.scores]))
    print(f"mean R2 {fmt(float(np.mean([s.r2 for s in analysis.scores])))}")
    return EXIT_OK


def cmd_fit(args):
    cfg = _setup(args)
    out = cfg["out_dir"]
    path = os.path.join(out, "metrics.csv")
    if not os.path.exists(path):
        raise DataError(f"{path} not found; run 'analyze' first")
    ri = np.array([float(r["ri"]) for r in read_metrics(path)])
    values = ri[ri > 0]
    fit = dynamics.fit_power_law(values)
    fit = dynamics.bootstrap_ks(values, fit, reps=cfg["dynamics.reps"],
                                seed=cfg["dynamics.seed"], batch_size=cfg["dynamics.batch_size"])
    doc = {
        "alpha": fit.alpha, "x_min": fit.x_min, "n_tail": fit.n_tail, "n": fit.n,
        "ks_stat": fit.ks_stat, "p_values": list(fit.p_values), "p_mean": fit.p_mean,
        "reps": cfg["dynamics.reps"], "seed": cfg["dynamics.seed"],
        "batch_size": cfg["dynamics.batch_size"], "n_zero_excluded": int(ri.size - values.size),
    }
    doc = {k: (float(fmt(v)) if isinstance(v, float) else
               [float(fmt(p)) for p in v] if isinstance(v, list) else v)
           for k, v in doc.items()}
    with open(os.path.join(out, "fit.json"), "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _write_csv(os.path.join(out, "rank_size.csv"), ["rank", "value"], dynamics.rank_size(values))
    _write_csv(os.path.join(out, "exceedance.csv"), ["value", "prob"], dynamics.exceedance(values))
    verdict = "rejected" if fit.p_mean < 0.05 else "not rejected"
    print(f"power-law tail: alpha={fmt(fit.alpha)} x_min={fmt(fit.x_min)} "
          f"n_tail={fit.n_tail}/{fit.n} ks={fmt(fit.ks_stat)}")
    print(f"bootstrap p_mean={fmt(fit.p_mean)} over {cfg['dynamics.reps']} reps ({verdict} at 0.05)")
    return EXIT_OK


def _sweep_rows(result):
    rows = [[g] + list(r) for g, r in zip(result.grid, result.scores)]
    if result.micro is not None:
        rows += [[g] + list(r) for g, r in zip(result.micro.grid, result.micro.scores)]
    return rows


def cmd_sweep(args):
    cfg = _setup(args)
    analysis = run_analysis(load_prices(cfg), cfg)
    tol = cfg.tolerance()
    rr = sensitivity.sweep_rr(analysis.cycles, analysis.series, tol,
                              cfg["sweep.rr_lo"], cfg["sweep.rr_hi"], cfg["sweep.rr_step"])
    micro = None
    if cfg["sweep.et_micro"]:
        micro = (cfg["sweep.et_micro_lo"], cfg["sweep.et_micro_hi"], cfg["sweep.et_micro_step"])
    et = sensitivity.sweep_et(analysis.cycles, analysis.series, tol, cfg["sweep.et_lo"],
                              cfg["sweep.et_hi"], cfg["sweep.et_step"], micro=micro)
    cols = [f"c{k}_t{sc.cycle.t_event}" for k, sc in zip(_cycle_index(analysis), analysis.scores)]
    out = cfg["out_dir"]
    _write_csv(os.path.join(out, "sensitivity_rr.csv"), ["p_rr"] + cols, _sweep_rows(rr))
    _write_csv(os.path.join(out, "sensitivity_et.csv"), ["p_et"] + cols, _sweep_rows(et))
    n_et = len(et.grid) + (len(et.micro.grid) if et.micro is not None else 0)
    print(f"RR sweep: {len(rr.grid)} values x {len(cols)} cycles; "
          f"ET sweep: {n_et} values x {len(cols)} cycles")
    return EXIT_OK


def cmd_fetch(args):
    cfg = _setup(args)
    try:
        start = dt.date.fromisoformat(cfg["fetch.start"])
        end = dt.date.fromisoformat(cfg["fetch.end"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    prices = fetch_history(cfg["symbol"], start, end, url_template=cfg["fetch.url_template"],
                           tau_days=cfg["cycles.tau_days"])
    name = "".join(ch if ch.isalnum() else "_" for ch in cfg["symbol"]).strip("_") or "series"
    path = os.path.join(cfg["out_dir"], f"{name}.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_csv(prices))
    print(f"wrote {len(prices)} observations to {path}")
    return EXIT_OK


def build_report(out_dir):
    lines = [f"rescycle report for {os.path.abspath(out_dir)}", ""]
    found = [f for f in OUTPUT_FILES if os.path.exists(os.path.join(out_dir, f))]
    if not found:
        raise DataError(f"no output files in {out_dir}")
    lines.append("files: " + ", ".join(found))
    path = os.path.join(out_dir, "metrics.csv")
    if os.path.exists(path):
        rows = read_metrics(path)
        lines += ["", f"[metrics.csv] {len(rows)} scored cycles"]
        if rows:
            for key in ("ri", "r1", "r2", "r3"):
                lines.append(f"  {key.upper():<3} " + _summary([float(r[key]) for r in rows]))
            kinds = {}
            for r in rows:
                kinds[r["recovery_type"]] = kinds.get(r["recovery_type"], 0) + 1
            lines.append("  recovery types: " + ", ".join(f"{k}={v}" for k, v in sorted(kinds.items())))
    path = os.path.join(out_dir, "fit.json")
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            fit = json.load(fh)
        lines += ["", "[fit.json]"]
        lines += [f"  {k} = {fit[k]}" for k in ("alpha", "x_min", "n_tail", "n", "ks_stat", "p_mean", "reps")]
    for name in ("sensitivity_rr.csv", "sensitivity_et.csv"):
        path = os.path.join(out_dir, name)
        if os.path.exists(path):
            with open(path, newline="", encoding="utf-8") as fh:
                table = list(csv.reader(fh))
            vals = np.array([[float(v) for v in row[1:]] for row in table[1:]])
            lines += ["", f"[{name}] {len(table) - 1} rows x {len(table[0]) - 1} cycles"]
            if vals.size:
                spread = vals.max(axis=0) - vals.min(axis=0)
                k = int(np.argmax(spread))
                lines.append(f"  largest RI range: {table[0][k + 1]} ({fmt(float(spread[k]))})")
    return "\n".join(lines) + "\n"


def cmd_report(args):
    cfg = _setup(args)
    text = build_report(cfg["out_dir"])
    with open(os.path.join(cfg["out_dir"], "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    print(text, end="")
    return EXIT_OK


COMMANDS = {
    "analyze": (cmd_analyze, "segment and score resilience cycles"),
    "fit": (cmd_fit, "power-law tail fit with bootstrap K-S test"),
    "sweep": (cmd_sweep, "RI sensitivity to p_rr and p_et"),
    "fetch": (cmd_fetch, "download and cache a daily history"),
    "report": (cmd_report, "summarise emitted files"),
}


def build_parser():
    parser = _Parser(prog="rescycle", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--input", dest="input", help="input CSV (default: bundled NASDAQ)")
        p.add_argument("--out-dir", dest="out_dir", help="output directory")
        for key in DEFAULTS:
            if key not in ("input", "out_dir"):
                p.add_argument(f"--{key}", dest=key, metavar="VALUE")
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        args.overrides = {k: getattr(args, k, None) for k in DEFAULTS}
        return COMMANDS[args.command][0](args)
    except (UsageError, ConfigError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
