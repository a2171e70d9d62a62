"""Command-line front end.

Subcommands::

    spectrum      closed-form energies with status for a range of states
    tables        recompute the embedded golden tables and report diffs
    wavefunction  sample normalized R(r) for a range of states
    oracle        finite-difference levels against the closed form
    figures       emit figure data (fig1 .. fig6) as CSV

Flags override values read with ``--config``. The config file is INI
style; every flag has a key of the same name (dashes become underscores)
in one of the sections ``[potential]``, ``[state]``, ``[scheme]``,
``[output]`` or ``[oracle]``. For example::

    [potential]
    v0 = 5
    v1 = 2
    alpha = 0.025
    q = 1

    [state]
    n = 0-3
    l = 1,2

Exit codes: 0 success, 1 usage error, 2 table conformance below 95%,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import golden
from .core import NATURAL, PhysicalConstants, PotentialParams, StateIndex
from .errors import GoldenDataError, ParameterError, ShiftedHulthenError
from .oracle import CentrifugalMode, RadialGrid, default_grid, run_oracle
from .potentials import (
    ApproximationScheme,
    PotentialKind,
    SchemeTag,
    eval_centrifugal_approx,
    eval_potential,
    inverse_square,
)
from .spectrum import energy
from .wavefunction import build_wavefunction, eval_radial

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFORMANCE = 2
EXIT_NUMERICAL = 3

TABLE_TOL = 1e-6
PASS_BAR = 0.95
FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")
FIGURE_R = (0.01, 200.0, 2000)
FIGURE_Q = (-2.0, 1.0, 2.0)
FIGURE_ALPHAS = (0.025, 0.05, 0.075)

SECTIONS = {
    "potential": ("v0", "v1", "b", "alpha", "q"),
    "state": ("n", "l", "d"),
    "scheme": ("scheme", "c0", "eq4_reading"),
    "output": ("format", "out", "workers"),
    "oracle": ("grid_points", "r_max", "mode", "levels"),
}
DEFAULTS = {
    "v0": 5.0,
    "v1": 2.0,
    "alpha": 0.025,
    "q": 1.0,
    "n": "0",
    "l": "0",
    "d": "3",
    "c0": 1.0 / 12.0,
    "eq4_reading": "printed",
    "format": "csv",
    "workers": 1,
    "mode": "approximated",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int_list(text) -> list:
    """'0-3' -> [0, 1, 2, 3]; '0,2,5' -> [0, 2, 5]; mixtures allowed."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1) if not part.startswith("-") else (None, None)
            if lo is None:
                raise UsageError(f"bad range {part!r}")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def fmt(x) -> str:
    """17 significant digits, or the empty string for a missing value."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.16e}"


def write_csv(path: Optional[str], header, rows, stream=None):
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    _emit(path, text, stream)


def write_json(path: Optional[str], payload, stream=None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(path, text, stream)


def _emit(path, text, stream):
    if path is None:
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


@dataclass
class RunConfig:
    command: str
    params: PotentialParams
    ns: list
    ls: list
    ds: list
    schemes: tuple
    fmt: str = "csv"
    out: Optional[str] = None
    eq4_reading: str = "printed"
    c0: float = 1.0 / 12.0
    grid_points: Optional[int] = None
    r_max: Optional[float] = None
    workers: int = 1
    mode: str = "approximated"
    levels: Optional[int] = None
    tables: tuple = golden.TABLE_IDS
    figures: tuple = FIGURE_IDS
    strict: bool = False
    constants: PhysicalConstants = field(default=NATURAL)


def _load_config(path: str) -> dict:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    values = {}
    for section in parser.sections():
        known = SECTIONS.get(section)
        if known is None:
            raise UsageError(f"unknown config section [{section}]")
        for key, val in parser.items(section):
            key = key.replace("-", "_")
            if key not in known:
                raise UsageError(f"unknown key {key!r} in [{section}]")
            values[key] = val
    return values


def _merge(args) -> dict:
    values = dict(DEFAULTS)
    if args.config:
        cfg = _load_config(args.config)
        if "b" in cfg and "alpha" not in cfg:
            values.pop("alpha")
        values.update(cfg)
    flags = {k: v for k, v in vars(args).items() if v is not None}
    if "b" in flags and "alpha" not in flags:
        values.pop("alpha", None)
    if "alpha" in flags and "b" not in flags:
        values.pop("b", None)
    values.update(flags)
    return values


def build_config(args) -> RunConfig:
    v = _merge(args)
    try:
        params = PotentialParams(
            v0=float(v["v0"]),
            v1=float(v["v1"]),
            b=float(v["b"]) if v.get("b") is not None else None,
            alpha=float(v["alpha"]) if v.get("alpha") is not None else None,
            q=float(v["q"]),
        )
        c0 = float(v["c0"])
        eq4 = str(v["eq4_reading"])
        if eq4 not in ("printed", "corrected"):
            raise UsageError(f"bad eq4-reading {eq4!r}")
        if v.get("scheme") is not None:
            tags = (int(v["scheme"]),)
        else:
            tags = (1, 2, 3)
        schemes = tuple(ApproximationScheme(SchemeTag(t), c0, eq4) for t in tags)
        fmt_ = str(v["format"])
        if fmt_ not in ("csv", "json"):
            raise UsageError(f"bad format {fmt_!r}")
        ns, ls, ds = parse_int_list(v["n"]), parse_int_list(v["l"]), parse_int_list(v["d"])
        for n in ns:
            for l in ls:
                for d in ds:
                    StateIndex(n, l, d)
        workers = int(v["workers"])
        if workers < 1:
            raise UsageError("workers must be >= 1")
        mode = str(v["mode"])
        if mode not in ("exact", "approximated"):
            raise UsageError(f"bad mode {mode!r}")
    except (ValueError, ParameterError) as exc:
        raise UsageError(str(exc)) from exc
    cfg = RunConfig(
        command=args.command,
        params=params,
        ns=ns,
        ls=ls,
        ds=ds,
        schemes=schemes,
        fmt=fmt_,
        out=v.get("out"),
        eq4_reading=eq4,
        c0=c0,
        grid_points=int(v["grid_points"]) if v.get("grid_points") is not None else None,
        r_max=float(v["r_max"]) if v.get("r_max") is not None else None,
        workers=workers,
        mode=mode,
        levels=int(v["levels"]) if v.get("levels") is not None else None,
        strict=bool(getattr(args, "strict", False)),
    )
    if getattr(args, "table", None):
        cfg.tables = tuple(args.table)
    if getattr(args, "figure", None):
        cfg.figures = tuple(args.figure)
    _check_output(cfg)
    return cfg


def _check_output(cfg: RunConfig):
    if cfg.out is None:
        return
    if cfg.command in ("tables", "figures"):
        target = cfg.out
        os.makedirs(target, exist_ok=True)
    else:
        target = os.path.dirname(os.path.abspath(cfg.out))
    if not os.access(target, os.W_OK):
        raise UsageError(f"output location {target!r} is not writable")


# spectrum


SPECTRUM_HEADER = ("n", "l", "d", "q", "alpha", "scheme", "status", "energy", "eps_n", "detail")


def run_spectrum(cfg: RunConfig):
    rows = []
    for n in cfg.ns:
        for l in cfg.ls:
            for d in cfg.ds:
                for sch in cfg.schemes:
                    res = energy(cfg.params, cfg.constants, StateIndex(n, l, d), sch)
                    rows.append(
                        (n, l, d, cfg.params.q, cfg.params.alpha, sch.label, res.status.tag.value,
                         res.energy, res.eps_n, res.status.detail)
                    )
    _write_rows(cfg, SPECTRUM_HEADER, rows)
    return EXIT_OK


def _write_rows(cfg, header, rows, path=None):
    path = path if path is not None else cfg.out
    if cfg.fmt == "json":
        write_json(path, [dict(zip(header, r)) for r in rows])
    else:
        write_csv(path, header, rows)


# tables


TABLE_HEADER = ("table", "n", "l", "alpha", "q", "scheme", "golden", "computed", "abs_diff", "pass")


@dataclass(frozen=True)
class TableReport:
    rows: tuple
    passed: int
    failed: int
    max_diff: float

    @property
    def pass_rate(self) -> float:
        total = self.passed + self.failed
        return self.passed / total if total else 0.0


def compute_table(table: int, c0: float = 1.0 / 12.0, eq4_reading: str = "printed") -> TableReport:
    """Recompute every golden cell of one table; rows sorted by (n, l, alpha/q, scheme)."""
    cells = sorted(golden.load_table(table), key=lambda c: (c.n, c.l, c.alpha, c.q, c.scheme))
    rows = []
    passed = failed = 0
    max_diff = 0.0
    fixed = golden.FIXED[table]
    for cell in cells:
        p = PotentialParams(v0=fixed["v0"], v1=fixed["v1"], alpha=cell.alpha, q=cell.q)
        sch = ApproximationScheme(SchemeTag(cell.scheme), c0, eq4_reading)
        res = energy(p, NATURAL, StateIndex(cell.n, cell.l, 3), sch)
        if res.energy is None:
            diff, ok = None, False
        else:
            diff = abs(res.energy - cell.value)
            ok = diff <= TABLE_TOL
            max_diff = max(max_diff, diff)
        passed += ok
        failed += not ok
        rows.append((table, cell.n, cell.l, cell.alpha, cell.q, sch.label, cell.text,
                     res.energy, diff, "pass" if ok else "fail"))
    return TableReport(tuple(rows), passed, failed, max_diff)


def _table_job(args):
    table, c0, eq4 = args
    return compute_table(table, c0, eq4)


def _parallel_map(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def run_tables(cfg: RunConfig):
    jobs = [(t, cfg.c0, cfg.eq4_reading) for t in cfg.tables]
    reports = _parallel_map(_table_job, jobs, cfg.workers)
    rows = [r for rep in reports for r in rep.rows]
    summary = []
    for t, rep in zip(cfg.tables, reports):
        summary.append((t, rep.passed, rep.failed, rep.max_diff, rep.pass_rate))
    if cfg.out is None:
        _write_rows(cfg, TABLE_HEADER, rows)
    else:
        ext = cfg.fmt
        _write_rows(cfg, TABLE_HEADER, rows, os.path.join(cfg.out, f"tables_report.{ext}"))
        _write_rows(
            cfg,
            ("table", "passed", "failed", "max_diff", "pass_rate"),
            summary,
            os.path.join(cfg.out, f"tables_summary.{ext}"),
        )
    for t, passed, failed, max_diff, rate in summary:
        print(f"table{t}: {passed}/{passed + failed} cells within {TABLE_TOL:g} "
              f"(max diff {max_diff:.3g})", file=sys.stderr)
    if any(rate < PASS_BAR for *_, rate in summary):
        return EXIT_CONFORMANCE
    return EXIT_OK


# figures


def figure_grid() -> np.ndarray:
    lo, hi, n = FIGURE_R
    return np.linspace(lo, hi, n)


def _wave_column(p: PotentialParams, n: int, r: np.ndarray) -> np.ndarray:
    w = build_wavefunction(p, NATURAL, StateIndex(n, 0, 3), strict=False)
    out = np.zeros_like(r)
    inside = r > w.r_lower
    out[inside] = eval_radial(w, r[inside])
    return out


def figure_data(fig: str, c0: float = 1.0 / 12.0, eq4_reading: str = "printed"):
    """Header and columns of one figure; every column shares the figure grid."""
    r = figure_grid()
    if fig == "fig1":
        p = PotentialParams(v0=5.0, v1=2.0, alpha=0.025, q=1.0)
        cols = [inverse_square(r)]
        for tag in SchemeTag:
            cols.append(eval_centrifugal_approx(ApproximationScheme(tag, c0, eq4_reading), p, r))
        return ("r", "inverse_r2", "approx1", "approx2", "approx3"), [r] + cols
    if fig == "fig2":
        p = PotentialParams(v0=5.0, v1=2.0, alpha=0.025, q=1.0)
        kinds = (PotentialKind.SHIFTED_HULTHEN, PotentialKind.SPECIAL_HULTHEN, PotentialKind.HULTHEN)
        return ("r", "shifted_hulthen", "special_hulthen", "hulthen"), [r] + [
            eval_potential(k, p, r) for k in kinds
        ]
    if fig in ("fig3", "fig4"):
        n = 0 if fig == "fig3" else 1
        cols = [_wave_column(PotentialParams(5.0, 2.0, alpha=a, q=1.0), n, r) for a in FIGURE_ALPHAS]
        return ("r",) + tuple(f"alpha_{a:g}" for a in FIGURE_ALPHAS), [r] + cols
    if fig in ("fig5", "fig6"):
        n = 0 if fig == "fig5" else 1
        cols = [_wave_column(PotentialParams(5.0, 2.0, alpha=0.025, q=q), n, r) for q in FIGURE_Q]
        return ("r",) + tuple(f"q_{q:g}" for q in FIGURE_Q), [r] + cols
    raise UsageError(f"unknown figure {fig!r}")


def _figure_job(args):
    fig, c0, eq4 = args
    header, cols = figure_data(fig, c0, eq4)
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*cols):
        writer.writerow([fmt(float(v)) for v in row])
    return buf.getvalue()


def run_figures(cfg: RunConfig):
    jobs = [(f, cfg.c0, cfg.eq4_reading) for f in cfg.figures]
    texts = _parallel_map(_figure_job, jobs, cfg.workers)
    out_dir = cfg.out if cfg.out is not None else "figures"
    os.makedirs(out_dir, exist_ok=True)
    for fig, text in zip(cfg.figures, texts):
        _emit(os.path.join(out_dir, f"{fig}.csv"), text, None)
    return EXIT_OK


# wavefunction


def run_wavefunction(cfg: RunConfig):
    lo, hi, npts = FIGURE_R
    if cfg.r_max is not None:
        hi = cfg.r_max
    if cfg.grid_points is not None:
        npts = cfg.grid_points
    r = np.linspace(lo, hi, npts)
    header = ["r"]
    cols = [r]
    for n in cfg.ns:
        for l in cfg.ls:
            for d in cfg.ds:
                for sch in cfg.schemes:
                    s = StateIndex(n, l, d)
                    w = build_wavefunction(cfg.params, cfg.constants, s, sch, strict=cfg.strict)
                    col = np.zeros_like(r)
                    inside = r > w.r_lower
                    col[inside] = eval_radial(w, r[inside])
                    tag = "formal" if w.formal else "bound"
                    header.append(f"n{n}_l{l}_d{d}_{sch.label}_{tag}")
                    cols.append(col)
    rows = list(zip(*cols))
    _write_rows(cfg, tuple(header), rows)
    return EXIT_OK


# oracle


ORACLE_HEADER = ("n", "l", "d", "mode", "closed_form", "status", "analytic", "oracle",
                 "abs_error", "rel_error", "convergence_delta")


def run_oracle_cmd(cfg: RunConfig):
    rows = []
    levels = cfg.levels if cfg.levels is not None else max(cfg.ns) + 1
    for l in cfg.ls:
        for d in cfg.ds:
            for sch in cfg.schemes:
                mode = CentrifugalMode(sch) if cfg.mode == "approximated" else CentrifugalMode()
                top = StateIndex(levels - 1, l, d)
                grid = None
                if cfg.grid_points is not None or cfg.r_max is not None:
                    base = default_grid(cfg.params, cfg.constants, top, mode)
                    grid = RadialGrid(
                        base.r_min,
                        cfg.r_max if cfg.r_max is not None else base.r_max,
                        cfg.grid_points if cfg.grid_points is not None else base.n_points,
                    )
                rep = run_oracle(cfg.params, cfg.constants, l, d, mode, levels, grid, sch)
                for row, delta in zip(rep.comparison, rep.convergence_delta):
                    rows.append((row.n, l, d, mode.label, sch.label, row.status, row.analytic,
                                 row.oracle, row.abs_error, row.rel_error, delta))
    _write_rows(cfg, ORACLE_HEADER, rows)
    return EXIT_OK


COMMANDS = {
    "spectrum": run_spectrum,
    "tables": run_tables,
    "wavefunction": run_wavefunction,
    "oracle": run_oracle_cmd,
    "figures": run_figures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("potential")
    g.add_argument("--v0", type=float)
    g.add_argument("--v1", type=float)
    g.add_argument("--b", type=float, help="range b (alternative to --alpha)")
    g.add_argument("--alpha", type=float, help="screening parameter 1/b")
    g.add_argument("--q", type=float, help="deformation parameter (nonzero)")
    g = common.add_argument_group("states")
    g.add_argument("--n", help="radial quantum numbers, e.g. 0-3 or 0,2")
    g.add_argument("--l", help="orbital quantum numbers")
    g.add_argument("--d", help="spatial dimensions")
    g = common.add_argument_group("scheme")
    g.add_argument("--scheme", type=int, choices=(1, 2, 3), help="default: all three")
    g.add_argument("--c0", type=float, help="scheme-3 constant (default 1/12)")
    g.add_argument("--eq4-reading", dest="eq4_reading", choices=("printed", "corrected"))
    g = common.add_argument_group("output")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--out", help="output file (directory for tables/figures)")
    g.add_argument("--config", help="INI-style config file; flags override it")
    g.add_argument("--workers", type=int, help="parallel worker processes")
    g = common.add_argument_group("oracle")
    g.add_argument("--grid-points", dest="grid_points", type=int)
    g.add_argument("--r-max", dest="r_max", type=float)

    parser = _Parser(prog="shifted-hulthen", description="Bound states of the shifted Hulthen family.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="closed-form energies")
    tp = sub.add_parser("tables", parents=[common], help="golden table conformance")
    tp.add_argument("--table", type=int, action="append", choices=golden.TABLE_IDS)
    wp = sub.add_parser("wavefunction", parents=[common], help="sample R(r)")
    wp.add_argument("--strict", action="store_true", help="fail on states that are not bound")
    op = sub.add_parser("oracle", parents=[common], help="finite-difference cross-check")
    op.add_argument("--mode", choices=("exact", "approximated"))
    op.add_argument("--levels", type=int, help="number of levels (default max n + 1)")
    fp = sub.add_parser("figures", parents=[common], help="figure data as CSV")
    fp.add_argument("--figure", action="append", choices=FIGURE_IDS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except UsageError as exc:
        print(f"shifted-hulthen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"shifted-hulthen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GoldenDataError as exc:
        print(f"shifted-hulthen: golden data: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ShiftedHulthenError as exc:
        print(f"shifted-hulthen: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
