"""Batch command-line front end.

Every subcommand walks a grid, emits one report row per grid point (plus a
summary row where a scan has a single verdict), and exits 0 when everything
verified, 2 when any row failed or errored, 1 on usage or IO problems.
Numerical failures never abort a run: they land in the row's ``status``
field as ``error:<ExceptionName>`` and the walk continues.

Report rows share one schema across commands::

    command, params_hash, z, value_or_verdict, abs_err, rel_err, status

serialized as JSON lines (default) or CSV with a header row.  Floats are
written with ``repr``, i.e. shortest round-trip form, so identical inputs
produce byte-identical reports.  ``params_hash`` is the content hash of the
canonicalized parameter JSON, making reports joinable across runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .bounds import (
    cm_check,
    exp_kernel_bounds,
    lifted_kernel_bounds,
    ratio_monotonicity_scan,
    stieltjes_lower_bound,
)
from .catalog import NAMED_SETS
from .errors import FoxwrightError
from .hfun import get_evaluator
from .params import ParameterSet, derive_constants, gamma_ratio
from .representations import (
    laplace_lift_check,
    verify_representation,
    verify_stieltjes,
)
from .series import SeriesStatus, fox_wright

__all__ = ["RunConfig", "main", "run", "parse_grid", "parse_k_list"]

_FIELDS = ("command", "params_hash", "z", "value_or_verdict", "abs_err", "rel_err", "status")

_CM_FUNCTIONS = {
    "exp-decay": lambda x: math.exp(-x),
    "inverse-linear": lambda x: 1.0 / (1.0 + x),
    "linear": lambda x: x,
    "collapse-remainder": lambda x: (math.exp(-2.0 * x) - math.exp(-x / 2.0))
    / math.sqrt(math.pi),
}


class CliUsageError(Exception):
    """Bad flags, unreadable files, malformed grids: exit code 1."""


@dataclass
class RunConfig:
    """Everything one invocation needs, normalized out of argv."""

    command: str
    params_path: str | None = None
    z_spec: str | None = None
    k_spec: str | None = None
    tol: float = 1e-6
    output: str = "json"
    out_path: str | None = None
    sigma: float | None = None
    delta: float | None = None
    lift: float | None = None
    function: str | None = None
    h_step: float = 0.05
    max_order: int = 6


def parse_grid(spec: str) -> list[float]:
    """``start:stop:count`` (inclusive, count >= 1), comma list, or scalar."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise CliUsageError(f"grid must be start:stop:count, got {spec!r}")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise CliUsageError(f"bad grid {spec!r}: {exc}") from None
        if count < 1:
            raise CliUsageError("grid count must be >= 1")
        if count == 1:
            return [start]
        return [float(v) for v in np.linspace(start, stop, count)]
    try:
        return [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliUsageError(f"bad grid {spec!r}: {exc}") from None


def parse_k_list(spec: str) -> list[float]:
    """``lo..hi`` (inclusive integers), comma list, or scalar."""
    spec = spec.strip()
    if ".." in spec:
        lo_s, _, hi_s = spec.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise CliUsageError(f"bad k-range {spec!r}: {exc}") from None
        if hi < lo:
            raise CliUsageError(f"empty k-range {spec!r}")
        return [float(k) for k in range(lo, hi + 1)]
    try:
        return [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliUsageError(f"bad k-list {spec!r}: {exc}") from None


def _load_params(spec: str) -> ParameterSet:
    """Catalog name, or path to a JSON file with upper/lower rows."""
    if spec in NAMED_SETS:
        return NAMED_SETS[spec]
    path = Path(spec)
    if not path.is_file():
        raise CliUsageError(f"parameter file not found: {spec}")
    try:
        return ParameterSet.from_json(path.read_text())
    except Exception as exc:
        raise CliUsageError(f"could not parse parameter file {spec}: {exc}") from None


def _row(command, params_hash, z, value, abs_err, rel_err, status) -> dict:
    return {
        "command": command,
        "params_hash": params_hash,
        "z": z,
        "value_or_verdict": value,
        "abs_err": abs_err,
        "rel_err": rel_err,
        "status": status,
    }


def _guarded(rows: list, command: str, phash: str, z: float, fn) -> None:
    """Append fn()'s row; convert any numerical exception into an error row."""
    try:
        rows.append(fn())
    except FoxwrightError as exc:
        rows.append(_row(command, phash, z, None, None, None, f"error:{type(exc).__name__}"))


# ---------------------------------------------------------------------------
# per-command walkers
# ---------------------------------------------------------------------------


def _cmd_eval(cfg: RunConfig, params: ParameterSet, phash: str) -> list[dict]:
    rows: list[dict] = []
    for z in _grid_or_fail(cfg):

        def one(z=z):
            res = fox_wright(params, z)
            value = complex(res.value).real
            if res.status is SeriesStatus.CONVERGED:
                status = "ok"
            elif res.status is SeriesStatus.OUTSIDE_DOMAIN:
                status = "error:OutsideDomainError"
            else:
                status = "error:NonConvergentError"
            if math.isnan(value):
                value = None
            return _row("eval", phash, z, value, None, None, status)

        _guarded(rows, "eval", phash, z, one)
    return rows


def _cmd_hfun(cfg: RunConfig, params: ParameterSet, phash: str) -> list[dict]:
    ev = get_evaluator(params)
    rows: list[dict] = []
    for t in _grid_or_fail(cfg):

        def one(t=t):
            value = float(ev.density(np.array([t]))[0])
            return _row("hfun", phash, t, value, None, None, "ok")

        _guarded(rows, "hfun", phash, t, one)
    return rows


def _cmd_moments(cfg: RunConfig, params: ParameterSet, phash: str) -> list[dict]:
    if not cfg.k_spec:
        raise CliUsageError("moments needs --k (e.g. --k 0..8)")
    ev = get_evaluator(params)
    rows: list[dict] = []
    for k in parse_k_list(cfg.k_spec):

        def one(k=k):
            lhs = gamma_ratio(params, k)
            rhs = ev.moment(k) + ev.atom_mellin(k)
            abs_err = abs(lhs - rhs)
            rel_err = abs_err / max(1.0, abs(lhs))
            status = "pass" if rel_err <= cfg.tol else "fail"
            return _row("moments", phash, k, lhs, abs_err, rel_err, status)

        _guarded(rows, "moments", phash, k, one)
    return rows


def _identity_rows(cfg: RunConfig, phash: str, command: str, check) -> list[dict]:
    rows: list[dict] = []
    for z in _grid_or_fail(cfg):

        def one(z=z):
            rec = check(z)
            status = "pass" if rec.verdict == "pass" else "fail"
            return _row(command, phash, z, rec.verdict, rec.abs_err, rec.rel_err, status)

        _guarded(rows, command, phash, z, one)
    return rows


def _cmd_bounds(cfg: RunConfig, params: ParameterSet, phash: str) -> list[dict]:
    rows: list[dict] = []
    for z in _grid_or_fail(cfg):

        def one(z=z):
            if cfg.sigma is not None:
                rep = stieltjes_lower_bound(params, cfg.sigma, z)
                ok = rep.bound_ok and rep.mean_power_ok
                return _row(
                    "bounds",
                    phash,
                    z,
                    rep.value,
                    rep.margin,
                    rep.margin / (1.0 + abs(rep.value)),
                    "pass" if ok else "fail",
                )
            if cfg.lift is not None:
                rep = lifted_kernel_bounds(params, cfg.lift, z)
            else:
                rep = exp_kernel_bounds(params, z)
            ok = rep.lower_ok and rep.upper_ok
            return _row(
                "bounds",
                phash,
                z,
                rep.value,
                rep.value - rep.lower,
                rep.upper - rep.value,
                "pass" if ok else "fail",
            )

        _guarded(rows, "bounds", phash, z, one)
    return rows


def _cmd_cm_check(cfg: RunConfig, params: ParameterSet | None, phash: str) -> list[dict]:
    name = cfg.function or "series"
    if name == "series":
        if params is None:
            raise CliUsageError("cm-check --function series needs --params")
        from .series import fox_wright_value

        f = lambda x: complex(fox_wright_value(params, -x)).real  # noqa: E731
    elif name in _CM_FUNCTIONS:
        f = _CM_FUNCTIONS[name]
    else:
        raise CliUsageError(
            f"unknown --function {name!r}; choices: series, " + ", ".join(_CM_FUNCTIONS)
        )
    if cfg.z_spec:
        grid = parse_grid(cfg.z_spec)
    else:
        grid = [float(v) for v in np.logspace(math.log10(0.01), math.log10(10.0), 30)]
    rows: list[dict] = []

    def one():
        rep = cm_check(f, grid, cfg.h_step, cfg.max_order)
        if rep.first_violation is None:
            return _row("cm-check", phash, None, "clean", None, None, "pass")
        order, x = rep.first_violation
        return _row("cm-check", phash, x, f"order-{order}-defect", None, None, "fail")

    _guarded(rows, "cm-check", phash, None, one)
    return rows


def _cmd_ratio_scan(cfg: RunConfig, params: ParameterSet, phash: str) -> list[dict]:
    sigma = 1.0 if cfg.sigma is None else cfg.sigma
    delta = 1.0 if cfg.delta is None else cfg.delta
    if cfg.z_spec:
        grid = parse_grid(cfg.z_spec)
    else:
        grid = [float(v) for v in np.linspace(0.05, 0.95, 17)]
    rows: list[dict] = []

    def scan():
        rep = ratio_monotonicity_scan(params, sigma, delta, grid, tol=cfg.tol)
        out = []
        for z, quad, series in zip(rep.z_grid, rep.values, rep.series_values):
            gap = abs(series - quad) / (1.0 + max(abs(series), abs(quad)))
            out.append(_row("ratio-scan", phash, z, quad, abs(series - quad), gap, "ok"))
        out.append(
            _row(
                "ratio-scan",
                phash,
                None,
                rep.expected,
                rep.max_violation,
                rep.max_route_gap,
                "pass" if rep.ok() else "fail",
            )
        )
        return out

    try:
        rows.extend(scan())
    except FoxwrightError as exc:
        rows.append(
            _row("ratio-scan", phash, None, None, None, None, f"error:{type(exc).__name__}")
        )
    return rows


def _grid_or_fail(cfg: RunConfig) -> list[float]:
    if not cfg.z_spec:
        raise CliUsageError(f"{cfg.command} needs --z (grid start:stop:count or list)")
    return parse_grid(cfg.z_spec)


# ---------------------------------------------------------------------------
# rendering and dispatch
# ---------------------------------------------------------------------------


def _render(rows: list[dict], output: str) -> str:
    if output == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_FIELDS)
    for r in rows:
        writer.writerow(
            ["" if r[f] is None else (repr(r[f]) if isinstance(r[f], float) else str(r[f]))
             for f in _FIELDS]
        )
    return buf.getvalue()


def run(cfg: RunConfig) -> int:
    """Dispatch one configured invocation; returns the exit status."""
    if cfg.tol <= 0:
        raise CliUsageError("tol must be positive")
    if cfg.output not in ("json", "csv"):
        raise CliUsageError(f"unknown output format {cfg.output!r}")

    params = None
    phash = ""
    if cfg.params_path is not None:
        params = _load_params(cfg.params_path)
        phash = params.hash_key()

    if params is None and cfg.command != "cm-check":
        raise CliUsageError(f"{cfg.command} needs --params (catalog name or JSON path)")

    if cfg.command == "eval":
        rows = _cmd_eval(cfg, params, phash)
    elif cfg.command == "hfun":
        rows = _cmd_hfun(cfg, params, phash)
    elif cfg.command == "moments":
        rows = _cmd_moments(cfg, params, phash)
    elif cfg.command == "verify-representation":
        rows = _identity_rows(
            cfg, phash, "verify-representation",
            lambda z: verify_representation(params, z, tol=cfg.tol),
        )
    elif cfg.command == "verify-stieltjes":
        sigma = 1.0 if cfg.sigma is None else cfg.sigma
        rows = _identity_rows(
            cfg, phash, "verify-stieltjes",
            lambda z: verify_stieltjes(params, sigma, z, tol=cfg.tol),
        )
    elif cfg.command == "verify-laplace":
        lam = 1.0 if cfg.lift is None else cfg.lift
        rows = _identity_rows(
            cfg, phash, "verify-laplace",
            lambda z: laplace_lift_check(params, lam, z, tol=cfg.tol),
        )
    elif cfg.command == "bounds":
        rows = _cmd_bounds(cfg, params, phash)
    elif cfg.command == "cm-check":
        rows = _cmd_cm_check(cfg, params, phash)
    elif cfg.command == "ratio-scan":
        rows = _cmd_ratio_scan(cfg, params, phash)
    else:
        raise CliUsageError(f"unknown command {cfg.command!r}")

    text = _render(rows, cfg.output)
    if cfg.out_path:
        Path(cfg.out_path).write_text(text)
    else:
        sys.stdout.write(text)

    ok = all(r["status"] in ("ok", "pass") for r in rows)
    return 0 if ok else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we want 1
        raise CliUsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="foxwright", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, *, grid=True, k=False, sigma=False,
            delta=False, lift=False, cm=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--params", help="catalog name or JSON file with upper/lower rows")
        if grid:
            p.add_argument("--z", help="grid: start:stop:count, comma list, or scalar "
                                       "(use --z=-3:3:7 when the grid starts negative)")
        if k:
            p.add_argument("--k", help="moment orders: lo..hi, comma list, or scalar")
        if sigma:
            p.add_argument("--sigma", type=float, help="power-kernel exponent")
        if delta:
            p.add_argument("--delta", type=float, help="parameter shift")
        if lift:
            p.add_argument("--lift", type=float, help="gamma-lift exponent")
        if cm:
            p.add_argument(
                "--function",
                default="series",
                help="series (default) or one of: " + ", ".join(_CM_FUNCTIONS),
            )
            p.add_argument("--h", type=float, default=0.05, dest="h_step",
                           help="forward-difference step")
            p.add_argument("--max-order", type=int, default=6, dest="max_order",
                           help="highest difference order checked")
        p.add_argument("--tol", type=float, default=1e-6, help="verdict tolerance")
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--out", dest="out_path", help="write report here instead of stdout")
        return p

    add("eval", "evaluate the series over a z grid")
    add("hfun", "evaluate the representing density over a t grid")
    add("moments", "check gamma-ratio moments against the measure", grid=False, k=True)
    add("verify-representation", "series vs exponential-kernel integral")
    add("verify-stieltjes", "lifted series vs power-kernel integral", sigma=True)
    add("verify-laplace", "gamma-weighted transform vs lifted series", lift=True)
    add("bounds", "two-sided kernel bounds (default exponential; --lift or --sigma)",
        sigma=True, lift=True)
    add("cm-check", "finite-difference complete-monotonicity scan", cm=True)
    add("ratio-scan", "shifted-ratio monotonicity scan", sigma=True, delta=True)
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        params_path=getattr(ns, "params", None),
        z_spec=getattr(ns, "z", None),
        k_spec=getattr(ns, "k", None),
        tol=ns.tol,
        output=ns.output,
        out_path=ns.out_path,
        sigma=getattr(ns, "sigma", None),
        delta=getattr(ns, "delta", None),
        lift=getattr(ns, "lift", None),
        function=getattr(ns, "function", None),
        h_step=getattr(ns, "h_step", 0.05),
        max_order=getattr(ns, "max_order", 6),
    )


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = _build_parser().parse_args(argv)
        return run(_config_from_args(ns))
    except CliUsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
