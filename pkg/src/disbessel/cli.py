"""Command-line interface: ``disbessel {eval,wave,laplace,asymp,verify}``.

Data goes to stdout (or ``--out``), diagnostics to stderr. Exit codes:
0 ok, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import bessel, laplace, scaled, verify, wave
from .bessel import BesselSpec, Direction, Kind
from .errors import DisBesselError

SCHEMA = "disbessel/1"


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"5"`` -> [5]; ``"-3..2"`` -> [-3, ..., 2] (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad integer or range {text!r}") from None


def parse_reals(texts: Sequence[str]) -> list[float]:
    out = []
    for text in texts:
        for part in text.split(","):
            part = part.strip()
            if part:
                try:
                    out.append(float(part))
                except ValueError:
                    raise UsageError(f"bad number {part!r}") from None
    return out


def _num(x):
    """Round-trip representation for CSV cells."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _json_num(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def emit(command: str, header: list, rows: list, fmt: str, stream, extra: Optional[dict] = None):
    if fmt == "json":
        obj = {"schema": SCHEMA, "command": command}
        obj.update(extra or {})
        obj["rows"] = [{k: _json_num(v) for k, v in zip(header, r)} for r in rows]
        stream.write(json.dumps(obj) + "\n")
        return
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_num(v) for v in r])


def _spec(args, n=None) -> BesselSpec:
    return BesselSpec(Kind(args.kind.upper()), Direction(args.direction.lower()),
                      args.n if n is None else n, args.c)


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args, out) -> int:
    spec = _spec(args)
    rows = []
    for t in parse_range(args.t):
        e = bessel.evaluate_detailed(spec, t)
        rows.append((spec.n, t, float(spec.c), float(e.value), e.method, float(e.est_error)))
    emit("eval", ["n", "t", "c", "value", "method", "est_error"], rows, args.format, out)
    return 0


def read_init_file(path: str):
    u0, v0 = {}, {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise UsageError(f"{path}:{lineno}: expected 'n u0 v0'")
            try:
                n = int(parts[0])
                u0[n], v0[n] = float(parts[1]), float(parts[2])
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad number") from None
    return wave.SequenceWindow.from_mapping(u0), wave.SequenceWindow.from_mapping(v0)


def cmd_wave(args, out) -> int:
    if args.init == "delta":
        u0, v0 = wave.SequenceWindow.delta(), wave.SequenceWindow.zeros()
    elif args.init.startswith("file="):
        u0, v0 = read_init_file(args.init[5:])
    else:
        raise UsageError("--init must be 'delta' or 'file=<path>'")
    cfg = wave.WaveConfig(args.scheme, args.c, args.radius, args.horizon,
                          truncation_tol=args.tol, init_u0=u0, init_v0=v0)
    grid = wave.simulate(cfg)
    rows = [(n, t, grid.at(n, t)) for t in range(0, cfg.horizon + 1) for n in grid.ns]
    summary = [(t, float(max(abs(grid.at(n, t)) for n in grid.ns))) for t in range(0, cfg.horizon + 1)]
    if args.out:
        with open(args.out, "w") as fh:
            emit("wave", ["n", "t", "value"], rows, args.format, fh)
        emit("wave-summary", ["t", "max_abs"], summary, args.format, out)
    else:
        emit("wave", ["n", "t", "value"], rows, args.format, out)
        # keep stdout a single table; the summary goes to the diagnostic stream
        emit("wave-summary", ["t", "max_abs"], summary, args.format, sys.stderr)
    return 0


def cmd_laplace(args, out) -> int:
    spec = _spec(args)
    zs = parse_reals(args.z)
    with_gap = spec.direction is Direction.BACKWARD and spec.n == 0
    header = ["z", "closed", "series", "abs_diff", "terms_used", "in_region"]
    if with_gap:
        header.append("discrepancy")
    rows = []
    for z in zs:
        try:
            e = laplace.laplace_eval(spec, z, tol=args.tol, max_terms=args.terms)
        except DisBesselError as exc:
            print(f"z={z!r}: {exc}", file=sys.stderr)
            e = laplace.LaplaceEval(spec, z, math.nan, math.nan, 0, False)
        row = [z, e.closed, e.series, e.abs_diff, e.terms_used, e.in_region]
        if with_gap:
            row.append(e.series - e.closed - 1.0 / (1 - z) if e.in_region else math.nan)
        rows.append(row)
    emit("laplace", header, rows, args.format, out)
    return 0


def cmd_asymp(args, out) -> int:
    rows = []
    if args.mode == "t":
        spec = _spec(args)
        for t in range(1, args.t_max + 1):
            exact = bessel.evaluate_scaled(spec, t)
            a = bessel.asymp_value(spec, t)
            ratio = scaled.ratio(exact, a.scaled) if a.sign else math.nan
            mask = abs(bessel.asymp_cos_phase(spec, t)) >= 0.3
            rows.append((t, exact.value, a.value, ratio, mask))
        emit("asymp", ["t", "exact", "asymptotic", "ratio", "cos_mask"], rows, args.format, out)
        return 0
    if Direction(args.direction.lower()) is not Direction.BACKWARD:
        raise UsageError("--mode n needs --direction backward")
    for t in range(1, args.t_max + 1):
        for n in range(1, args.n_max + 1):
            spec = _spec(args, n)
            exact = bessel.evaluate(spec, t)
            approx = bessel.asymp_large_n(spec, t)
            rows.append((n, t, float(exact), approx, float(exact) / approx if approx else math.nan, True))
    emit("asymp", ["n", "t", "exact", "asymptotic", "ratio", "cos_mask"], rows, args.format, out)
    return 0


def cmd_verify(args, out) -> int:
    names = verify.SUITES + ("all",)
    if args.suite not in names:
        raise UsageError(f"--suite must be one of {', '.join(names)}")
    report = verify.run(args.suite, tol=args.tol, seed=args.seed)
    obj = {"schema": SCHEMA, "suite": report.suite, "checks_run": report.checks_run,
           "failures": report.failures}
    out.write(json.dumps(obj, default=str) + "\n")
    for f in report.failures:
        print(f"FAIL {json.dumps(f, default=str)}", file=sys.stderr)
    return 1 if report.failures else 0


# ---------------------------------------------------------------------------
# parser


def _add_family(p, need_n=True):
    p.add_argument("--kind", required=True, choices=["J", "I", "j", "i"])
    p.add_argument("--direction", required=True, choices=["forward", "backward"])
    if need_n:
        p.add_argument("-n", type=int, required=True)
    p.add_argument("-c", type=float, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="disbessel", description="Discrete Bessel functions and the discrete wave equation.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="table of values over t")
    _add_family(p)
    p.add_argument("--t", required=True, help="integer or inclusive range a..b (use --t=-5..-1 for negatives)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("wave", help="simulate the discrete wave equation")
    p.add_argument("--scheme", required=True, choices=["forward", "backward"])
    p.add_argument("-c", type=float, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--init", default="delta", help="'delta' or 'file=<path>' with lines 'n u0 v0'")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser("laplace", help="transform series against closed form")
    _add_family(p)
    p.add_argument("--z", required=True, nargs="+", help="values, comma or space separated")
    p.add_argument("--terms", type=int, default=laplace.DEFAULT_MAX_TERMS)
    p.add_argument("--tol", type=float, default=laplace.DEFAULT_TOL)
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("asymp", help="exact values against asymptotic formulas")
    _add_family(p, need_n=False)
    p.add_argument("-n", type=int, default=0)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--mode", choices=["t", "n"], default="t")
    p.add_argument("--n-max", type=int, default=80)
    p.set_defaults(func=cmd_asymp)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (DisBesselError, UsageError, ValueError, OSError) as exc:
        print(f"disbessel {args.command}: {exc}", file=sys.stderr)
        return 2


def run_captured(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and return ``(exit code, stdout text)``."""
    buf = io.StringIO()
    code = main(argv, stdout=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
