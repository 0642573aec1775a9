"""``sostree`` command line: classify, curves, sweep, solve, verify.

Errors go to stderr as a single line ``error: <code>: <message>`` and the
process exits with status 2 (bad input), 3 (oracle disagreement) or 1
(failed verification).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import general, k2, verify

CONFIG_KEYS = {"theta", "lambda", "k", "m", "out", "curves_out", "grid", "tol", "oracle", "json",
               "level", "general"}
FLAG_DEFAULTS = {"k": 2, "m": 2, "tol": k2.DEFAULT_TOL, "oracle": False, "json": False,
                 "level": "quick", "general": False}


class CliError(Exception):
    def __init__(self, code: str, message: str, status: int = 2):
        super().__init__(message)
        self.code = code
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message.replace("\n", " "))


def fmt(v) -> str:
    """Shortest round-trip decimal for floats, empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float]:
        if self.steps == 1:
            return [self.lo]
        return [self.lo + (self.hi - self.lo) * i / (self.steps - 1) for i in range(self.steps)]


@dataclass(frozen=True)
class SweepJob:
    theta_range: Range
    lambda_range: Range
    k: int = 2
    out: Path | None = None
    curves_out: Path | None = None
    mode: str = "classify"
    tol: float = k2.DEFAULT_TOL

    def __post_init__(self):
        for name, r in (("theta", self.theta_range), ("lambda", self.lambda_range)):
            if name == "theta" and r.steps == 1 and r.lo == r.hi:
                pass  # a single row at fixed theta
            elif not r.lo < r.hi:
                raise CliError("bad-grid", f"{name} range needs min < max, got {r.lo}:{r.hi}")
            elif r.steps < 2:
                raise CliError("bad-grid", f"{name} range needs at least 2 steps, got {r.steps}")
            if not r.lo > 0:
                raise CliError("bad-grid", f"{name} range must be positive, got min {r.lo}")
        if self.k < 2:
            raise CliError("bad-k", f"k must be >= 2, got {self.k}")
        if self.mode not in ("classify", "count", "curves"):
            raise CliError("bad-mode", f"unknown sweep mode {self.mode!r}")


def parse_range(text: str, name: str) -> Range:
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError("bad-grid", f"{name} range must be min:max:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise CliError("bad-grid", f"cannot parse {name} range {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise CliError("bad-grid", f"{name} range must be finite")
    return Range(lo, hi, steps)


def parse_grid(text: str) -> tuple[Range, Range | None]:
    parts = text.split(",")
    if len(parts) > 2:
        raise CliError("bad-grid", f"grid must be t0:t1:n[,l0:l1:n], got {text!r}")
    tr = parse_range(parts[0], "theta")
    lr = parse_range(parts[1], "lambda") if len(parts) == 2 else None
    return tr, lr


def read_config(path: str) -> dict:
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise CliError("config-unreadable", f"{path}: {exc.strerror}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError("bad-config", f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise CliError("bad-config", f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _coerce(key: str, value: str):
    try:
        if key in ("theta", "lambda", "tol"):
            return float(value)
        if key in ("k", "m"):
            return int(value)
    except ValueError:
        raise CliError("bad-config", f"cannot parse {key}={value!r}") from None
    if key in ("oracle", "json", "general"):
        return value.lower() in ("1", "true", "yes", "on")
    return value


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    conf = read_config(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        attr = "lam" if key == "lambda" else key
        if not hasattr(args, attr):
            continue
        if getattr(args, attr) in (None, False) and key in conf:
            setattr(args, attr, _coerce(key, conf[key]))
        if getattr(args, attr) is None and key in FLAG_DEFAULTS:
            setattr(args, attr, FLAG_DEFAULTS[key])
    return args


def _positive(name: str, v) -> float:
    if v is None:
        raise CliError("missing-argument", f"--{name} is required")
    if not (v > 0 and math.isfinite(v)):
        raise CliError(f"bad-{name}", f"{name} must be positive and finite, got {v}")
    return float(v)


def _check_km(args):
    if args.k < 2:
        raise CliError("bad-k", f"k must be >= 2, got {args.k}")
    if args.m != 2:
        raise CliError("bad-m", f"only m = 2 is supported, got {args.m}")
    if not args.tol > 0:
        raise CliError("bad-tol", f"tol must be positive, got {args.tol}")


def _open_out(path):
    if path is None:
        return sys.stdout
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise CliError("unwritable-output", f"{path}: {exc.strerror}") from None


def _emit(out, args, record: dict, text: str):
    out.write((json.dumps(record, sort_keys=True) if args.json else text) + "\n")


# -- subcommands -------------------------------------------------------------

def cmd_classify(args) -> int:
    theta = _positive("theta", args.theta)
    lam = _positive("lambda", args.lam)
    _check_km(args)
    out = sys.stdout
    if args.k != 2:
        roots = general.solve_z0eq1_branch(theta, lam, args.k, args.tol)
        bound = general.tisgm_lower_bound(theta, lam, args.k, args.tol)
        summary = {"record": "summary", "theta": theta, "lambda": lam, "k": args.k,
                   "case": "z0=1 branch", "count_lower_bound": bound}
        _emit(out, args, summary,
              f"theta={fmt(theta)} lambda={fmt(lam)} k={args.k}: at least {bound} TISGM(s) (z0 = 1 branch only)")
        for r in roots:
            rec = {"record": "solution", "z0": 1.0, "z1": r.z1, "multiplicity": r.multiplicity,
                   "residuals": list(general.full_system_residuals(1.0, r.z1, theta, lam, args.k))}
            _emit(out, args, rec, f"  z0=1 z1={fmt(r.z1)} multiplicity={r.multiplicity}")
        return 0

    try:
        res = k2.classify(theta, lam, args.tol)
    except ValueError as exc:
        raise CliError("bad-input", str(exc)) from None
    summary = {"record": "summary", "theta": theta, "lambda": lam, "k": 2, "case": res.region,
               "count": res.tisgm_count, "boundary_flag": res.boundary_flag,
               "measure_indices": sorted(res.measure_indices)}
    _emit(out, args, summary,
          f"theta={fmt(theta)} lambda={fmt(lam)}: case {res.region}, {res.tisgm_count} TISGM(s)"
          + (" [on a boundary]" if res.boundary_flag else ""))
    for s in res.solutions:
        rec = {"record": "solution", **s.as_dict()}
        _emit(out, args, rec,
              f"  #{s.index} {s.branch:<12} x={fmt(s.x)} y={fmt(s.y)} z0={fmt(s.z0)} z1={fmt(s.z1)} "
              f"mult={s.multiplicity} residual={max(map(abs, s.residuals)):.1e}")
    if args.oracle:
        orc = verify.sturm_oracle_count(theta, lam)
        _emit(out, args, {"record": "oracle", "count": orc, "agrees": orc == res.tisgm_count},
              f"  oracle count {orc} ({'agrees' if orc == res.tisgm_count else 'DISAGREES'})")
        if orc != res.tisgm_count and not res.boundary_flag:
            raise CliError("oracle-mismatch", f"classifier {res.tisgm_count} vs oracle {orc}", status=3)
    return 0


def _curve_rows(thetas, use_general: bool, k: int):
    if use_general:
        yield ["theta", "lambda_star1", "lambda_star2", "theta_c"]
        for t in thetas:
            try:
                s1, s2 = general.lambda_star(t, k)
            except general.CurveUndefinedError:
                s1 = s2 = None
            yield [fmt(t), fmt(s1), fmt(s2), fmt(general.theta_c(k))]
        return
    yield ["theta", "lambda1", "lambda2", "lambda3", "lambda4"]
    for t in thetas:
        c = k2.lambda_curves(t)
        l4 = c.lambda4 if c.lambda4 > 0 else None
        yield [fmt(t), fmt(c.lambda1), fmt(c.lambda2), fmt(c.lambda3), fmt(l4)]


def _write_csv(path, rows):
    fh = _open_out(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        for row in rows:
            w.writerow(row)
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_curves(args) -> int:
    if args.grid:
        tr, _ = parse_grid(args.grid)
        if not (tr.lo > 0 and tr.lo < tr.hi and tr.steps >= 2):
            raise CliError("bad-grid", "theta range needs 0 < min < max and steps >= 2")
        thetas = tr.values()
    else:
        thetas = [_positive("theta", args.theta)]
    if args.k < 2:
        raise CliError("bad-k", f"k must be >= 2, got {args.k}")
    if args.general:
        rows = _curve_rows(thetas, True, args.k)
    else:
        if args.k != 2:
            raise CliError("bad-k", "the lambda1..lambda4 curves exist for k = 2 only; use --general")
        rows = _curve_rows(thetas, False, 2)
    _write_csv(args.out, rows)
    return 0


def run_sweep(job: SweepJob) -> tuple[list[list[str]], list[list[str]]]:
    rows = [["theta", "lambda", "case", "count", "boundary_flag"]]
    thetas = job.theta_range.values()
    for t in thetas:
        for lam in job.lambda_range.values():
            if job.k == 2:
                res = k2.classify(t, lam, job.tol)
                rows.append([fmt(t), fmt(lam), res.region, str(res.tisgm_count), fmt(res.boundary_flag)])
            else:
                bound = general.tisgm_lower_bound(t, lam, job.k, job.tol)
                edge = len(general.solve_z0eq1_branch(t, lam, job.k, job.tol)) == 2
                rows.append([fmt(t), fmt(lam), "lower-bound", str(bound), fmt(edge)])
    curves = list(_curve_rows(thetas, job.k != 2, job.k))
    return rows, curves


def cmd_sweep(args) -> int:
    if not args.grid:
        raise CliError("missing-argument", "--grid t0:t1:n,l0:l1:n (or --theta with --grid l0:l1:n) is required")
    tr, lr = parse_grid(args.grid)
    if lr is None:
        if args.theta is None:
            raise CliError("bad-grid", "sweep needs both ranges, or --theta with a lambda range")
        t = _positive("theta", args.theta)
        tr, lr = Range(t, t, 1), tr
    elif args.theta is not None:
        raise CliError("bad-grid", "--theta conflicts with a theta range in --grid")
    _check_km(args)
    out = Path(args.out) if args.out else None
    curves_out = Path(args.curves_out) if args.curves_out else (
        out.with_name(out.stem + "_curves" + (out.suffix or ".csv")) if out else None)
    job = SweepJob(tr, lr, args.k, out, curves_out, "classify" if args.k == 2 else "count", args.tol)
    if out is not None:
        for p in (out, curves_out):
            if not p.parent.is_dir():
                raise CliError("unwritable-output", f"{p}: directory does not exist")
    rows, curves = run_sweep(job)
    _write_csv(job.out, rows)
    if job.curves_out is not None:
        _write_csv(job.curves_out, curves)
    return 0


def cmd_solve(args) -> int:
    theta = _positive("theta", args.theta)
    lam = _positive("lambda", args.lam)
    _check_km(args)
    ab = general.ab_transform(theta, lam, args.k)
    info = general.lemma1_count(ab.a, ab.b, args.k, args.tol)
    roots = general.solve_z0eq1_branch(theta, lam, args.k, args.tol)
    _emit(sys.stdout, args,
          {"record": "summary", "theta": theta, "lambda": lam, "k": args.k, "a": ab.a, "b": ab.b,
           "predicted_count": info.count, "count": len(roots), "boundary_flag": info.boundary},
          f"theta={fmt(theta)} lambda={fmt(lam)} k={args.k}: a={fmt(ab.a)} b={fmt(ab.b)}, "
          f"{len(roots)} root(s) on z0 = 1 (predicted {info.count})")
    for r in roots:
        res = general.full_system_residuals(1.0, r.z1, theta, lam, args.k)
        _emit(sys.stdout, args,
              {"record": "solution", "z0": 1.0, "z1": r.z1, "multiplicity": r.multiplicity,
               "residuals": list(res)},
              f"  z1={fmt(r.z1)} multiplicity={r.multiplicity} residual={max(map(abs, res)):.1e}")
    if args.oracle and len(roots) != info.count:
        raise CliError("oracle-mismatch", f"root isolation found {len(roots)}, closed form predicts {info.count}",
                       status=3)
    return 0


def cmd_verify(args) -> int:
    if args.level not in ("quick", "full"):
        raise CliError("bad-level", f"level must be quick or full, got {args.level!r}")
    results = verify.run_suite(args.level)
    for r in results:
        if args.json:
            print(json.dumps({"check": r.name, "passed": r.passed, "detail": r.detail,
                              "seconds": round(r.seconds, 3)}, sort_keys=True))
        else:
            print(r.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise CliError("verify-failed", ",".join(failed), status=1)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--theta", type=float)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--k", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--tol", type=float, help="relative tolerance for boundary detection")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--grid", help="t0:t1:n[,l0:l1:n]")
    common.add_argument("--oracle", action="store_true", help="cross-check against root counting")
    common.add_argument("--json", action="store_true", help="one JSON object per line")
    common.add_argument("--config", help="key=value file; command-line flags take precedence")

    p = _Parser(prog="sostree", description="Translation-invariant splitting Gibbs measures of the "
                "three-state SOS model with external field on a Cayley tree.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("classify", parents=[common], help="classify one (theta, lambda) point")
    c = sub.add_parser("curves", parents=[common], help="tabulate the critical curves")
    c.add_argument("--general", action="store_true", help="critical fields of the z0 = 1 branch for --k")
    s = sub.add_parser("sweep", parents=[common], help="classify a grid and write CSV")
    s.add_argument("--curves-out", dest="curves_out", help="companion curves file")
    sub.add_parser("solve", parents=[common], help="solve the z0 = 1 branch for any k")
    v = sub.add_parser("verify", parents=[common], help="run the cross-check suites")
    v.add_argument("--level", help="quick or full")
    return p


COMMANDS = {"classify": cmd_classify, "curves": cmd_curves, "sweep": cmd_sweep,
            "solve": cmd_solve, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise CliError("usage", "a subcommand is required: " + ", ".join(COMMANDS))
        args = _merge_config(args)
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
