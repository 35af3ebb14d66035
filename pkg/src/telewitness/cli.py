"""Command-line front end: ``telewitness scan | classify | verify``."""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import states
from .fef import OptimizerConfig, fef_exact_2x2, fef_optimize
from .states import StateValidationError
from .verify import SUITES, run_suite
from .witness import (
    Verdict,
    classify,
    discord_expectation,
    isotropic_expectation,
    mems_expectation,
    verdict_for,
    werner_expectation,
    witness_expectation,
)

EXIT_OK = 0
EXIT_DETECTED = 1
EXIT_USAGE = 2
EXIT_WRITE = 3
EXIT_MISMATCH = 4

SCAN_FIELDS = (
    "family",
    "d",
    "parameter_name",
    "parameter_value",
    "witness_expectation",
    "fef_value",
    "fef_method",
    "verdict",
)
AGREEMENT_TOL = 1e-12
DEFAULT_RESTARTS = 20
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def fmt(x):
    """Real number with 12 significant digits."""
    return f"{x:.12g}"


def _uniform_alphas(d):
    return np.full(d, 1.0 / math.sqrt(d))


FAMILIES = {
    # name: (parameter name, admissible interval(d), state(d, p), closed form(d, p))
    "isotropic": (
        "beta",
        lambda d: (-1.0 / (d * d - 1), 1.0),
        lambda d, p: states.isotropic(d, p),
        isotropic_expectation,
    ),
    "werner": (
        "v",
        lambda d: (0.0, 1.0),
        lambda d, p: states.generalized_werner(d, p, _uniform_alphas(d)),
        lambda d, p: werner_expectation(d, p, _uniform_alphas(d)),
    ),
    "mems": (
        "concurrence",
        lambda d: (0.0, 1.0),
        lambda d, p: states.mems(p),
        lambda d, p: mems_expectation(p),
    ),
    "discord": (
        "a",
        lambda d: (0.0, 1.0),
        lambda d, p: states.discord_state(p),
        lambda d, p: discord_expectation(p),
    ),
}
QUBIT_ONLY = {"mems", "discord"}


def grid(start, stop, step):
    if not step > 0:
        raise UsageError(f"step must be positive, got {step}")
    if stop < start:
        raise UsageError(f"empty range: from {start} > to {stop}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    # rounding keeps 0.1 * 3 from landing just outside a closed interval
    return [min(round(start + k * step, 12), stop) for k in range(n)]


def scan_rows(family, d, start, stop, step, with_fef=False, config=None):
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if d < 2:
        raise UsageError(f"d must be >= 2, got {d}")
    if family in QUBIT_ONLY and d != 2:
        raise UsageError(f"family {family!r} is defined for d=2 only")
    pname, interval, make, closed = FAMILIES[family]
    lo, hi = interval(d)
    if start < lo - 1e-12 or stop > hi + 1e-12:
        raise UsageError(f"{pname} range [{start}, {stop}] outside admissible [{lo:.6g}, {hi:.6g}]")
    values = [min(max(p, lo), hi) for p in grid(start, stop, step)]

    config = config or OptimizerConfig(restarts=DEFAULT_RESTARTS, seed=DEFAULT_SEED)
    rows = []
    for p in values:
        rho = make(d, p)
        numeric = witness_expectation(rho)
        expected = closed(d, p)
        if abs(numeric - expected) > AGREEMENT_TOL:
            raise ArithmeticError(
                f"{family} {pname}={p}: numeric {numeric!r} vs closed form {expected!r}"
            )
        fef_value = fef_method = None
        if with_fef:
            est = fef_exact_2x2(rho) if d == 2 else fef_optimize(rho, config)
            fef_value, fef_method = est.value, est.method.value
        rows.append(
            {
                "family": family,
                "d": d,
                "parameter_name": pname,
                "parameter_value": p,
                "witness_expectation": numeric,
                "fef_value": fef_value,
                "fef_method": fef_method,
                "verdict": verdict_for(numeric).value,
            }
        )
    return rows


def write_rows(rows, fmt_name, fh):
    if fmt_name == "csv":
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(SCAN_FIELDS)
        for r in rows:
            writer.writerow(
                [
                    r["family"],
                    r["d"],
                    r["parameter_name"],
                    fmt(r["parameter_value"]),
                    fmt(r["witness_expectation"]),
                    "" if r["fef_value"] is None else fmt(r["fef_value"]),
                    r["fef_method"] or "",
                    r["verdict"],
                ]
            )
    else:
        out = []
        for r in rows:
            r = dict(r)
            for key in ("parameter_value", "witness_expectation", "fef_value"):
                if r[key] is not None:
                    r[key] = float(fmt(r[key]))
            out.append({k: r[k] for k in SCAN_FIELDS})
        json.dump(out, fh, indent=2)
        fh.write("\n")


def read_rows(path):
    """Parse a scan file written by ``scan`` (csv or json, by content)."""
    with open(path, newline="") as fh:
        text = fh.read()
    if text.lstrip().startswith("["):
        return json.loads(text)
    rows = []
    for r in csv.DictReader(text.splitlines()):
        r["d"] = int(r["d"])
        for key in ("parameter_value", "witness_expectation"):
            r[key] = float(r[key])
        r["fef_value"] = float(r["fef_value"]) if r["fef_value"] else None
        r["fef_method"] = r["fef_method"] or None
        rows.append(r)
    return rows


# state files -----------------------------------------------------------


def load_state(path):
    """Read a state file ``{"d": d, "matrix": [[[re, im], ...], ...]}``."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StateValidationError("shape", f"not valid JSON: {exc}") from exc
    try:
        d = int(doc["d"])
        arr = np.asarray(doc["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateValidationError("shape", f"malformed state file: {exc}") from exc
    n = d * d
    if arr.shape != (n, n, 2):
        raise StateValidationError(
            "shape", f"matrix must be {n}x{n} of [re, im] pairs, got array shape {arr.shape}"
        )
    return states.DensityMatrix(arr[..., 0] + 1j * arr[..., 1], d)


def dump_state(rho, path):
    rho = states.as_density(rho)
    doc = {"d": rho.d, "matrix": [[[z.real, z.imag] for z in row] for row in rho.mat]}
    with open(path, "w") as fh:
        json.dump(doc, fh)


# commands -------------------------------------------------------------


def cmd_scan(args):
    config = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    try:
        rows = scan_rows(args.family, args.d, args.start, args.stop, args.step, args.fef, config)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: closed form disagrees: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    try:
        if args.out == "-":
            write_rows(rows, args.format, sys.stdout)
        else:
            with open(args.out, "w", newline="") as fh:
                write_rows(rows, args.format, fh)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_WRITE
    if args.fef:
        print(f"# restarts={config.restarts} seed={config.seed}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args):
    try:
        rho = load_state(args.inp)
    except OSError as exc:
        print(f"error: cannot read {args.inp}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StateValidationError as exc:
        print(f"invalid state ({exc.reason}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    report = classify(rho, with_fef=args.fef, config=config)
    if args.format == "json":
        doc = {"restarts": config.restarts, "seed": config.seed, **report.as_dict()}
        print(json.dumps(doc, indent=2))
    else:
        print(f"# restarts={config.restarts} seed={config.seed}")
        print(f"d            {report.d}")
        print(f"expectation  {fmt(report.expectation)}")
        print(f"verdict      {report.verdict.value}")
        if report.fef_hint is not None:
            h = report.fef_hint
            kind = "lower bound" if h.is_lower_bound else "exact"
            print(f"fef          {fmt(h.value)} ({h.method.value}, {kind})")
            print(f"fef > 1/d    {h.value > 1.0 / report.d}")
    return EXIT_DETECTED if report.verdict is Verdict.USEFUL_DETECTED else EXIT_OK


def cmd_verify(args):
    if args.samples is not None and args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    names = SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for name in names:
        res = run_suite(name, args.samples, args.seed)
        print(res.summary())
        ok &= res.passed
    return EXIT_OK if ok else EXIT_DETECTED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="telewitness",
        description="Teleportation witness and fully entangled fraction tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="sweep a state family parameter")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--fef", action="store_true", help="also compute the FEF per grid point")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True, help="output path, '-' for stdout")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("classify", help="evaluate the witness on a state file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--fef", action="store_true")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run randomized self-checks")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "restarts", 1) < 1:
        print("error: --restarts must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
