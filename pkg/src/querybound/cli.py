"""Command-line front end: one subcommand per capability, CSV or JSON out.

Every row echoes the effective configuration and a schema_version, floats
are serialized with 17 significant digits, and a fixed (config, seed,
threads=1) always produces byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import boolfn
from .certify import certify_lower_bound, certify_random_sweep
from .fourier_operator import DENSE_LIMIT, build_dense, build_matrix_free, spectral_norm
from .interrogation import (
    asymptotic_reference_t,
    choose_t,
    simulate_exact,
    simulate_sampled,
)
from .moments import (
    PartitionSpec,
    claim2_bruteforce,
    evenness_check,
    expected_trace_moment_exhaustive,
    expected_trace_moment_mc,
    trace_moment,
)
from .transforms import binomial_sum, format_bitstring, parse_bitstring

SCHEMA_VERSION = 1


def _fmt17(x: float) -> str:
    return "%.17g" % x


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt17(v)
    return str(v)


def write_rows(fieldnames: list[str], rows: list[dict], fmt: str, out: str) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_csv_cell(row.get(k)) for k in fieldnames])
        text = buf.getvalue()
    else:
        ordered = [{k: row.get(k) for k in fieldnames} for row in rows]
        text = json.dumps({"rows": ordered}, indent=2) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_function(args) -> tuple[boolfn.BooleanFunction, str]:
    if getattr(args, "function_file", None):
        f = boolfn.read_truth_table(args.function_file)
        digest = hashlib.sha256(Path(args.function_file).read_bytes()).hexdigest()[:12]
        return f, f"file:{digest}"
    if getattr(args, "family", None):
        if args.n is None:
            raise ValueError("--family requires --n")
        return boolfn.make_family(args.family, args.n), args.family
    raise ValueError("provide --family or --function-file")


# ---------------------------------------------------------------- vandam

VANDAM_FIELDS = [
    "schema_version", "subcommand", "n", "t", "eps", "reference_t", "x", "b",
    "success_probability", "shots", "recovered_count", "recovered_frequency", "seed",
]


def cmd_vandam(args) -> tuple[list[str], list[dict], int]:
    n = args.n
    if args.t is None and args.eps is None:
        raise ValueError("provide --t or --eps")
    t = args.t if args.t is not None else choose_t(n, args.eps)
    ref = asymptotic_reference_t(n, args.eps) if args.eps is not None else None
    x = parse_bitstring(args.x) if args.x is not None else 0
    row = {
        "schema_version": SCHEMA_VERSION, "subcommand": "vandam",
        "n": n, "t": t, "eps": args.eps, "reference_t": ref,
        "x": format_bitstring(x, n), "b": binomial_sum(n, t),
        "shots": None, "recovered_count": None, "recovered_frequency": None,
        "seed": None,
    }
    if args.shots:
        if args.seed is None:
            raise ValueError("--shots requires --seed")
        out = simulate_sampled(n, t, x, args.shots, args.seed)
        row.update({
            "success_probability": out.success_probability,
            "shots": out.shots,
            "recovered_count": out.sampled_counts.get(x, 0),
            "recovered_frequency": out.recovered_frequency,
            "seed": args.seed,
        })
    else:
        out = simulate_exact(n, t, x)
        row["success_probability"] = out.success_probability
    return VANDAM_FIELDS, [row], 0


# ------------------------------------------------------------------ norm

NORM_FIELDS = [
    "schema_version", "subcommand", "n", "t", "b", "function", "mode", "method",
    "norm", "iterations", "residual", "converged", "tol", "max_iter", "seed",
]


def cmd_norm(args) -> tuple[list[str], list[dict], int]:
    f, desc = _load_function(args)
    b = binomial_sum(f.n, args.t)
    if args.dense and b > DENSE_LIMIT:
        raise ValueError(f"B={b} exceeds the dense budget {DENSE_LIMIT}")
    use_dense = args.dense or (not args.matrix_free and b <= DENSE_LIMIT)
    op = build_dense(f, args.t) if use_dense else build_matrix_free(f, args.t)
    est = spectral_norm(op, tol=args.tol, max_iter=args.max_iter, seed=args.seed)
    row = {
        "schema_version": SCHEMA_VERSION, "subcommand": "norm",
        "n": f.n, "t": args.t, "b": b, "function": desc,
        "mode": "dense" if use_dense else "matrix_free", "method": est.method,
        "norm": est.value, "iterations": est.iterations, "residual": est.residual,
        "converged": est.converged, "tol": args.tol, "max_iter": args.max_iter,
        "seed": args.seed,
    }
    code = 0
    if not est.converged:
        print(f"norm estimate did not converge in {args.max_iter} iterations", file=sys.stderr)
        code = 1
    return NORM_FIELDS, [row], code


# --------------------------------------------------------------- certify

CERTIFY_FIELDS = [
    "schema_version", "subcommand", "kind", "n", "eps", "trial", "function", "seed",
    "lower_bound_t", "status", "upper_bound_t", "b_stop", "entropy_exponent",
    "entropy_bound", "norms", "min_lower_bound_t", "median_lower_bound_t",
    "max_lower_bound_t", "fraction_at_least_quarter_n", "tol", "max_iter",
]


def _certificate_row(bound, trial, seed, upper) -> dict:
    return {
        "schema_version": SCHEMA_VERSION, "subcommand": "certify", "kind": "certificate",
        "n": bound.n, "eps": bound.eps, "trial": trial, "function": bound.f_descriptor,
        "seed": seed, "lower_bound_t": bound.lower_bound_t, "status": bound.status,
        "upper_bound_t": upper, "b_stop": bound.entropy.b,
        "entropy_exponent": bound.entropy.exponent, "entropy_bound": bound.entropy.bound,
        "norms": json.dumps([e.norm for e in bound.evidence]),
    }


def cmd_certify(args) -> tuple[list[str], list[dict], int]:
    upper = choose_t(args.n, args.eps) if args.n is not None else None
    rows = []
    if args.trials:
        if args.seed is None:
            raise ValueError("--trials requires --seed")
        if args.n is None:
            raise ValueError("--trials requires --n")
        bounds, summary = certify_random_sweep(
            args.n, args.eps, args.trials, args.seed, tol=args.tol,
            max_iter=args.max_iter, include_family=args.include_family,
            threads=args.threads,
        )
        seeds = boolfn.derive_seeds(args.seed, args.trials)
        offset = 1 if args.include_family else 0
        for i, bound in enumerate(bounds):
            seed = seeds[i - offset] if i >= offset else None
            rows.append(_certificate_row(bound, i, seed, upper))
        rows.append({
            "schema_version": SCHEMA_VERSION, "subcommand": "certify", "kind": "summary",
            "n": args.n, "eps": args.eps,
            "min_lower_bound_t": summary["min_lower_bound_t"],
            "median_lower_bound_t": summary["median_lower_bound_t"],
            "max_lower_bound_t": summary["max_lower_bound_t"],
            "fraction_at_least_quarter_n": summary["fraction_at_least_quarter_n"],
            "upper_bound_t": summary["upper_bound_t"],
        })
    else:
        f, desc = _load_function(args)
        upper = choose_t(f.n, args.eps)
        bound = certify_lower_bound(f, args.eps, tol=args.tol, max_iter=args.max_iter,
                                    descriptor=desc)
        rows.append(_certificate_row(bound, 0, None, upper))
    for row in rows:
        row.setdefault("tol", args.tol)
        row.setdefault("max_iter", args.max_iter)
    return CERTIFY_FIELDS, rows, 0


# --------------------------------------------------------------- moments

MOMENTS_FIELDS = [
    "schema_version", "subcommand", "n", "t", "k", "b", "method", "function",
    "value", "stderr", "bound_ratio", "trials", "seed",
]


def cmd_moments(args) -> tuple[list[str], list[dict], int]:
    desc = None
    if args.method == "exact":
        f, desc = _load_function(args)
        report = trace_moment(f, args.t, args.k)
        n = f.n
    elif args.method == "exhaustive":
        if args.n is None:
            raise ValueError("--method exhaustive requires --n")
        report = expected_trace_moment_exhaustive(args.n, args.t, args.k)
        n = args.n
    else:
        if args.n is None or args.trials is None or args.seed is None:
            raise ValueError("--method mc requires --n, --trials and --seed")
        report = expected_trace_moment_mc(args.n, args.t, args.k, args.trials,
                                          args.seed, threads=args.threads)
        n = args.n
    row = {
        "schema_version": SCHEMA_VERSION, "subcommand": "moments",
        "n": n, "t": args.t, "k": args.k, "b": binomial_sum(n, args.t),
        "method": report.method, "function": desc,
        "value": report.value, "stderr": report.stderr,
        "bound_ratio": report.bound_ratio,
        "trials": report.trials or None, "seed": args.seed,
    }
    return MOMENTS_FIELDS, [row], 0


# ---------------------------------------------------------- claim1-sweep

CLAIM1_FIELDS = [
    "schema_version", "subcommand", "kind", "n", "t", "t_rule", "b", "trials",
    "median_norm", "max_norm", "ref_scale", "ratio", "unconverged", "eps",
    "seed", "tol", "max_iter",
]


def run_claim1_sweep(
    ns: list[int],
    t_rule: float,
    trials: int,
    seed: int,
    tol: float = 1e-8,
    max_iter: int = 10000,
    threads: int = 1,
    include_family: str | None = None,
    eps: float | None = None,
) -> list[dict]:
    """Median spectral norm of F_T over random functions, per n, against sqrt(n B / 2^n).

    T = floor(t_rule * n).  Norms run matrix-free at every size so the whole
    grid exercises one code path; per-trial seeds derive from the root seed
    in (n, trial) order.  eps plays no role in the measurement and is only
    echoed into the output rows.
    """
    if not 0.0 < t_rule <= 0.5:
        raise ValueError(f"t_rule must lie in (0, 0.5], got {t_rule}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    all_seeds = boolfn.derive_seeds(seed, len(ns) * trials)
    rows = []
    for i, n in enumerate(ns):
        t = int(t_rule * n)
        b = binomial_sum(n, t)
        ref = math.sqrt(n * b / (1 << n))
        block = all_seeds[i * trials:(i + 1) * trials]

        def one(s: int):
            f = boolfn.sample_uniform(n, s)
            return spectral_norm(build_matrix_free(f, t), tol=tol, max_iter=max_iter, seed=s)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                ests = list(pool.map(one, block))
        else:
            ests = [one(s) for s in block]
        norms = np.array([e.value for e in ests])
        base = {
            "schema_version": SCHEMA_VERSION, "subcommand": "claim1-sweep",
            "n": n, "t": t, "t_rule": t_rule, "b": b, "eps": eps,
            "seed": seed, "tol": tol, "max_iter": max_iter,
        }
        rows.append(base | {
            "kind": "random", "trials": trials,
            "median_norm": float(np.median(norms)), "max_norm": float(norms.max()),
            "ref_scale": ref, "ratio": float(np.median(norms)) / ref,
            "unconverged": sum(not e.converged for e in ests),
        })
        if include_family is not None:
            f = boolfn.make_family(include_family, n)
            est = spectral_norm(build_matrix_free(f, t), tol=tol, max_iter=max_iter, seed=seed)
            rows.append(base | {
                "kind": include_family, "trials": 1,
                "median_norm": est.value, "max_norm": est.value,
                "ref_scale": ref, "ratio": est.value / ref,
                "unconverged": 0 if est.converged else 1,
            })
    return rows


def cmd_claim1(args) -> tuple[list[str], list[dict], int]:
    ns = [int(v) for v in args.ns.split(",")]
    rows = run_claim1_sweep(ns, args.t_rule, args.trials, args.seed, tol=args.tol,
                            max_iter=args.max_iter, threads=args.threads,
                            include_family=args.include_family, eps=args.eps)
    return CLAIM1_FIELDS, rows, 0


# --------------------------------------------------------- claim2-verify

CLAIM2_FIELDS = [
    "schema_version", "subcommand", "mode", "n", "t", "m", "r", "parts", "b",
    "total", "bound", "ratio", "budget", "trials", "seed", "tuple", "even",
    "mean", "ok",
]


def _parse_parts(text: str) -> PartitionSpec:
    try:
        parts = tuple(tuple(int(v) for v in group.split(",")) for group in text.split("|"))
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}; expected e.g. '1,2|3,4'") from None
    m = max(i for p in parts for i in p)
    return PartitionSpec(m=m, parts=parts)


def cmd_claim2(args) -> tuple[list[str], list[dict], int]:
    base = {"schema_version": SCHEMA_VERSION, "subcommand": "claim2-verify", "n": args.n}
    if args.evenness:
        if args.m is None or args.trials is None or args.seed is None:
            raise ValueError("--evenness requires --m, --trials and --seed")
        report = evenness_check(args.n, args.m, args.trials, args.seed)
        rows = [
            base | {
                "mode": "evenness", "m": args.m, "trials": args.trials, "seed": args.seed,
                "tuple": ",".join(str(v) for v in e.xs), "even": e.even,
                "mean": e.mean, "ok": e.ok,
            }
            for e in report.entries
        ]
        return CLAIM2_FIELDS, rows, 0 if report.all_ok else 1
    if args.t is None:
        raise ValueError("partition mode requires --t")
    if args.parts:
        spec = _parse_parts(args.parts)
        if args.m is not None and args.m != spec.m:
            raise ValueError(f"--m {args.m} disagrees with --parts covering 1..{spec.m}")
    elif args.m is not None:
        spec = PartitionSpec.single(args.m)
    else:
        raise ValueError("provide --parts or --m")
    res = claim2_bruteforce(args.n, args.t, spec)
    row = base | {
        "mode": "partition", "t": args.t, "m": res.m, "r": res.r,
        "parts": "|".join(",".join(str(i) for i in p) for p in spec.parts),
        "b": res.b, "total": res.total, "bound": res.bound,
        "ratio": res.total / res.bound, "budget": res.budget,
    }
    return CLAIM2_FIELDS, [row], 0


# ------------------------------------------------------------------ main

def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="querybound",
        description="Oracle interrogation, truncated-Fourier spectral norms, "
                    "query lower bounds and trace-moment experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vandam", help="simulate the oracle-interrogation routine")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--eps", type=float, help="pick T = choose_t(n, eps)")
    p.add_argument("--x", help="hidden input as a bitstring, default all zeros")
    p.add_argument("--exact", action="store_true", help="exact probability only (default)")
    p.add_argument("--shots", type=int, help="also sample this many measurements")
    p.add_argument("--seed", type=int)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_vandam)

    p = sub.add_parser("norm", help="spectral norm of the truncated Fourier operator")
    p.add_argument("--family", choices=boolfn.FAMILIES)
    p.add_argument("--function-file")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--dense", action="store_true", help="force the dense eigensolver")
    p.add_argument("--matrix-free", action="store_true", help="force power iteration")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0, help="power-iteration start vector seed")
    _add_output_flags(p)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("certify", help="query lower bounds from norm thresholds")
    p.add_argument("--family", choices=boolfn.FAMILIES)
    p.add_argument("--function-file")
    p.add_argument("--n", type=int)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, help="certify this many random functions")
    p.add_argument("--include-family", choices=boolfn.FAMILIES,
                   help="inject a named family as trial 0 of the sweep")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--threads", type=int, default=1)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("moments", help="trace moments of the truncated operator")
    p.add_argument("--method", choices=("exact", "exhaustive", "mc"), required=True)
    p.add_argument("--family", choices=boolfn.FAMILIES)
    p.add_argument("--function-file")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=1)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("claim1-sweep", help="norm scaling over random functions across n")
    p.add_argument("--ns", required=True, help="comma-separated n values, e.g. 10,12,14")
    p.add_argument("--t-rule", type=float, default=0.4, help="T = floor(t_rule * n)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--eps", type=float, help="recorded in output only")
    p.add_argument("--include-family", choices=boolfn.FAMILIES)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--threads", type=int, default=1)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_claim1)

    p = sub.add_parser("claim2-verify", help="exact partition-sum enumeration / evenness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--parts", help="partition of 1..m, e.g. '1,2|3,4'")
    p.add_argument("--evenness", action="store_true",
                   help="check product expectations over sampled tuples instead")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    _add_output_flags(p)
    p.set_defaults(fn=cmd_claim2)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fieldnames, rows, code = args.fn(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    write_rows(fieldnames, rows, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
