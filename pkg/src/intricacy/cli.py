"""Command-line front end.

Subcommands: entropy, profile, intricacy, coeffs, construct, sweep, census,
maximize.  Seeds are mandatory for every stochastic subcommand; any command
run twice with identical flags produces byte-identical data files.

Exit codes: 0 success, 2 parse/validation error, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys

from . import experiments
from .coefficients import (CoefficientTable, coefficient_table, dn_law,
                           parse_family, validate_coefficients)
from .construction import (ConstructionSpec, DEFAULT_SUPPORT_CAP,
                           m_from_target, sample_sparse_system)
from .laws import (CapExceededError, DEFAULT_SUBSET_CAP, LawValidationError,
                   SystemLaw, entropy, entropy_profile_exact,
                   entropy_profile_sampled)
from .profiles import deficit_report

EXIT_VALIDATION = 2
EXIT_CAP = 3


def _out_stream(args):
    if args.out and args.out != "-":
        return open(args.out, "w")
    # stdout must survive the with-block
    return contextlib.nullcontext(sys.stdout)


def _load_law(path: str) -> SystemLaw:
    with open(path) as fh:
        return SystemLaw.from_json_dict(json.load(fh))


def _families(spec: str):
    return [(s.strip(), parse_family(s.strip())) for s in spec.split(",")]


def cmd_entropy(args) -> int:
    law = _load_law(args.law)
    h = entropy(law)
    x = h / (law.N * math.log(law.d)) if law.N else 0.0
    print(f"entropy_nats={h!r}, x={x!r}")
    return 0


def cmd_profile(args) -> int:
    law = _load_law(args.law)
    if args.sampled:
        if args.seed is None:
            raise SystemExit("--seed is required with --sampled")
        sizes = range(law.N + 1)
        prof = entropy_profile_sampled(law, sizes, args.samples, args.seed)
    else:
        prof = entropy_profile_exact(law, cap=args.cap_subsets)
    with _out_stream(args) as out:
        if args.format == "json":
            payload = {"N": prof.N, "values": prof.values.tolist()}
            if prof.stderr is not None:
                payload["stderr"] = prof.stderr.tolist()
            json.dump(payload, out)
            out.write("\n")
        else:
            out.write("k,h,stderr\n")
            for k in range(prof.N + 1):
                se = "" if prof.stderr is None else repr(float(prof.stderr[k]))
                out.write(f"{k},{float(prof.values[k])!r},{se}\n")
    return 0


def cmd_intricacy(args) -> int:
    law = _load_law(args.law)
    if law.N > args.cap_subsets and not args.sampled:
        print(f"N={law.N} exceeds the subset cap {args.cap_subsets}; "
              "rerun with --sampled or raise --cap-subsets", file=sys.stderr)
        return EXIT_CAP
    from .laws import entropy_profile_exact as _exact
    profile = _exact(law, cap=args.cap_subsets)
    reports = [deficit_report(law, coefficient_table(measure, law.N),
                              family=name, profile=profile)
               for name, measure in _families(args.families)]
    with _out_stream(args) as out:
        if args.format == "json":
            json.dump([r.to_json_dict() for r in reports], out)
            out.write("\n")
        else:
            out.write("family,d,N,x,icn_x,deficit,normalized_intricacy\n")
            for r in reports:
                out.write(f"{r.family},{r.d},{r.N},{r.x!r},{r.icn_x!r},"
                          f"{r.deficit!r},{r.normalized_intricacy!r}\n")
    return 0


def cmd_coeffs(args) -> int:
    measure = parse_family(args.family)
    table: CoefficientTable = coefficient_table(measure, args.N)
    pred = coefficient_table(measure, args.N - 1) if args.N > 1 else None
    report = validate_coefficients(table, pred)
    law = dn_law(table)
    with _out_stream(args) as out:
        if args.format == "json":
            json.dump({"family": args.family, "N": args.N,
                       "c": table.c.tolist(), "dn": law.p.tolist(),
                       "valid": report.all_passed}, out)
            out.write("\n")
        else:
            out.write("k,c_k,dn_p_k\n")
            for k in range(args.N + 1):
                out.write(f"{k},{float(table.c[k])!r},{float(law.p[k])!r}\n")
    if not report.all_passed:
        print("coefficient validation FAILED", file=sys.stderr)
        return EXIT_VALIDATION
    return 0


def _spec_from_args(args) -> ConstructionSpec:
    if (args.M is None) == (args.x is None):
        raise SystemExit("exactly one of --M and --x is required")
    M = args.M if args.M is not None else m_from_target(args.x, args.N)
    return ConstructionSpec(args.d, args.N, M, args.seed)


def cmd_construct(args) -> int:
    spec = _spec_from_args(args)
    law = sample_sparse_system(spec, cap=args.cap_support)
    x_n = entropy(law) / (law.N * math.log(law.d))
    with _out_stream(args) as out:
        json.dump(law.to_json_dict(), out)
        out.write("\n")
    print(f"d={spec.d} N={spec.N} M={spec.M} seed={spec.seed} "
          f"support={law.support_size} x_N={x_n!r}", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    families = _families(args.families)
    N_list = _parse_range(args.N)
    seeds = _parse_range(args.seeds)
    records = experiments.convergence_sweep(
        families, args.d, args.x, N_list, seeds, subset_cap=args.cap_subsets)
    with _out_stream(args) as out:
        out.write(experiments.SWEEP_CSV_HEADER + "\n")
        for r in records:
            out.write(r.csv_row() + "\n")
    by_key = {}
    for r in records:
        by_key.setdefault((r.family, r.N), []).append(r.I_N)
    for (family, N), vals in sorted(by_key.items()):
        mean = sum(vals) / len(vals)
        print(f"seed-mean I_N family={family} N={N}: {mean!r}",
              file=sys.stderr)
    return 0


def cmd_census(args) -> int:
    spec = _spec_from_args(args)
    law = sample_sparse_system(spec, cap=args.cap_support)
    x = args.x if args.x is not None else spec.M / spec.N
    report = experiments.threshold_census(
        law, x, args.y, args.epsilon, args.samples, args.census_seed)
    with _out_stream(args) as out:
        out.write(experiments.CENSUS_CSV_HEADER + "\n")
        out.write(f"{args.family},{spec.d},{spec.N},{spec.M},{spec.seed},"
                  f"{report.y!r},{report.k},{report.epsilon!r},"
                  f"{report.samples},{report.fraction_near_uniform!r},"
                  f"{report.se_uniform!r},{report.fraction_determining!r},"
                  f"{report.se_determining!r}\n")
    return 0


def cmd_maximize(args) -> int:
    measure = parse_family(args.family)
    table = coefficient_table(measure, args.N)
    result = experiments.maximizer_search(
        args.d, args.N, table, restarts=args.restarts,
        iterations=args.iterations, seed=args.seed,
        entropy_target=args.x, penalty_weight=args.penalty)
    with _out_stream(args) as out:
        json.dump({"family": args.family, "d": args.d, "N": args.N,
                   "intricacy_nats": result.intricacy,
                   "certificate": result.certificate,
                   "law": result.law.to_json_dict()}, out)
        out.write("\n")
    print(f"best I={result.intricacy!r} certificate={result.certificate!r}",
          file=sys.stderr)
    return 0


def _parse_range(text: str) -> list[int]:
    """Accepts '8', '8,12,16' or '8..16' (inclusive)."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intricacy",
        description="Intricacy functionals of finite discrete systems")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--out", default="-", help="output path ('-' = stdout)")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--threads", type=int, default=1,
                       help="worker pool size (output is order-independent)")
        p.add_argument("--cap-subsets", type=int, default=DEFAULT_SUBSET_CAP)
        p.add_argument("--cap-support", type=int, default=DEFAULT_SUPPORT_CAP)

    p = sub.add_parser("entropy", help="entropy of a law file")
    p.add_argument("law")
    common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("profile", help="entropy profile of a law file")
    p.add_argument("law")
    p.add_argument("--sampled", action="store_true")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int)
    common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("intricacy", help="deficit report per family")
    p.add_argument("law")
    p.add_argument("--families", default="est")
    p.add_argument("--sampled", action="store_true")
    common(p)
    p.set_defaults(func=cmd_intricacy)

    p = sub.add_parser("coeffs", help="coefficient table of a family")
    p.add_argument("--family", required=True)
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("construct", help="sample a sparse random system")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--seed", type=int, required=True)
    common(p, fmt=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="convergence sweep CSV")
    p.add_argument("--families", default="est")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--N", required=True, help="e.g. 8..16 or 8,12,16")
    p.add_argument("--seeds", required=True, help="e.g. 0..19")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("census", help="threshold census on a construction")
    p.add_argument("--family", default="est")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--census-seed", type=int, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--samples", type=int, default=1000)
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("maximize", help="stochastic maximizer search")
    p.add_argument("--family", default="est")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--iterations", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--x", type=float, help="optional entropy target")
    p.add_argument("--penalty", type=float, default=20.0)
    common(p)
    p.set_defaults(func=cmd_maximize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (LawValidationError, ValueError, json.JSONDecodeError,
            FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
