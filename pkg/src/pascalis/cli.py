"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 size guard, 3 a mathematical claim failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .conjectures import SCHEMA, campaign_cells, campaign_csv, campaign_report, run_campaign
from .cp_spectral import (
    DEFAULT_SEED,
    cp_decompose_generalized_pascal,
    cp_decompose_hilbert,
    cp_decompose_pascal,
    matrix_pd_exact,
    pd_verdict,
    reconstruction_error,
    strong_cp_rank,
    tensor_as_matrix,
)
from .exact_arith import factor_smooth, format_exact, integer_mth_root
from .pascal_lu import LUError, closed_form_L, closed_form_U, det_f_m2, lu_csv, lu_Tm, matmul, build_Tm
from .resultant import (
    DEFAULT_MACAULAY_CAP,
    HARD_MACAULAY_CAP,
    char_poly_dim2,
    dump_matrix,
    macaulay_build,
    real_roots,
    sylvester_matrix,
    tensor_determinant,
)
from .tensor_core import (
    FeasibilityError,
    build_generalized_hilbert,
    build_generalized_pascal,
    build_pascal,
    hadamard_power,
    binary_form_coefficients,
    slice_fix_first,
)

EXIT_OK, EXIT_USAGE, EXIT_GUARD, EXIT_FALSIFIED = 0, 1, 2, 3


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _cap(args) -> int:
    return HARD_MACAULAY_CAP if args.force else DEFAULT_MACAULAY_CAP


def _presentation(value: int, m: int) -> str:
    g = integer_mth_root(value, m) if value > 0 else None
    if g is not None and g > 1:
        return f"[{factor_smooth(g)}]^{m}"
    return str(factor_smooth(value)) if value > 0 else "0"


def cmd_det(args) -> int:
    t = build_pascal(args.m, args.n)
    if args.dump_matrix:
        if args.n == 2:
            p, q = binary_form_coefficients(t)
            sys.stderr.write(dump_matrix(sylvester_matrix(p, q)))
        else:
            mats = macaulay_build(t, cap=_cap(args))
            sys.stderr.write(dump_matrix(mats.numerator) + "--\n" + dump_matrix(mats.denominator))
    res = tensor_determinant(t, cap=_cap(args))
    out = {"schema": SCHEMA, "command": "det", "status": "pass", "m": args.m, "n": args.n}
    out.update(res.as_dict())
    if args.factor:
        out["factorization"] = _presentation(res.absolute, args.m)
    if args.json:
        _emit(out)
    else:
        print(f"f({args.m},{args.n}) = {res.absolute}")
        print(f"signed = {res.signed}  [{res.method}; {res.note}]")
        if args.factor:
            print(f"       = {out['factorization']}")
    return EXIT_OK


def cmd_lu(args) -> int:
    m = args.m
    try:
        f = lu_Tm(m)
    except LUError as exc:
        print(f"LU failed for T_{m}: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    diag = f.diagonal()
    U = closed_form_U(m)
    L = closed_form_L(m, U)
    value = det_f_m2(m)
    flags = {
        "U_closed_form": f.U == [[Fraction(v) for v in row] for row in U],
        "L_closed_form": f.L == L,
        "LU_equals_T": matmul(L, U) == build_Tm(m),
        "sign": f.sign == (-1) ** (m * (m - 1) // 2),
        "f_equals_factorial_power": value == math.factorial(m - 1) ** m,
    }
    ok = all(flags.values())
    if args.csv:
        sys.stdout.write(lu_csv([(m, diag, value)]))
    elif args.json:
        _emit(
            {
                "schema": SCHEMA,
                "command": "lu",
                "status": "pass" if ok else "fail",
                "m": m,
                "diag_U": [format_exact(d) for d in diag],
                "sign": f.sign,
                "f_m2": str(value),
                "flags": flags,
            }
        )
    else:
        print("r\tu_rr\tclosed_form\tmatch")
        for r, d in enumerate(diag):
            print(f"{r + 1}\t{format_exact(d)}\t{U[r][r]}\t{d == U[r][r]}")
        print(f"f({m},2) = {value} = ({m - 1}!)^{m}")
        for name, v in flags.items():
            print(f"{name}: {'pass' if v else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_charpoly(args) -> int:
    t = build_pascal(args.m, 2)
    p = char_poly_dim2(t)
    roots = real_roots(p, 1e-12)
    det = tensor_determinant(t)
    checks = {
        "degree": p.degree == 2 * (args.m - 1),
        "constant_term_is_det": abs(p.coeffs[0]) == det.absolute,
    }
    if args.m % 2 == 0:
        checks["real_roots_positive"] = all(r > 1e-8 for r in roots)
    ok = all(checks.values())
    if args.json:
        _emit(
            {
                "schema": SCHEMA,
                "command": "charpoly",
                "status": "pass" if ok else "fail",
                "m": args.m,
                "coefficients": [str(c) for c in p.coeffs],
                "real_roots": {"probe": roots},
                "checks": checks,
            }
        )
    else:
        print(f"p(lambda) = {p}")
        print("real roots ~ " + ", ".join(f"{r:.12g}" for r in roots))
        for name, v in checks.items():
            print(f"{name}: {'pass' if v else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_cp(args) -> int:
    cp = cp_decompose_pascal(args.m, args.n)
    err = reconstruction_error(cp, build_pascal(args.m, args.n))
    rank, spans = strong_cp_rank(cp)
    out = {
        "schema": SCHEMA,
        "command": "cp",
        "status": "pass" if err <= 1e-8 and spans else "fail",
        "order": args.m,
        "dim": args.n,
        "nodes": {"probe": cp.nodes.tolist()},
        "weights": {"probe": cp.weights.tolist()},
        "vectors": {"probe": cp.vectors.tolist()},
        "reconstruction_err": {"probe": err},
        "rank": rank,
        "spans": spans,
    }
    if args.json:
        _emit(out)
    else:
        print(f"{cp.rank} generating vectors, rank {rank}, spans R^{args.n}: {spans}")
        print(f"max relative reconstruction error: {err:.3e}")
        for t, w, u in zip(cp.nodes, cp.weights, cp.vectors):
            print(f"t={t:.12g}\tw={w:.12g}\tu=" + " ".join(f"{x:.6g}" for x in u))
    return EXIT_OK if out["status"] == "pass" else EXIT_FALSIFIED


def _parse_vector(text: str) -> list[float]:
    return [float(Fraction(x)) for x in text.split(",") if x.strip()]


def cmd_certify(args) -> int:
    m, n = args.m, args.n
    extra: dict[str, object] = {}
    checks: dict[str, bool] = {}
    if args.family == "pascal":
        tensor, cp = build_pascal(m, n), cp_decompose_pascal(m, n)
        member = tensor_as_matrix(build_pascal(2, n))
        lower = build_pascal(m - 1, n) if m > 2 else None
    elif args.family == "gpascal":
        c = _parse_vector(args.gvec) if args.gvec else [float(i) for i in range(n)]
        if len(c) != n:
            print(f"generating vector has length {len(c)}, expected {n}", file=sys.stderr)
            return EXIT_USAGE
        tensor = build_generalized_pascal(m, c)
        if all(ci == int(ci) for ci in c):
            cp = cp_decompose_generalized_pascal(m, c, nodes=args.nodes)
        else:
            cp = None
            extra["cp_note"] = "fractional generating vector: finite quadrature is not exact"
        member = [[Fraction(v) for v in row] for row in tensor_as_matrix(build_generalized_pascal(2, c))]
        lower = build_generalized_pascal(m - 1, c) if m > 2 else None
        extra["generating_vector"] = c
        if c[0] != 0:
            extra["hypothesis_warning"] = "c_1 != 0: slicing does not preserve the family"
    else:
        c = Fraction(args.c)
        tensor, cp = build_generalized_hilbert(m, n, c), cp_decompose_hilbert(m, n, c)
        member = tensor_as_matrix(build_generalized_hilbert(2, n, c))
        lower = build_generalized_hilbert(m - 1, n, c) if m > 2 else None
        extra["c"] = format_exact(c)

    if args.alpha is not None:
        alpha = float(Fraction(args.alpha))
        tensor = hadamard_power(tensor, alpha)
        lower = hadamard_power(lower, alpha) if lower is not None else None
        member = [[Fraction(float(v) ** alpha) for v in row] for row in member]
        cp = None
        extra["alpha"] = alpha

    checks["member_matrix_pd"] = matrix_pd_exact(member)
    if lower is not None:
        sliced = slice_fix_first(tensor, 1)
        if tensor.exact:
            checks["slice_inherence"] = sliced.entries == lower.entries
        else:
            checks["slice_inherence"] = all(
                math.isclose(sliced.entries[k], v, rel_tol=1e-12) for k, v in lower.items()
            )
    verdict = pd_verdict(tensor, cp, compute_det=tensor.exact, det_cap=_cap(args), seed=args.seed)
    if cp is not None:
        checks["cp_constructed"] = verdict.is_cp_constructed
        checks["spans"] = verdict.strong_cp
        if m % 2 == 0:
            checks["pd_concluded"] = bool(verdict.pd_concluded)
    else:
        verdict.notes.append("complete positivity is assumed from the family, not constructed")
    ok = all(checks.values())
    out = {"schema": SCHEMA, "command": "certify", "status": "pass" if ok else "fail"}
    out.update(verdict.as_dict())
    out["family"] = args.family
    out.update(extra)
    out["checks"] = checks
    _emit(out)
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_conjectures(args) -> int:
    cells = campaign_cells(args.m_max, args.n_max, args.n_max_m3)
    results = run_campaign(cells, jobs=args.jobs, cap=_cap(args))
    if args.csv:
        sys.stdout.write(campaign_csv(results))
        report = campaign_report(results)
    else:
        report = campaign_report(results, timings=args.timings)
        _emit(report)
    return EXIT_OK if report["status"] == "pass" else EXIT_FALSIFIED


BENCH_SUITES = {
    "det-n3": lambda: [(f"det m={m} n=3", lambda m=m: tensor_determinant(build_pascal(m, 3))) for m in range(3, 10)],
    "det-n2": lambda: [(f"det m={m} n=2", lambda m=m: tensor_determinant(build_pascal(m, 2))) for m in range(3, 31)],
    "lu": lambda: [(f"lu m={m}", lambda m=m: det_f_m2(m)) for m in range(3, 31)],
    "empty": lambda: [],
}


def cmd_bench(args) -> int:
    rows = []
    for name, fn in BENCH_SUITES[args.suite]():
        start = time.perf_counter()
        fn()
        rows.append((name, time.perf_counter() - start))
    if args.json:
        _emit(
            {
                "schema": SCHEMA,
                "command": "bench",
                "status": "pass",
                "suite": args.suite,
                "rows": [{"case": c, "seconds": {"probe": s}} for c, s in rows],
            }
        )
    else:
        print("suite\tcase\tseconds")
        for c, s in rows:
            print(f"{args.suite}\t{c}\t{s:.6f}")
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--csv", action="store_true", help="CSV output where supported")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="seed for numeric probes")
    common.add_argument(
        "--jobs",
        type=_positive_int,
        default=int(os.environ.get("PASCALIS_JOBS", "1")),
        help="parallel workers (default $PASCALIS_JOBS or 1)",
    )
    common.add_argument("--force", action="store_true", help="raise the size guard to the hard cap")

    parser = argparse.ArgumentParser(prog="pascalis", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", parents=[common], help="exact determinant f(m, n) of a Pascal tensor")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--factor", action="store_true", help="print the prime factorization")
    p.add_argument("--dump-matrix", action="store_true", help="write resultant matrices to stderr")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("lu", parents=[common], help="LU factorization of T_m and f(m, 2)")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_lu)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial of Pascal (m, 2)")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("cp", parents=[common], help="finite CP decomposition of Pascal (m, n)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_cp)

    p = sub.add_parser("certify", parents=[common], help="CP / strong-CP / PD evidence for a family member")
    p.add_argument("family", choices=["pascal", "gpascal", "ghilbert"])
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--c", default="1", help="generalized Hilbert parameter (rational)")
    p.add_argument("--gvec", help="generating vector c_1,...,c_n for gpascal")
    p.add_argument("--alpha", help="fractional Hadamard exponent")
    p.add_argument("--nodes", type=int, help="quadrature nodes for gpascal")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("conjectures", parents=[common], help="conjecture campaign over f(m, n)")
    p.add_argument("--m-max", type=int, default=9)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--n-max-m3", type=int, default=4, help="extend n along m = 3")
    p.add_argument("--timings", action="store_true", help="include wall-clock times (not byte-stable)")
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("bench", parents=[common], help="timing table")
    p.add_argument("suite", choices=sorted(BENCH_SUITES))
    p.set_defaults(func=cmd_bench)
    return parser


def _validate(args) -> str | None:
    m, n = getattr(args, "m", None), getattr(args, "n", None)
    if args.command == "det" and (m < 2 or n < 2):
        return "det needs m >= 2 and n >= 2"
    if args.command in ("lu", "charpoly") and m < (3 if args.command == "lu" else 2):
        return f"{args.command} needs m >= {3 if args.command == 'lu' else 2}"
    if args.command in ("cp", "certify") and (m < 2 or n < 1):
        return f"{args.command} needs m >= 2 and n >= 1"
    if args.command == "certify" and n < 2:
        return "certify needs n >= 2"
    return None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    problem = _validate(args)
    if problem:
        print(f"pascalis: error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except FeasibilityError as exc:
        print(f"pascalis: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OverflowError) as exc:
        print(f"pascalis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
