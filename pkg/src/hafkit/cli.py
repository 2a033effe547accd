"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (not encodable, or a property
suite recorded failures), 2 usage or parse error, 3 precondition violated,
4 size cap exceeded, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import gbs, hafper, induced, matrixio, verify
from .errors import NumericalError, ParseError, PreconditionError, SizeLimitError

EXIT_OK = 0
EXIT_NOT_ENCODABLE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_SIZE = 4
EXIT_NUMERICAL = 5


def format_real(x: float) -> str:
    # 17 significant digits round-trip any double; "+ 0.0" drops the sign of -0.0
    return format(float(x) + 0.0, ".17g")


def format_complex(z: complex) -> str:
    return f"{format_real(z.real)} {format_real(z.imag)}"


def cmd_haf(args) -> int:
    a = matrixio.read_matrix(args.input)
    print(format_complex(hafper.hafnian(a)))
    return EXIT_OK


def cmd_haf_block(args) -> int:
    ab = matrixio.read_block(args.input)
    print(format_complex(hafper.hafnian_block(ab)))
    return EXIT_OK


def cmd_per(args) -> int:
    b = matrixio.read_matrix(args.input)
    print(format_complex(hafper.permanent(b, args.algorithm)))
    return EXIT_OK


def cmd_induced(args) -> int:
    q = matrixio.read_matrix(args.input)
    if args.kind == "scaled":
        out = induced.induced_p(q, args.r).data
    else:
        out = induced.induced_c(q, args.r)
    sys.stdout.write(matrixio.dumps_matrix(out))
    return EXIT_OK


def cmd_encode(args) -> int:
    r = matrixio.read_matrix(args.input)
    report = gbs.check_encodable(r, args.c)
    by_condition = {f.condition: f for f in report.failures}
    for cond in (1, 2):
        f = by_condition.get(cond)
        print(f"condition {cond}: " + ("pass" if f is None else f"FAIL {f.message}"))
    interval = f"(0, {format_real(report.c_max)})"
    if args.c is None:
        print(f"condition 3: c must lie in {interval}")
    else:
        f = by_condition.get(3)
        verdict = "pass" if f is None else "FAIL"
        print(f"condition 3: c={format_real(args.c)} in {interval}: {verdict}")
    print(f"c_max: {format_real(report.c_max)}")
    print(f"encodable: {'yes' if report.encodable else 'no'}")
    if report.sigma is not None:
        spectrum = " ".join(format_real(v) for v in report.sigma.symplectic_eigenvalues)
        print(f"symplectic_eigenvalues: {spectrum}")
        boundary = report.sigma.boundary_modes()
        if boundary:
            print(f"boundary modes (symplectic eigenvalue at 1/2): {boundary}", file=sys.stderr)
        print("sigma:")
        sys.stdout.write(matrixio.dumps_matrix(report.sigma.sigma))
    if report.failed_conditions() & {1, 2}:
        return EXIT_NOT_ENCODABLE
    if 3 in report.failed_conditions():
        return EXIT_PRECONDITION
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = verify.run_suite(args.suite, args.trials, args.seed)
    ok = True
    for rep in reports:
        path = None
        if rep.witness is not None and args.witness_dir is not None:
            out_dir = Path(args.witness_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            target = out_dir / f"{rep.property_name}-seed{args.seed}-trial{rep.witness['trial']}.json"
            target.write_text(json.dumps(rep.witness, indent=1))
            path = str(target)
        print(rep.to_line(path))
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_NOT_ENCODABLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hafkit",
        description="Hafnians, permanents, induced matrices and GBS encodability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("haf", help="hafnian of a symmetric matrix file")
    p.add_argument("input")
    p.set_defaults(func=cmd_haf)

    p = sub.add_parser("haf-block", help="hafnian of A(Y, B) from a block file")
    p.add_argument("input")
    p.set_defaults(func=cmd_haf_block)

    p = sub.add_parser("per", help="permanent of a square matrix file")
    p.add_argument("input")
    p.add_argument("--algorithm", choices=("ryser", "naive"), default="ryser")
    p.set_defaults(func=cmd_per)

    p = sub.add_parser("induced", help="r-th induced matrix, written as a matrix file")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True)
    p.add_argument(
        "--kind", choices=("scaled", "permanent-scaled"), default="scaled",
        help="scaled: per/sqrt(mu mu) entries; permanent-scaled: raw permanents",
    )
    p.set_defaults(func=cmd_induced)

    p = sub.add_parser("encode", help="GBS encodability report for R")
    p.add_argument("input")
    p.add_argument("--c", type=float, default=None, help="scale; builds sigma when valid")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify", help="run randomised property suites")
    p.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--witness-dir", default=None, help="write failing instances here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
