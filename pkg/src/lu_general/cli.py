"""Command-line front end.

Subcommands::

    lu-general check  MATRIX [--mode general|unit-lower|unit-upper]
    lu-general factor MATRIX --out RECORD [--mode ...]
    lu-general verify MATRIX RECORD
    lu-general gen    --family F --n N [--rank R --seed S ...] --out MATRIX
    lu-general xcheck DIR [--count N] [--seed S]

Exit codes are stable: 0 success (factorization exists / checks pass),
1 the factorization does not exist or a verification failed, 2 usage or
input error.  Set ``LU_GENERAL_COLOR=1`` to colorize the per-k report
(coloring only; output content is unaffected).
"""

from __future__ import annotations

import argparse
import glob
import os
import sys

import jsonschema

from . import formats
from .analysis import existence_report
from .certify import certify_general, certify_pivoted, certify_unit
from .engine import (
    Factorization,
    NotFactorizable,
    PivotedFactorization,
    UnitFactorization,
    lu_full_pivot,
    lu_general,
    lu_partial_pivot,
    lu_unit_lower,
    lu_unit_upper,
)
from .errors import ParseError, ShapeError, SpecError
from .generate import FAMILIES, GenSpec, fixture_specs, gen_detailed
from .matrix import Matrix

EXIT_OK = 0
EXIT_NO_FACTORIZATION = 1
EXIT_INPUT_ERROR = 2

CHECK_MODES = ("general", "unit-lower", "unit-upper")


def _color_enabled() -> bool:
    return os.environ.get("LU_GENERAL_COLOR", "") not in ("", "0", "never")


def _verdict(ok: bool) -> str:
    word = "ok" if ok else "FAIL"
    if _color_enabled():
        return "\x1b[32m%s\x1b[0m" % word if ok else "\x1b[31m%s\x1b[0m" % word
    return word


def _load_matrix(args) -> Matrix:
    return formats.read_matrix_file(args.matrix, args.field, args.tol)


def cmd_check(args) -> int:
    mat = _load_matrix(args)
    if not mat.is_square:
        print("error: check requires a square matrix, got %dx%d" % (mat.rows, mat.cols), file=sys.stderr)
        return EXIT_INPUT_ERROR
    report = existence_report(mat)
    flag = {"general": "general_ok", "unit-lower": "unit_lower_ok", "unit-upper": "unit_upper_ok"}[args.mode]
    print("k  null(principal)  null(col-block)  null(row-block)  %s" % args.mode)
    for row in report.per_k:
        print(
            "%-2d %-16d %-16d %-16d %s"
            % (row.k, row.null_principal, row.null_col_block, row.null_row_block, _verdict(getattr(row, flag)))
        )
    exists = {
        "general": report.general_exists,
        "unit-lower": report.unit_lower_exists,
        "unit-upper": report.unit_upper_exists,
    }[args.mode]
    if report.tolerance is not None:
        print("tolerance: %r (float64 verdicts are advisory)" % report.tolerance)
    print("%s factorization %s" % (args.mode, "exists" if exists else "does not exist"))
    return EXIT_OK if exists else EXIT_NO_FACTORIZATION


def _run_engine(mat: Matrix, mode: str):
    return {
        "general": lu_general,
        "unit-lower": lu_unit_lower,
        "unit-upper": lu_unit_upper,
        "partial-pivot": lu_partial_pivot,
        "full-pivot": lu_full_pivot,
    }[mode](mat)


def build_record(mat: Matrix, mode: str, outcome) -> dict:
    record = {
        "schema_version": formats.SCHEMA_VERSION,
        "n": mat.rows,
        "cols": None if mat.is_square else mat.cols,
        "field": mat.field.kind,
        "mode": mode,
        "tolerance": None if mat.field.exact else mat.field.zero_tolerance,
        "matrix": formats.matrix_to_json(mat),
        "report": formats.report_to_json(existence_report(mat)) if mat.is_square and mat.rows >= 1 else None,
    }
    identity = tuple(range(1, mat.rows + 1))
    if isinstance(outcome, NotFactorizable):
        record["result"] = {
            "exists": False, "witness_k": outcome.witness_k,
            "L": None, "U": None, "rank": None, "row_map": None, "col_map": None,
        }
    elif isinstance(outcome, Factorization):
        record["result"] = {
            "exists": True, "witness_k": None,
            "L": formats.matrix_to_json(outcome.L), "U": formats.matrix_to_json(outcome.U),
            "rank": outcome.rank, "row_map": list(outcome.row_map), "col_map": list(outcome.col_map),
        }
    elif isinstance(outcome, UnitFactorization):
        record["result"] = {
            "exists": True, "witness_k": None,
            "L": formats.matrix_to_json(outcome.L), "U": formats.matrix_to_json(outcome.U),
            "rank": None, "row_map": list(outcome.row_map), "col_map": list(outcome.col_map),
        }
    else:
        assert isinstance(outcome, PivotedFactorization)
        record["result"] = {
            "exists": True, "witness_k": None,
            "L": formats.matrix_to_json(outcome.L), "U": formats.matrix_to_json(outcome.U),
            "rank": outcome.rank, "row_map": list(outcome.P), "col_map": list(outcome.Q),
        }
    if record["cols"] is None:
        del record["cols"]
    return record


def cmd_factor(args) -> int:
    mat = _load_matrix(args)
    if args.mode != "full-pivot" and not mat.is_square:
        print("error: mode %s requires a square matrix" % args.mode, file=sys.stderr)
        return EXIT_INPUT_ERROR
    outcome = _run_engine(mat, args.mode)
    record = build_record(mat, args.mode, outcome)
    formats.write_record(record, args.out)
    if isinstance(outcome, NotFactorizable):
        print("not factorizable (%s): condition fails at k=%d; record written to %s"
              % (outcome.family, outcome.witness_k, args.out))
        return EXIT_NO_FACTORIZATION
    rank = record["result"]["rank"]
    print("factorized (%s)%s; record written to %s"
          % (args.mode, "" if rank is None else " rank %d" % rank, args.out))
    return EXIT_OK


def _certify_record(record: dict, mat: Matrix):
    """Rehydrate the recorded factors and certify them against ``mat``."""
    res = record["result"]
    field_kind = record["field"]
    tol = record.get("tolerance")
    lmat = formats.matrix_from_json(res["L"], field_kind, tol)
    umat = formats.matrix_from_json(res["U"], field_kind, tol)
    mode = record.get("mode", "general")
    if mode == "general":
        return certify_general(mat, Factorization(
            L=lmat, U=umat, rank=res["rank"],
            row_map=tuple(res["row_map"]), col_map=tuple(res["col_map"]),
        ))
    if mode in ("unit-lower", "unit-upper"):
        return certify_unit(mat, UnitFactorization(
            L=lmat, U=umat, unit_side="lower" if mode == "unit-lower" else "upper",
            col_map=tuple(res["col_map"]), row_map=tuple(res["row_map"]),
        ))
    return certify_pivoted(mat, PivotedFactorization(
        P=tuple(res["row_map"]), Q=tuple(res["col_map"]),
        L=lmat, U=umat, rank=res["rank"],
    ))


def cmd_verify(args) -> int:
    mat = _load_matrix(args)
    record = formats.read_record(args.record)
    try:
        formats.validate_record(record)
    except jsonschema.ValidationError as exc:
        print("record schema violation: %s" % exc.message, file=sys.stderr)
        return EXIT_INPUT_ERROR
    cols = record.get("cols") or record["n"]
    if record["n"] != mat.rows or cols != mat.cols:
        print("error: record is for a %sx%s matrix, input is %dx%d"
              % (record["n"], cols, mat.rows, mat.cols), file=sys.stderr)
        return EXIT_INPUT_ERROR
    if record["field"] != mat.field.kind:
        print("error: record field %r differs from input field %r (pass --field)"
              % (record["field"], mat.field.kind), file=sys.stderr)
        return EXIT_INPUT_ERROR
    recorded = formats.matrix_from_json(record["matrix"], record["field"], record.get("tolerance"))
    if record["field"] == "rational" and recorded != mat:
        print("error: record matrix differs from the input matrix", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if not record["result"]["exists"]:
        witness = record["result"].get("witness_k")
        report = existence_report(mat)
        mode = record.get("mode", "general")
        exists = {
            "general": report.general_exists,
            "unit-lower": report.unit_lower_exists,
            "unit-upper": report.unit_upper_exists,
        }.get(mode, report.general_exists)
        if exists:
            print("record claims non-existence but the condition holds for all k")
            return EXIT_NO_FACTORIZATION
        print("non-existence verified%s" % ("" if witness is None else " (witness k=%d)" % witness))
        return EXIT_OK
    cert = _certify_record(record, mat)
    for flag in ("reconstruct_ok", "lower_tri_ok", "upper_tri_ok", "rank_revealing_ok", "sparsity_ok"):
        print("%-18s %s" % (flag, _verdict(getattr(cert, flag))))
    if cert.unit_diag_ok is not None:
        print("%-18s %s" % ("unit_diag_ok", _verdict(cert.unit_diag_ok)))
    if cert.max_residual is not None:
        print("max residual: %r" % cert.max_residual)
    for v in cert.violations:
        print("violation [%s] at %s: %s" % (v.check, v.position, v.detail))
    print("certificate %s" % ("passes" if cert.passed else "FAILS"))
    return EXIT_OK if cert.passed else EXIT_NO_FACTORIZATION


def cmd_gen(args) -> int:
    spec = GenSpec(
        n=args.n, rank=args.rank, seed=args.seed,
        entry_bound=args.entry_bound, family=args.family, cols=args.cols,
    )
    detail = gen_detailed(spec)
    mat = detail.matrix
    if args.field == "float64":
        mat = Matrix([[float(e) for e in row] for row in mat.to_rows()],
                     formats.float64(args.tol))
        formats.write_matrix_market(mat, args.out)
    else:
        formats.write_rational_csv(mat, args.out)
    note = "" if detail.witness_k is None else " (condition fails at k=%d)" % detail.witness_k
    print("wrote %dx%d %s matrix to %s%s" % (mat.rows, mat.cols, spec.family, args.out, note))
    return EXIT_OK


def cmd_xcheck(args) -> int:
    paths = sorted(glob.glob(os.path.join(args.fixtures, "*.json")))
    if not paths:
        print("error: no fixtures found in %s" % args.fixtures, file=sys.stderr)
        return EXIT_INPUT_ERROR
    if args.count is not None:
        if len(paths) < args.count:
            print("error: expected %d fixtures, found %d" % (args.count, len(paths)), file=sys.stderr)
            return EXIT_INPUT_ERROR
        paths = paths[: args.count]
    replay = None
    if args.seed is not None:
        replay = fixture_specs(len(paths), args.seed)
    agree = {(True, True): 0, (True, False): 0, (False, True): 0, (False, False): 0}
    mismatches = []
    for idx, path in enumerate(paths):
        record = formats.read_record(path)
        try:
            formats.validate_record(record)
        except jsonschema.ValidationError as exc:
            print("error: %s: schema violation: %s" % (path, exc.message), file=sys.stderr)
            return EXIT_INPUT_ERROR
        mat = formats.matrix_from_json(record["matrix"], record["field"], record.get("tolerance"))
        if replay is not None:
            spec, mode = replay[idx]
            expected = gen_detailed(spec).matrix
            if record.get("mode", "general") != mode or (record["field"] == "rational" and expected != mat):
                mismatches.append("%s: replayed generator output differs from fixture" % path)
                continue
        mode = record.get("mode", "general")
        outcome = _run_engine(mat, mode)
        engine_exists = not isinstance(outcome, NotFactorizable)
        oracle_exists = record["result"]["exists"]
        agree[(oracle_exists, engine_exists)] += 1
        if oracle_exists != engine_exists:
            mismatches.append("%s: oracle exists=%s, engine exists=%s" % (path, oracle_exists, engine_exists))
            continue
        if engine_exists and record["field"] == "rational" and mode in CHECK_MODES:
            ours = outcome.L.matmul(outcome.U)
            lmat = formats.matrix_from_json(record["result"]["L"], "rational")
            umat = formats.matrix_from_json(record["result"]["U"], "rational")
            theirs = lmat.matmul(umat)
            if ours != mat or theirs != mat:
                mismatches.append("%s: product reconstruction differs" % path)
    print("verdict match matrix (oracle x engine):")
    print("              engine yes   engine no")
    print("oracle yes    %-12d %d" % (agree[(True, True)], agree[(True, False)]))
    print("oracle no     %-12d %d" % (agree[(False, True)], agree[(False, False)]))
    for msg in mismatches:
        print("MISMATCH %s" % msg)
    total = len(paths)
    matched = total - len(mismatches)
    print("%d/%d fixtures match" % (matched, total))
    return EXIT_OK if not mismatches else EXIT_NO_FACTORIZATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lu-general",
                                     description="LU factorization without pivoting: existence checks, "
                                                 "rank-revealing factors, certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io_flags(p):
        p.add_argument("--field", choices=("rational", "float64"), default="rational")
        p.add_argument("--tol", type=float, default=None, help="float64 zero tolerance (absolute)")

    p_check = sub.add_parser("check", help="evaluate the existence condition per leading index")
    p_check.add_argument("matrix")
    p_check.add_argument("--mode", choices=CHECK_MODES, default="general")
    add_io_flags(p_check)
    p_check.set_defaults(func=cmd_check)

    p_factor = sub.add_parser("factor", help="factor a matrix and write an interchange record")
    p_factor.add_argument("matrix")
    p_factor.add_argument("--mode", choices=formats.MODES, default="general")
    p_factor.add_argument("--out", required=True)
    add_io_flags(p_factor)
    p_factor.set_defaults(func=cmd_factor)

    p_verify = sub.add_parser("verify", help="certify a recorded factorization against a matrix")
    p_verify.add_argument("matrix")
    p_verify.add_argument("record")
    add_io_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a structured test matrix")
    p_gen.add_argument("--family", choices=FAMILIES, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--rank", type=int, default=0)
    p_gen.add_argument("--cols", type=int, default=None)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--entry-bound", type=int, default=3)
    p_gen.add_argument("--out", required=True)
    add_io_flags(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_x = sub.add_parser("xcheck", help="differential check against a fixture directory")
    p_x.add_argument("fixtures")
    p_x.add_argument("--count", type=int, default=None)
    p_x.add_argument("--seed", type=int, default=None,
                     help="replay the fixture generator and require identical inputs")
    p_x.set_defaults(func=cmd_xcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ShapeError, SpecError, FileNotFoundError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
