"""Command-line interface: ``bicyclo check | verify | sweep``.

Exit codes: 0 success, 1 usage or parameter error, 2 set/matrix oracle
disagreement, 3 capacity or I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from .cosets import CodeShape, multiplicative_order
from .errors import CapacityError, ParameterError
from .hyperbolic import (
    DUAL_TYPES,
    HyperbolicSpec,
    Threshold,
    contains_dual,
    delta_euclidean_np,
    delta_hermitian_np,
    dimension,
    primitive_length,
    quantum_params,
    sufficiency_audit,
    theorem_threshold,
    verify_lemma,
    verify_theorem_boundary,
)

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_IO = 0, 1, 2, 3

CSV_FIELDS = (
    "q", "n1", "n2", "m", "d", "dual_type", "threshold", "contains_dual", "k",
    "quantum_N", "quantum_K", "quantum_d_lower", "oracle_checked", "degenerate",
)  # fmt: skip
OPTIONAL_FIELDS = ("threshold", "k", "quantum_N", "quantum_K", "quantum_d_lower")


@dataclass
class SweepRow:
    q: int
    n1: int
    n2: int
    m: int
    d: int
    dual_type: str
    threshold: str | None
    contains_dual: bool
    k: int | None
    quantum_N: int | None
    quantum_K: int | None
    quantum_d_lower: int | None
    oracle_checked: bool
    degenerate: bool

    def to_json_dict(self) -> dict:
        """Field order follows CSV_FIELDS; absent optional fields are omitted."""
        d = asdict(self)
        return {f: d[f] for f in CSV_FIELDS if not (f in OPTIONAL_FIELDS and d[f] is None)}

    def to_csv_row(self) -> list[str]:
        out = []
        for f in CSV_FIELDS:
            v = getattr(self, f)
            out.append("" if v is None else ("true" if v is True else "false" if v is False else str(v)))
        return out

    @classmethod
    def from_json_dict(cls, d: dict) -> SweepRow:
        return cls(**{f.name: d.get(f.name) for f in fields(cls)})

    @classmethod
    def from_csv_row(cls, values: list[str]) -> SweepRow:
        raw = dict(zip(CSV_FIELDS, values))
        kw: dict = {}
        for f in CSV_FIELDS:
            v = raw[f]
            if f in ("contains_dual", "oracle_checked", "degenerate"):
                kw[f] = v == "true"
            elif f in ("dual_type", "threshold"):
                kw[f] = v or None
            else:
                kw[f] = int(v) if v != "" else None
        return cls(**kw)


def _threshold_for(spec: HyperbolicSpec, m: int) -> Threshold | None:
    if not spec.shape.is_square or not spec.narrow_sense or m <= 3:
        return None
    n = spec.shape.n1
    if spec.dual_type == "euclidean":
        return delta_euclidean_np(spec.q, n)
    return delta_hermitian_np(spec.q, n)


def build_row(spec: HyperbolicSpec, oracle: bool = False, m: int | None = None, threshold: Threshold | None = None):
    """Evaluate one spec.  Returns ``(row, oracle_report_or_None)``."""
    if m is None:
        m = multiplicative_order(spec.multiplier, math.lcm(spec.shape.n1, spec.shape.n2))
        threshold = _threshold_for(spec, m)
    ok = contains_dual(spec)
    qp = quantum_params(spec) if ok else None
    report = None
    if oracle:
        from .oracle import cross_check

        report = cross_check(spec)
    degenerate = bool(spec.degeneracies()) or (threshold is not None and threshold.floor < 2)
    row = SweepRow(
        q=spec.q,
        n1=spec.shape.n1,
        n2=spec.shape.n2,
        m=m,
        d=spec.d,
        dual_type=spec.dual_type,
        threshold=None if threshold is None else str(threshold),
        contains_dual=ok,
        k=dimension(spec),
        quantum_N=qp.N if qp else None,
        quantum_K=qp.K if qp else None,
        quantum_d_lower=qp.d_lower if qp else None,
        oracle_checked=report is not None,
        degenerate=degenerate,
    )
    return row, report


# -- argument parsing -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicyclo", description="Dual-containing bicyclic hyperbolic codes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="evaluate one code")
    c.add_argument("--q", type=int, required=True, help="base field size (Hermitian codes live over GF(q^2))")
    c.add_argument("--n1", type=int, required=True)
    c.add_argument("--n2", type=int, required=True)
    c.add_argument("--d", type=int, required=True, help="design distance")
    c.add_argument("--dual", choices=DUAL_TYPES, default="euclidean")
    c.add_argument("--a", type=int, default=0)
    c.add_argument("--b", type=int, default=0)
    c.add_argument("--oracle", action="store_true", help="also run the matrix-level check")
    c.add_argument("--format", choices=("json", "csv"), default="json")

    v = sub.add_parser("verify", help="check a closed-form result")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--m", type=int, required=True)
    v.add_argument(
        "--mode",
        required=True,
        choices=("euclidean", "hermitian", "lemma5", "lemma8", "corollary7", "corollary12-audit"),
    )
    v.add_argument("--n", type=_int_list, default=None, help="lengths for corollary modes (default: all admissible)")
    v.add_argument("--exhaustive", action="store_true", help="sweep every d instead of boundary checks")

    s = sub.add_parser("sweep", help="tabulate codes over (q, m, d)")
    s.add_argument("--q-list", type=_int_list, required=True)
    s.add_argument("--m-list", type=_int_list, required=True)
    s.add_argument("--dual", choices=DUAL_TYPES, default="euclidean")
    s.add_argument("--out", required=True, help="output file, '-' for stdout")
    s.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    s.add_argument("--exhaustive", action="store_true", help="d over 1..n instead of 2..threshold+1")
    s.add_argument("--oracle", action="store_true", help="cross-check rows small enough for the matrix oracle")
    s.add_argument("--jobs", type=int, default=1)
    return parser


# -- commands ---------------------------------------------------------------------


def _render(rows: list[SweepRow], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in rows:
            w.writerow(r.to_csv_row())
    else:
        for r in rows:
            buf.write(json.dumps(r.to_json_dict()) + "\n")
    return buf.getvalue()


def cmd_check(args) -> int:
    shape = CodeShape(args.n1, args.n2, args.q)
    spec = HyperbolicSpec(shape, args.d, args.dual, args.a, args.b)
    row, report = build_row(spec, oracle=args.oracle)
    if args.format == "json":
        sys.stdout.write(json.dumps(row.to_json_dict()) + "\n")
    else:
        sys.stdout.write(_render([row], "csv"))
    for reason in spec.degeneracies():
        print(f"note: degenerate input: {reason}", file=sys.stderr)
    if report is not None and not report.agrees:
        print(
            f"error: oracle disagreement: set predicate {report.set_predicate}, matrix predicate "
            f"{report.matrix_predicate}, |Z|={report.defining_size}, rank={report.rank}",
            file=sys.stderr,
        )
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.m <= 3:
        print(f"error: the closed-form results need m > 3 (got m={args.m})", file=sys.stderr)
        return EXIT_USAGE
    if args.mode in ("euclidean", "hermitian"):
        rep = verify_theorem_boundary(args.q, args.m, args.mode, exhaustive=args.exhaustive)
    elif args.mode in ("lemma5", "lemma8"):
        rep = verify_lemma(args.q, args.m, "euclidean" if args.mode == "lemma5" else "hermitian")
    else:
        mode = "euclidean" if args.mode == "corollary7" else "hermitian"
        rep = sufficiency_audit(args.q, args.m, mode, lengths=args.n, exhaustive=args.exhaustive)
    for line in rep.lines():
        print(line)
    print("PASS" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_DISAGREE


def _sweep_task(task):
    q, n, d, dual, m, oracle = task
    spec = HyperbolicSpec.square(n, q, d, dual)
    t = theorem_threshold(q, m, dual)
    use_oracle = oracle and n * n <= _column_cap()
    row, report = build_row(spec, oracle=use_oracle, m=m, threshold=t)
    return row, (report.agrees if report is not None else True)


def _column_cap() -> int:
    from .oracle import MATRIX_COLUMN_CAP

    return MATRIX_COLUMN_CAP


def sweep_rows(q_list, m_list, dual, exhaustive=False, oracle=False, jobs=1) -> tuple[list[SweepRow], bool]:
    tasks = []
    for q in sorted(set(q_list)):
        for m in sorted(set(m_list)):
            t = theorem_threshold(q, m, dual)
            n = primitive_length(q, m, dual)
            ds = range(1, n + 1) if exhaustive else range(2, t.numerator + 2)
            tasks.extend((q, n, d, dual, m, oracle) for d in ds)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_sweep_task(t) for t in tasks]
    return [r for r, _ in results], all(ok for _, ok in results)


def cmd_sweep(args) -> int:
    rows, agree = sweep_rows(args.q_list, args.m_list, args.dual, args.exhaustive, args.oracle, args.jobs)
    text = _render(rows, args.format)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    if not agree:
        print("error: set/matrix oracle disagreement in sweep", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    handler = {"check": cmd_check, "verify": cmd_verify, "sweep": cmd_sweep}[args.command]
    try:
        return handler(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
