"""Command line: chi, series, polyhedron, filtration, verify.

Every command builds one record (command, inputs, results) and prints it
as tsv or json only once it is complete.  Rationals are printed as "p/q".
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import rank2
from .exactgeom import Polyhedron, RaysNotPointed, extremal_rays, extreme_points, format_rational, to_fraction
from .filtrations import (
    FiltrationError,
    chern,
    discriminant_normalized,
    discriminant_working,
    dump_triple,
    load_triple,
    standard_position,
    triple_to_json,
)
from .quiverrep import Stability, triple_stability
from .rank3.counting import chi_rank3, series_rank3
from .series import InvalidResidue
from .verify import POLYHEDRON_CASES, SUITES, named_polyhedron, run_suite


class UsageError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _render(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    return value


def _tsv_cell(value) -> str:
    if isinstance(value, list):
        return "(" + ",".join(_tsv_cell(v) for v in value) + ")"
    return str(value)


def emit(record: dict, fmt: str, table: tuple[str, list[list]] | None = None) -> str:
    """Serialize a record; ``table`` is (header, rows) for row-shaped results."""
    record = _render(record)
    if fmt == "json":
        return json.dumps(record, sort_keys=True, indent=2)
    lines = [f"# {record['command']}"]
    for k in sorted(record["inputs"]):
        lines.append(f"# {k}\t{_tsv_cell(record['inputs'][k])}")
    if table is not None:
        header, rows = table
        lines.append(header)
        lines.extend("\t".join(_tsv_cell(_render(c)) for c in row) for row in rows)
    else:
        for k in sorted(record["results"]):
            lines.append(f"{k}\t{_tsv_cell(record['results'][k])}")
    return "\n".join(lines)


# commands


def cmd_chi(rank: int, delta: int):
    if rank == 2:
        n = -delta
        if delta >= 0 or n % 4 not in (0, 3):
            raise UsageError(f"rank 2 needs delta < 0 with -delta = 0 or 3 mod 4, got {delta}")
        results = {"chi": rank2.chi_rank2(delta), "hurwitz_check": rank2.chi_from_hurwitz(n)}
    elif rank == 3:
        if delta > 0 or (-delta) % 6 not in (0, 4):
            raise UsageError(f"rank 3 needs delta <= 0 with -delta = 0 or 4 mod 6, got {delta}")
        results = {"chi": chi_rank3(delta)}
    else:
        raise UsageError(f"rank must be 2 or 3, got {rank}")
    return {"command": "chi", "inputs": {"rank": rank, "delta": delta}, "results": results}, None


def cmd_series(rank: int, residue: int, depth: int):
    if depth < 1:
        raise UsageError("depth must be at least 1")
    try:
        s = rank2.series_rank2(residue, depth) if rank == 2 else series_rank3(residue, depth)
    except InvalidResidue as exc:
        raise UsageError(str(exc)) from None
    rows = [[e, c] for e, c in s]
    record = {
        "command": "series",
        "inputs": {"rank": rank, "residue": residue, "depth": depth},
        "results": {"terms": rows},
    }
    return record, ("exponent\tcoefficient", rows)


def parse_matrix_file(path: str | Path) -> Polyhedron:
    """First line "m n", then m rows of n rationals, then one row of m
    rationals for b; describes A x <= b."""
    text = Path(path).read_text().splitlines()
    lines = [(n + 1, ln.split()) for n, ln in enumerate(text) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise UsageError(f"{path}: empty matrix file", 1)

    def nums(lineno, toks, want):
        if len(toks) != want:
            raise UsageError(f"{path}: line {lineno}: expected {want} entries, found {len(toks)}", 1)
        try:
            return [to_fraction(t) for t in toks]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"{path}: line {lineno}: {exc}", 1) from None

    lineno, head = lines[0]
    if len(head) != 2 or not all(t.isdigit() for t in head):
        raise UsageError(f"{path}: line {lineno}: header must be 'm n'", 1)
    m, n = map(int, head)
    if len(lines) != m + 2:
        raise UsageError(f"{path}: expected {m} matrix rows and one row for b after the header, found {len(lines) - 1} rows", 1)
    A = [nums(ln, toks, n) for ln, toks in lines[1 : m + 1]]
    b = nums(lines[m + 1][0], lines[m + 1][1], m)
    return Polyhedron.build(A, b)


def cmd_polyhedron(case: str | None, matrix: str | None):
    if (case is None) == (matrix is None):
        raise UsageError("give exactly one of --case or --matrix")
    if case is not None:
        try:
            P = named_polyhedron(case)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        inputs = {"case": case}
    else:
        P = parse_matrix_file(matrix)
        inputs = {"matrix": str(matrix)}
    points = sorted(extreme_points(P))
    try:
        rays = sorted(extremal_rays(P))
    except RaysNotPointed as exc:
        raise UsageError(f"recession cone is not pointed: {exc}", 1) from None
    rows = [["point", list(p)] for p in points] + [["ray", list(r)] for r in rays]
    record = {"command": "polyhedron", "inputs": inputs, "results": {"points": points, "rays": rays}}
    return record, ("kind\tvector", rows)


_STABILITY_TEXT = {
    Stability.STABLE: "stable",
    Stability.STRICTLY_SEMISTABLE: "strictly_semistable",
    Stability.UNSTABLE: "unstable",
}


def cmd_filtration(path: str, action: str):
    try:
        t = load_triple(path)
    except FiltrationError as exc:
        raise UsageError(f"{path}: {exc}", 1) from None
    if action == "chern":
        c = chern(t)
        results = {"c1": c.c1, "c2": c.c2, "rank": c.rank}
    elif action == "disc":
        c = chern(t)
        results = {"delta": discriminant_working(t), "normalized": discriminant_normalized(c)}
    elif action == "stable":
        results = {"stability": _STABILITY_TEXT[triple_stability(t)]}
    elif action == "standardize":
        results = {"triple": triple_to_json(standard_position(t))}
    else:
        raise UsageError(f"unknown action {action!r}")
    return {"command": f"filtration {action}", "inputs": {"path": str(path)}, "results": results}, None


def cmd_verify(suite: str):
    checks = run_suite(suite)
    rows = [["PASS" if c.passed else "FAIL", c.name, c.detail] for c in checks]
    record = {
        "command": "verify",
        "inputs": {"suite": suite},
        "results": {"checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
                    "all_passed": all(c.passed for c in checks)},
    }
    return record, ("status\tcheck\tdetail", rows)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricmoduli", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chi", help="Euler characteristic for one discriminant")
    c.add_argument("--rank", type=int, choices=(2, 3), required=True)
    c.add_argument("--delta", type=int, required=True, help="working discriminant (<= 0)")

    s = sub.add_parser("series", help="generating function coefficients")
    s.add_argument("--rank", type=int, choices=(2, 3), required=True)
    s.add_argument("--residue", type=int, required=True, help="|delta| class: 0/3 mod 4 or 0/4 mod 6")
    s.add_argument("--depth", type=int, required=True, help="number of coefficients")

    h = sub.add_parser("polyhedron", help="extreme points and extremal rays")
    h.add_argument("--case", choices=POLYHEDRON_CASES)
    h.add_argument("--matrix", help="matrix file: 'm n', m rows of A, one row of b")

    f = sub.add_parser("filtration", help="evaluate a filtration triple file")
    f.add_argument("path")
    f.add_argument("action", choices=("chern", "disc", "stable", "standardize"))

    v = sub.add_parser("verify", help="run self-checks")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")

    for sp in (c, s, h, f, v):
        sp.add_argument("--format", choices=("tsv", "json"), default=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "chi":
            record, table = cmd_chi(args.rank, args.delta)
        elif args.command == "series":
            record, table = cmd_series(args.rank, args.residue, args.depth)
        elif args.command == "polyhedron":
            record, table = cmd_polyhedron(args.case, args.matrix)
        elif args.command == "filtration":
            record, table = cmd_filtration(args.path, args.action)
        else:
            record, table = cmd_verify(args.suite)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(emit(record, args.format, table))
    if args.command == "verify" and not record["results"]["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
