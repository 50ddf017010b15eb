"""Linear stability systems for rank-3 arm lengths and their decompositions.

Coordinates are alpha = (a11, a21, a31, a12, a22, a32).  Every stability
row is homogeneous (``row . alpha < 0`` for stable data); the polyhedra built
here use the closed rows ``<= 0`` together with the bounds alpha >= 1, which
is the convention under which the vertex sets E1, E2, E3 and ray sets S1,
S2, S3 come out.  The alpha11 = 0 case replaces the bound on a11 by a11 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from ..exactgeom import Polyhedron, solve_square
from .arms import ArmLengths, InclusionPattern, UnsupportedPattern, as_arms


class NotRepresentable(ValueError):
    pass


def _idx(i: int, j: int) -> int:
    return (i - 1) + 3 * (j - 1)


def _row(terms: dict[tuple[int, int], int]) -> list[int]:
    r = [0] * 6
    for (i, j), c in terms.items():
        r[_idx(i, j)] += c
    return r


def _others(i: int, j: int | None = None) -> list[int]:
    return [k for k in (1, 2, 3) if k != i and k != j]


def base_rows() -> list[tuple[str, list[int]]]:
    """Stability rows that hold for every arrangement (strict form row < 0)."""
    rows = []
    for i in (1, 2, 3):
        j, k = _others(i)
        rows.append((f"plane{i}", _row({(i, 1): 1, (i, 2): 2, (j, 1): -2, (j, 2): -1, (k, 1): -2, (k, 2): -1})))
        rows.append((f"point{i}", _row({(i, 1): 2, (i, 2): 1, (j, 1): -1, (j, 2): -2, (k, 1): -1, (k, 2): -2})))
    for k in (1, 2, 3):
        i, j = _others(k)
        # intersection point of planes i and j
        t = {(i, 2): 1, (j, 2): 1, (k, 2): -2}
        for m in (1, 2, 3):
            t[(m, 1)] = t.get((m, 1), 0) - 1
        rows.append((f"meet{i}{j}", _row(t)))
    for k in (1, 2, 3):
        i, j = _others(k)
        # span of points i and j
        t = {(i, 1): 1, (j, 1): 1, (k, 1): -2}
        for m in (1, 2, 3):
            t[(m, 2)] = t.get((m, 2), 0) - 1
        rows.append((f"join{i}{j}", _row(t)))
    return rows


def inclusion_rows(i: int, j: int) -> list[tuple[str, list[int]]]:
    """Rows forced by U_i1 in U_j2: the plane j and the line i gain weight."""
    (k,) = _others(i, j)
    r_line = {(i, 1): 2, (i, 2): 1, (j, 2): 1, (j, 1): -1, (k, 1): -1, (k, 2): -2}
    r_plane = {(j, 2): 2, (i, 1): 1, (j, 1): 1, (k, 1): -2, (k, 2): -1, (i, 2): -1}
    return [(f"incl{i}{j}a", _row(r_line)), (f"incl{i}{j}b", _row(r_plane))]


def stability_rows(incl: InclusionPattern) -> list[tuple[str, list[int]]]:
    rows = base_rows()
    for i, j in incl:
        rows.extend(inclusion_rows(i, j))
    return rows


def inequality_system(incl: InclusionPattern, *, zero_a11: bool = False) -> Polyhedron:
    """Closed stability polyhedron in standard form: rows <= 0, alpha >= 1
    (or a11 = 0 when ``zero_a11``)."""
    if not incl.is_case_shape():
        raise UnsupportedPattern(f"inclusion pattern {incl} is not one of the three case shapes")
    named = stability_rows(incl)
    labels = [n for n, _ in named]
    rows = [r for _, r in named]
    b = [0] * len(rows)
    sign = []
    for c in range(6):
        e = [0] * 6
        e[c] = -1
        sign.append(len(rows))
        rows.append(e)
        labels.append(f"bound{c}")
        b.append(0 if (zero_a11 and c == 0) else -1)
    if zero_a11:
        e = [0] * 6
        e[0] = 1
        sign.append(len(rows))
        rows.append(e)
        labels.append("zero0")
        b.append(0)
    return Polyhedron.build(rows, b, sign_rows=sign, labels=labels)


def is_stable_alpha(alpha: Sequence[int], incl: InclusionPattern) -> bool:
    """Strict validity of every stability row."""
    return all(sum(c * v for c, v in zip(r, alpha)) < 0 for _, r in stability_rows(incl))


# The named cases.  Each carries its start vectors and extremal rays in the
# order used by the parametrizations of the closed forms.


@dataclass(frozen=True)
class Case:
    name: str
    incl: InclusionPattern
    zero_a11: bool
    starts: tuple[ArmLengths, ...]
    rays: tuple[tuple[int, ...], ...]

    def system(self) -> Polyhedron:
        return inequality_system(self.incl, zero_a11=self.zero_a11)


CASE1 = Case(
    "case1",
    InclusionPattern.of((1, 2), (1, 3)),
    False,
    ((1, 1, 1, 1, 1, 1), (1, 2, 2, 1, 1, 1), (1, 2, 2, 2, 1, 1)),
    ((1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 0), (0, 0, 1, 1, 0, 0)),
)
CASE2 = Case(
    "case2",
    InclusionPattern.of((1, 2), (2, 1)),
    False,
    ((1, 1, 1, 1, 1, 1), (1, 1, 2, 1, 1, 1), (1, 1, 1, 1, 1, 2)),
    ((1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1), (1, 0, 0, 0, 0, 1), (0, 0, 1, 1, 0, 0), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0)),
)
CASE3 = Case(
    "case3",
    InclusionPattern(),
    True,
    ((0, 1, 1, 1, 1, 1), (0, 1, 1, 2, 1, 1), (0, 2, 2, 3, 2, 2)),
    ((0, 0, 0, 1, 1, 1), (0, 1, 0, 1, 0, 0), (0, 0, 1, 1, 0, 0), (0, 0, 1, 0, 1, 0), (0, 1, 0, 0, 0, 1)),
)
CASES = {c.name: c for c in (CASE1, CASE2, CASE3)}

# The eight rays shared by all nine inclusion cases with the start point
# (1,1,1,1,1,1); the generic (no inclusion) system has exactly these rays.
EIGHT_RAYS = (
    (1, 1, 1, 0, 0, 0),
    (0, 0, 0, 1, 1, 1),
    (1, 0, 0, 0, 1, 0),
    (0, 1, 0, 0, 0, 1),
    (0, 0, 1, 1, 0, 0),
    (1, 0, 0, 0, 0, 1),
    (0, 1, 0, 1, 0, 0),
    (0, 0, 1, 0, 1, 0),
)


def residue_class(alpha: Sequence[int]) -> int:
    return (sum(alpha[:3]) - sum(alpha[3:])) % 3


def decompose_solution(case: Case | str, alpha: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Write alpha = starts[s] + sum n_i rays[i] with n in N^r.

    Returns (s, n).  The start is singled out by the residue of
    a11+a21+a31-a12-a22-a32 modulo 3 (each ray contributes 0 or +-3), and
    the coefficients are then unique because the rays are linearly
    independent.
    """
    if isinstance(case, str):
        case = CASES[case]
    alpha = as_arms(alpha)
    if case.zero_a11 and alpha[0] != 0:
        raise NotRepresentable(f"{alpha} has a11 != 0")
    res = residue_class(alpha)
    matches = [s for s, v in enumerate(case.starts) if residue_class(v) == res]
    if len(matches) != 1:
        raise NotRepresentable(f"no unique start vector in residue class {res}")
    s = matches[0]
    diff = [x - y for x, y in zip(alpha, case.starts[s])]
    coords = [c for c in range(6) if not (case.zero_a11 and c == 0)]
    inv = _ray_inverse(case)
    if inv is None:
        raise NotRepresentable("ray matrix is singular")
    sol = [sum(a * diff[c] for a, c in zip(row, coords)) for row in inv]
    n = []
    for v in sol:
        if v.denominator != 1 or v < 0:
            raise NotRepresentable(f"{alpha} is not a nonnegative integer combination from start {s}")
        n.append(int(v))
    return s, tuple(n)


@lru_cache(maxsize=None)
def _ray_inverse(case: Case) -> tuple[tuple[Fraction, ...], ...] | None:
    """Inverse of the square matrix with the rays as columns, restricted to
    the coordinates the case uses."""
    coords = [c for c in range(6) if not (case.zero_a11 and c == 0)]
    r = len(case.rays)
    M = [[case.rays[i][c] for i in range(r)] for c in coords]
    cols = []
    for e in range(len(coords)):
        col = solve_square(M, [int(e == t) for t in range(len(coords))])
        if col is None:
            return None
        cols.append(col)
    return tuple(tuple(cols[c][i] for c in range(len(coords))) for i in range(r))


def compose_solution(case: Case | str, start: int, n: Sequence[int]) -> ArmLengths:
    if isinstance(case, str):
        case = CASES[case]
    v = list(case.starts[start])
    for k, w in zip(n, case.rays):
        v = [x + k * y for x, y in zip(v, w)]
    return tuple(v)  # type: ignore[return-value]


def strict_solutions(case: Case, bound: int):
    """All integer alpha with entries <= bound satisfying the case strictly,
    in lexicographic order."""
    import numpy as np

    lo = [0 if (case.zero_a11 and c == 0) else 1 for c in range(6)]
    hi = [0 if (case.zero_a11 and c == 0) else bound for c in range(6)]
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 6)
    A = np.array([r for _, r in stability_rows(case.incl)], dtype=np.int64)
    keep = np.all(grid @ A.T < 0, axis=1)
    for row in grid[keep]:
        yield tuple(int(v) for v in row)


def rays_are_independent(case: Case) -> bool:
    from ..exactgeom import rank

    return rank([list(map(Fraction, w)) for w in case.rays]) == len(case.rays)


__all__ = [
    "CASE1",
    "CASE2",
    "CASE3",
    "CASES",
    "Case",
    "EIGHT_RAYS",
    "NotRepresentable",
    "base_rows",
    "compose_solution",
    "decompose_solution",
    "inclusion_rows",
    "inequality_system",
    "is_stable_alpha",
    "residue_class",
    "stability_rows",
    "strict_solutions",
]
