"""Exact rational linear algebra and polyhedron vertex/ray enumeration.

Everything here works over ``fractions.Fraction``; no floating point is used.
A polyhedron is the solution set of ``A x <= b``. Extreme points are found by
solving every full-rank n x n row subsystem and keeping the feasible
solutions; extremal rays come from the one-dimensional kernels of rank n-1
row subsystems.  Subsets are walked depth first and a branch is cut as soon
as its rows become linearly dependent, which keeps the brute force cheap for
the ~20 x 6 systems used in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction
Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


class RaysNotPointed(ValueError):
    """The recession cone contains a line, so extremal rays are undefined."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating point input is not accepted; use 'p/q' strings")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[Vector, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "RationalMatrix":
        data = tuple(tuple(to_fraction(v) for v in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch(f"row of length {len(r)} in a matrix with {ncols} columns")
        return cls(data, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RationalMatrix":
        return cls.from_rows([[0] * n for _ in range(m)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(-v for v in r) for r in self.rows), self.ncols)

    def apply(self, x: Sequence) -> Vector:
        if len(x) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.ncols} columns")
        return tuple(sum((a * to_fraction(v) for a, v in zip(r, x)), Fraction(0)) for r in self.rows)

    def select(self, idx: Iterable[int]) -> "RationalMatrix":
        return RationalMatrix(tuple(self.rows[i] for i in idx), self.ncols)

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.ncols != self.ncols:
            raise DimensionMismatch("column counts differ")
        return RationalMatrix(self.rows + other.rows, self.ncols)


def _as_rows(M) -> list[list[Fraction]]:
    if isinstance(M, RationalMatrix):
        return [list(r) for r in M.rows]
    return [[to_fraction(v) for v in r] for r in M]


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    rows = _as_rows(M)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : M x = 0}, one vector per free column."""
    rows = _as_rows(M)
    if ncols is None:
        ncols = M.ncols if isinstance(M, RationalMatrix) else len(rows[0])
    red, piv = rref(rows) if rows else ([], [])
    basis = []
    for f in (c for c in range(ncols) if c not in piv):
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, piv):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_square(A, b: Sequence) -> Vector | None:
    """Unique solution of the square system A x = b, or None when singular."""
    rows = _as_rows(A)
    n = len(rows)
    if any(len(r) != n for r in rows) or len(b) != n:
        raise DimensionMismatch("solve_square needs a square system")
    aug = [r + [to_fraction(v)] for r, v in zip(rows, b)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        return None
    return tuple(red[i][n] for i in range(n))


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector whose
    first nonzero entry is positive."""
    v = [to_fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    return tuple(ints) if lead > 0 else tuple(-x for x in ints)


@dataclass(frozen=True)
class Polyhedron:
    """The set {x : A x <= b}.

    ``sign_rows`` marks the bound rows (-x_i <= 0 or -x_i <= -1); they are
    never tested strictly.  ``open_rhs`` optionally gives, for each other row,
    the right-hand side of the underlying strict inequality when the stored
    row is an integral tightening of it (a.x < c  <=>  a.x <= c - 1 on integer
    points).  Membership queries use ``open_rhs``; vertex enumeration uses b.
    """

    A: RationalMatrix
    b: Vector
    standard_form: bool = True
    sign_rows: frozenset[int] = frozenset()
    open_rhs: Vector | None = None
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.A.nrows < 1 or self.A.ncols < 1:
            raise ValueError("a polyhedron needs at least one row and one column")
        if len(self.b) != self.A.nrows:
            raise DimensionMismatch("b must have one entry per row of A")
        if self.open_rhs is not None and len(self.open_rhs) != self.A.nrows:
            raise DimensionMismatch("open_rhs must have one entry per row of A")

    @classmethod
    def build(cls, rows, b, *, sign_rows=(), open_rhs=None, labels=(), standard_form=True) -> "Polyhedron":
        A = RationalMatrix.from_rows(rows)
        return cls(
            A,
            tuple(to_fraction(v) for v in b),
            standard_form,
            frozenset(sign_rows),
            None if open_rhs is None else tuple(to_fraction(v) for v in open_rhs),
            tuple(labels),
        )

    @property
    def dim(self) -> int:
        return self.A.ncols

    def permuted(self, order: Sequence[int]) -> "Polyhedron":
        """The same polyhedron with its rows listed in another order."""
        inv = {old: new for new, old in enumerate(order)}
        return Polyhedron(
            self.A.select(order),
            tuple(self.b[i] for i in order),
            self.standard_form,
            frozenset(inv[i] for i in self.sign_rows),
            None if self.open_rhs is None else tuple(self.open_rhs[i] for i in order),
            tuple(self.labels[i] for i in order) if self.labels else (),
        )


def contains(P: Polyhedron, x: Sequence, strict: bool = False) -> bool:
    if len(x) != P.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} for a polyhedron in dimension {P.dim}")
    vals = P.A.apply(x)
    rhs = P.open_rhs if P.open_rhs is not None else P.b
    for i, v in enumerate(vals):
        if i in P.sign_rows:
            if v > P.b[i]:
                return False
        elif v > rhs[i] or (strict and v == rhs[i]):
            return False
    return True


def tight_rows(P: Polyhedron, x: Sequence) -> list[int]:
    return [i for i, v in enumerate(P.A.apply(x)) if v == P.b[i]]


# Fraction-free elimination state used by the subset walk.  Rows are integer
# lists [a_0..a_{n-1}, rhs]; the basis is kept in reduced echelon form, each
# row carrying its pivot column.


def _integer_rows(P: Polyhedron, with_rhs: bool) -> list[list[int]]:
    out = []
    for r, bi in zip(P.A.rows, P.b):
        vals = list(r) + ([bi] if with_rhs else [])
        den = math.lcm(*(v.denominator for v in vals))
        out.append([int(v * den) for v in vals])
    return out


def _reduce(row: list[int], basis: list[tuple[int, list[int]]], n: int) -> list[int]:
    row = list(row)
    for pc, prow in basis:
        c = row[pc]
        if c:
            p = prow[pc]
            row = [p * a - c * q for a, q in zip(row, prow)]
    g = math.gcd(*row)
    if g > 1:
        row = [a // g for a in row]
    return row


def _add(basis: list[tuple[int, list[int]]], row: list[int], n: int) -> list[tuple[int, list[int]]] | None:
    """Return the basis extended by row, or None if row is dependent (in its
    first n entries)."""
    red = _reduce(row, basis, n)
    pc = next((c for c in range(n) if red[c]), None)
    if pc is None:
        return None
    new = []
    for qc, qrow in basis:
        c = qrow[pc]
        if c:
            p = red[pc]
            qrow = [p * a - c * b for a, b in zip(qrow, red)]
            g = math.gcd(*qrow)
            if g > 1:
                qrow = [a // g for a in qrow]
        new.append((qc, qrow))
    new.append((pc, red))
    return new


def _independent_subsets(rows: list[list[int]], n: int, size: int):
    """Yield the echelon basis of every linearly independent row subset of
    the given size (columns 0..n-1 decide independence)."""

    def walk(start: int, basis):
        if len(basis) == size:
            yield basis
            return
        need = size - len(basis)
        for i in range(start, len(rows) - need + 1):
            nb = _add(basis, rows[i], n)
            if nb is not None:
                yield from walk(i + 1, nb)

    yield from walk(0, [])


_INT64_SAFE = 1 << 62


def _hadamard_ok(rows: list[list[int]], k: int) -> bool:
    """True if every k x k minor of the rows (and products used by the
    batched elimination) fits comfortably in int64."""
    if not rows:
        return True
    norm = max(math.isqrt(sum(v * v for v in r)) + 1 for r in rows)
    return norm ** (k + 1) * 4 < _INT64_SAFE


def det_batch(mats: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of integer k x k matrices (Bareiss)."""
    M = np.array(mats, dtype=np.int64, copy=True)
    N, k, _ = M.shape
    if k == 0:
        return np.ones(N, dtype=np.int64)
    sign = np.ones(N, dtype=np.int64)
    prev = np.ones(N, dtype=np.int64)
    dead = np.zeros(N, dtype=bool)
    idx = np.arange(N)
    for c in range(k):
        nz = M[:, c:, c] != 0
        has = nz.any(axis=1)
        dead |= ~has
        piv = c + nz.argmax(axis=1)
        swap = has & (piv != c)
        if swap.any():
            rc = M[idx, c].copy()
            M[idx, c] = M[idx, piv]
            M[idx, piv] = rc
            sign[swap] *= -1
        if dead.any():
            M[dead] = np.eye(k, dtype=np.int64)
            prev[dead] = 1
        p = M[:, c, c].copy()
        if c + 1 < k:
            sub = M[:, c + 1 :, c + 1 :]
            num = p[:, None, None] * sub - M[:, c + 1 :, c][:, :, None] * M[:, c, c + 1 :][:, None, :]
            M[:, c + 1 :, c + 1 :] = num // prev[:, None, None]
        prev = p
    det = sign * M[:, k - 1, k - 1]
    det[dead] = 0
    return det


def _extreme_points_batched(P: Polyhedron, rows: list[list[int]]) -> list[Vector]:
    n = P.dim
    R = np.array(rows, dtype=np.int64)
    A, b = R[:, :n], R[:, n]
    found: set[Vector] = set()
    for chunk in _combination_chunks(len(rows), n):
        sub = A[chunk]
        rhs = b[chunk]
        det = det_batch(sub)
        keep = det != 0
        sub, rhs, det = sub[keep], rhs[keep], det[keep]
        if not len(det):
            continue
        # Cramer numerators: x_i = num_i / det
        nums = np.empty((len(det), n), dtype=np.int64)
        for i in range(n):
            rep = sub.copy()
            rep[:, :, i] = rhs
            nums[:, i] = det_batch(rep)
        s = np.sign(det)
        # feasibility A x <= b  <=>  s * (A num) <= s * det * b
        lhs = (nums @ A.T) * s[:, None]
        ok = (lhs <= (np.abs(det)[:, None] * b[None, :])).all(axis=1)
        for num, d in zip(nums[ok], det[ok]):
            found.add(tuple(Fraction(int(v), int(d)) for v in num))
    return sorted(found)


def _combination_chunks(m: int, k: int, size: int = 200_000):
    it = combinations(range(m), k)
    while True:
        block = list(_take(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _take(it, n):
    for _ in range(n):
        try:
            yield next(it)
        except StopIteration:
            return


def extreme_points(P: Polyhedron) -> list[Vector]:
    """All vertices of P, deduplicated and sorted lexicographically."""
    n = P.dim
    rows = _integer_rows(P, with_rhs=True)
    if _hadamard_ok(rows, n):
        return _extreme_points_batched(P, rows)
    found: set[Vector] = set()
    for basis in _independent_subsets(rows, n, n):
        x = [Fraction(0)] * n
        for pc, r in basis:
            x[pc] = Fraction(r[n], r[pc])
        x = tuple(x)
        if x not in found and all(v <= bi for v, bi in zip(P.A.apply(x), P.b)):
            found.add(x)
    return sorted(found)


def _ray_candidates_batched(rows: list[list[int]], n: int):
    R = np.array(rows, dtype=np.int64)
    for chunk in _combination_chunks(len(rows), n - 1):
        sub = R[chunk]
        # generalized cross product: x_j = (-1)^j det(sub without column j)
        x = np.empty((len(chunk), n), dtype=np.int64)
        for j in range(n):
            cols = [c for c in range(n) if c != j]
            x[:, j] = (-1) ** j * det_batch(sub[:, :, cols])
        x = x[(x != 0).any(axis=1)]
        for sgn in (1, -1):
            y = sgn * x
            ok = ((y @ R.T) <= 0).all(axis=1)
            for v in y[ok]:
                yield [int(t) for t in v]


def _ray_candidates_walk(rows: list[list[int]], n: int):
    for basis in _independent_subsets(rows, n, n - 1):
        pivots = {pc for pc, _ in basis}
        f = next(c for c in range(n) if c not in pivots)
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for pc, r in basis:
            x[pc] = Fraction(-r[f], r[pc])
        for sgn in (1, -1):
            y = [sgn * v for v in x]
            if all(sum(a * t for a, t in zip(r, y)) <= 0 for r in rows):
                yield y


def extremal_rays(P: Polyhedron) -> list[tuple[int, ...]]:
    """Primitive generators of the extreme rays of the cone {x : A x <= 0}."""
    n = P.dim
    if rank(P.A) < n:
        raise RaysNotPointed("the recession cone contains a line (rank(A) < n)")
    rows = _integer_rows(P, with_rhs=False)
    gen = _ray_candidates_batched(rows, n) if _hadamard_ok(rows, n) else _ray_candidates_walk(rows, n)
    found = {primitive_integer(y) for y in gen}
    # With full rank no nonzero y has A y = 0; kept as a guard.
    for y in found:
        if all(v >= 0 for v in P.A.apply(y)):
            raise RaysNotPointed(f"both {y} and its negative lie in the cone")
    return sorted(found)


def in_conv_cone(x: Sequence, points: Sequence[Sequence], rays: Sequence[Sequence]) -> bool:
    """Exact test whether x = sum mu_i p_i + sum lambda_j y_j with mu >= 0,
    sum mu = 1, lambda >= 0.

    Enumerates basic solutions of the equality system (Caratheodory), which is
    fine for the small instances it is used on.
    """
    x = [to_fraction(v) for v in x]
    n = len(x)
    gens = [list(map(to_fraction, p)) + [Fraction(1)] for p in points]
    gens += [list(map(to_fraction, y)) + [Fraction(0)] for y in rays]
    target = x + [Fraction(1)]
    m = len(gens)
    # columns are generators; pick independent column subsets of size <= n+1
    cols = [[g[i] for g in gens] for i in range(n + 1)]
    for size in range(1, min(m, n + 1) + 1):
        for idx in combinations(range(m), size):
            sub = [[cols[i][j] for j in idx] for i in range(n + 1)]
            aug = [r + [t] for r, t in zip(sub, target)]
            red, piv = rref(aug)
            if size in piv:
                continue
            if len(piv) < size:
                continue
            coef = [Fraction(0)] * size
            for row, pc in zip(red, piv):
                coef[pc] = row[size]
            if all(c >= 0 for c in coef):
                return True
    return False
