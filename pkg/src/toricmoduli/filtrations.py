"""Descending Z-filtrations of a finite-dimensional rational vector space.

A toric bundle on the projective plane is a triple of descending filtrations
E^a(i) of one space E.  Filtrations are stored sparsely as a list of
``(index, subspace)`` steps: E(i) = E below the first index, the subspace of
step k holds on [i_k, i_{k+1}), the last subspace holds at i_m only, and
E(i) = 0 above it.  Steps are canonicalised to change points (E(i) != E(i-1))
ending with the zero subspace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .exactgeom import format_rational, nullspace, rank, rref, to_fraction


class FiltrationError(ValueError):
    pass


class NonIntegralChern(ArithmeticError):
    pass


class UnsupportedRank(ValueError):
    pass


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^r held by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_vectors(cls, r: int, vectors: Iterable[Sequence], *, strict: bool = True) -> "SubspaceBasis":
        vecs = [[to_fraction(v) for v in vec] for vec in vectors]
        for v in vecs:
            if len(v) != r:
                raise FiltrationError(f"vector of length {len(v)} in ambient dimension {r}")
        red, _ = rref(vecs) if vecs else ([], [])
        if strict and len(red) != len(vecs):
            raise FiltrationError("basis vectors are linearly dependent")
        return cls(r, tuple(tuple(row) for row in red))

    @classmethod
    def span(cls, r: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        return cls.from_vectors(r, vectors, strict=False)

    @classmethod
    def zero(cls, r: int) -> "SubspaceBasis":
        return cls(r, ())

    @classmethod
    def whole(cls, r: int) -> "SubspaceBasis":
        return cls.span(r, [[int(i == j) for j in range(r)] for i in range(r)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis.span(self.ambient_dim, list(self.basis) + list(other.basis))

    def __and__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return self.intersect(other)

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        if self.dim == 0 or other.dim == 0:
            return SubspaceBasis.zero(self.ambient_dim)
        # x = sum a_i u_i = sum b_j w_j ; kernel of [U^T | -W^T]
        r = self.ambient_dim
        cols = list(self.basis) + [tuple(-v for v in w) for w in other.basis]
        M = [[c[row] for c in cols] for row in range(r)]
        vecs = []
        for k in nullspace(M, len(cols)):
            vecs.append([sum(k[i] * self.basis[i][c] for i in range(self.dim)) for c in range(r)])
        return SubspaceBasis.span(r, vecs)

    def contains(self, other: "SubspaceBasis") -> bool:
        return (self + other).dim == self.dim

    def contains_vector(self, v: Sequence) -> bool:
        return self.contains(SubspaceBasis.span(self.ambient_dim, [v]))

    def transform(self, g: Sequence[Sequence]) -> "SubspaceBasis":
        """Image under the linear map x -> g x."""
        G = [[to_fraction(v) for v in row] for row in g]
        vecs = [[sum(G[i][j] * b[j] for j in range(self.ambient_dim)) for i in range(self.ambient_dim)] for b in self.basis]
        return SubspaceBasis.span(self.ambient_dim, vecs)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in b] for b in self.basis]


def dim_intersection(U: SubspaceBasis, W: SubspaceBasis) -> int:
    return U.dim + W.dim - (U + W).dim


@dataclass(frozen=True)
class Filtration:
    ambient_dim: int
    steps: tuple[tuple[int, SubspaceBasis], ...]

    def __post_init__(self):
        prev_i = None
        prev = SubspaceBasis.whole(self.ambient_dim)
        for k, (i, V) in enumerate(self.steps):
            if V.ambient_dim != self.ambient_dim:
                raise FiltrationError(f"step {k} (index {i}) lives in dimension {V.ambient_dim}, not {self.ambient_dim}")
            if prev_i is not None and i <= prev_i:
                raise FiltrationError(f"step {k}: index {i} does not increase past {prev_i}")
            if not prev.contains(V):
                raise FiltrationError(f"step {k} (index {i}) is not contained in the previous subspace")
            prev_i, prev = i, V

    @classmethod
    def make(cls, r: int, steps: Iterable[tuple[int, SubspaceBasis | Iterable[Sequence]]]) -> "Filtration":
        raw = []
        for i, V in steps:
            if not isinstance(V, SubspaceBasis):
                V = SubspaceBasis.from_vectors(r, V)
            raw.append((int(i), V))
        return cls(r, tuple(raw)).canonical()

    @classmethod
    def trivial(cls, r: int) -> "Filtration":
        """E for i <= 0 and 0 for i > 0."""
        return cls(r, ((1, SubspaceBasis.zero(r)),))

    def subspace_at(self, i: int) -> SubspaceBasis:
        if not self.steps or i < self.steps[0][0]:
            return SubspaceBasis.whole(self.ambient_dim)
        if i > self.steps[-1][0]:
            return SubspaceBasis.zero(self.ambient_dim)
        V = self.steps[0][1]
        for j, W in self.steps:
            if j > i:
                break
            V = W
        return V

    def dim_at(self, i: int) -> int:
        return self.subspace_at(i).dim

    def canonical(self) -> "Filtration":
        """Change-point form: one step per index where E(i) != E(i-1), the
        last one being the zero subspace."""
        if not self.steps:
            if self.ambient_dim == 0:
                return self
            raise FiltrationError("a filtration without steps never reaches 0")
        idx = sorted({i for i, _ in self.steps} | {self.steps[-1][0] + 1})
        out = []
        prev = SubspaceBasis.whole(self.ambient_dim)
        for i in idx:
            V = self.subspace_at(i)
            if V != prev:
                out.append((i, V))
                prev = V
        return Filtration(self.ambient_dim, tuple(out))

    def jumps(self) -> list[int]:
        """Indices i with graded_dim(i) > 0."""
        return [i - 1 for i, _ in self.canonical().steps]

    def shifted(self, k: int) -> "Filtration":
        return Filtration(self.ambient_dim, tuple((i + k, V) for i, V in self.steps))

    def transform(self, g) -> "Filtration":
        return Filtration(self.ambient_dim, tuple((i, V.transform(g)) for i, V in self.steps))


def graded_dim(f: Filtration, i: int) -> int:
    return f.dim_at(i) - f.dim_at(i + 1)


def pair_dim(fa: Filtration, fb: Filtration, i: int, j: int) -> int:
    return dim_intersection(fa.subspace_at(i), fb.subspace_at(j))


def pair_graded_dim(fa: Filtration, fb: Filtration, i: int, j: int) -> int:
    if fa.ambient_dim != fb.ambient_dim:
        raise FiltrationError("filtrations live in different spaces")
    d = lambda s, t: pair_dim(fa, fb, s, t)  # noqa: E731
    return d(i, j) - d(i + 1, j) - d(i, j + 1) + d(i + 1, j + 1)


@dataclass(frozen=True)
class FiltrationTriple:
    ambient_dim: int
    arms: tuple[Filtration, Filtration, Filtration]

    def __post_init__(self):
        if len(self.arms) != 3:
            raise FiltrationError(f"a triple needs exactly 3 arms, got {len(self.arms)}")
        for n, f in enumerate(self.arms):
            if f.ambient_dim != self.ambient_dim:
                raise FiltrationError(f"arm {n} has ambient dimension {f.ambient_dim}, expected {self.ambient_dim}")

    @classmethod
    def trivial(cls, r: int) -> "FiltrationTriple":
        t = Filtration.trivial(r)
        return cls(r, (t, t, t))

    def transform(self, g) -> "FiltrationTriple":
        return FiltrationTriple(self.ambient_dim, tuple(f.transform(g) for f in self.arms))  # type: ignore[arg-type]


@dataclass(frozen=True)
class ChernData:
    c1: int
    c2: int
    rank: int


def chern(t: FiltrationTriple) -> ChernData:
    arms = [f.canonical() for f in t.arms]
    jumps = [f.jumps() for f in arms]
    c1 = sum(i * graded_dim(f, i) for f, J in zip(arms, jumps) for i in J)
    sq = sum(i * i * graded_dim(f, i) for f, J in zip(arms, jumps) for i in J)
    cross = 0
    # each unordered pair of arms once
    for a in range(3):
        for b in range(a + 1, 3):
            for i in jumps[a]:
                for j in jumps[b]:
                    if i and j:
                        cross += i * j * pair_graded_dim(arms[a], arms[b], i, j)
    c2 = Fraction(c1 * c1, 2) - Fraction(sq, 2) - cross
    if c2.denominator != 1:
        raise NonIntegralChern(f"c2 = {c2} is not an integer")
    return ChernData(c1, int(c2), t.ambient_dim)


def discriminant_working(t: FiltrationTriple | ChernData) -> int:
    """2 c1^2 - 6 c2 in rank 3 and c1^2 - 4 c2 in rank 2."""
    c = t if isinstance(t, ChernData) else chern(t)
    if c.rank == 3:
        return 2 * c.c1 ** 2 - 6 * c.c2
    if c.rank == 2:
        return c.c1 ** 2 - 4 * c.c2
    raise UnsupportedRank(f"working discriminant is defined for rank 2 and 3, not {c.rank}")


def discriminant_normalized(c: ChernData) -> Fraction:
    r = c.rank
    if r < 1:
        raise UnsupportedRank("rank must be positive")
    return Fraction(2 * r * c.c2 - (r - 1) * c.c1 ** 2, 2 * r * r)


def working_to_normalized(delta: int, r: int) -> Fraction:
    if r == 3:
        return Fraction(-delta, 18)
    if r == 2:
        return Fraction(-delta, 8)
    raise UnsupportedRank(f"no working discriminant in rank {r}")


def shift(t: FiltrationTriple, k: Sequence[int]) -> FiltrationTriple:
    return FiltrationTriple(t.ambient_dim, tuple(f.shifted(int(s)) for f, s in zip(t.arms, k)))  # type: ignore[arg-type]


def standard_position(t: FiltrationTriple) -> FiltrationTriple:
    """Shift each arm so that E(i) = E exactly for i <= 0."""
    arms = []
    for f in t.arms:
        f = f.canonical()
        arms.append(f.shifted(1 - f.steps[0][0]) if f.steps else f)
    return FiltrationTriple(t.ambient_dim, tuple(arms))  # type: ignore[arg-type]


def twist_chern(c: ChernData, k: int) -> ChernData:
    r = c.rank
    return ChernData(c.c1 + r * k, c.c2 + (r - 1) * k * c.c1 + k * k * r * (r - 1) // 2, r)


# Convenience builders


def flag_arm(r: int, chain: Sequence[tuple[int, SubspaceBasis]]) -> Filtration:
    """Arm in standard position from (length, subspace) pairs listed from the
    largest proper subspace down: each subspace is repeated `length` times."""
    steps = []
    i = 1
    for length, V in chain:
        if length <= 0:
            continue
        steps.append((i, V))
        i += length
    steps.append((i, SubspaceBasis.zero(r)))
    return Filtration.make(r, steps)


# JSON format: {"rank": r, "arms": [[{"index": i, "basis": [["p/q", ...], ...]}, ...] x 3]}


def triple_to_json(t: FiltrationTriple) -> dict:
    return {
        "rank": t.ambient_dim,
        "arms": [[{"index": i, "basis": V.to_json()} for i, V in f.steps] for f in t.arms],
    }


def triple_from_json(doc: dict) -> FiltrationTriple:
    try:
        r = int(doc["rank"])
        arms_doc = doc["arms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FiltrationError(f"missing or malformed 'rank'/'arms': {exc}") from None
    if len(arms_doc) != 3:
        raise FiltrationError(f"expected 3 arms, found {len(arms_doc)}")
    arms = []
    for a, steps in enumerate(arms_doc):
        parsed = []
        for s, step in enumerate(steps):
            where = f"arm {a + 1}, step {s + 1}"
            try:
                i = int(step["index"])
                vecs = [[str(v) for v in vec] for vec in step["basis"]]
                for vec in vecs:
                    for v in vec:
                        if "." in v or "e" in v.lower():
                            raise FiltrationError(f"{where}: decimal '{v}' not allowed, use 'p/q'")
                V = SubspaceBasis.from_vectors(r, vecs)
            except FiltrationError as exc:
                raise FiltrationError(f"{where} (index {step.get('index')}): {exc}") from None
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise FiltrationError(f"{where}: {exc}") from None
            parsed.append((i, V))
        try:
            arms.append(Filtration(r, tuple(parsed)).canonical())
        except FiltrationError as exc:
            raise FiltrationError(f"arm {a + 1}: {exc}") from None
    return FiltrationTriple(r, tuple(arms))  # type: ignore[arg-type]


def load_triple(path: str | Path) -> FiltrationTriple:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FiltrationError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    return triple_from_json(doc)


def dump_triple(t: FiltrationTriple) -> str:
    return json.dumps(triple_to_json(t), indent=1)


__all__ = [
    "ChernData",
    "Filtration",
    "FiltrationError",
    "FiltrationTriple",
    "NonIntegralChern",
    "SubspaceBasis",
    "UnsupportedRank",
    "chern",
    "dim_intersection",
    "discriminant_normalized",
    "discriminant_working",
    "dump_triple",
    "flag_arm",
    "graded_dim",
    "load_triple",
    "pair_graded_dim",
    "shift",
    "standard_position",
    "triple_from_json",
    "triple_to_json",
    "twist_chern",
    "working_to_normalized",
]
