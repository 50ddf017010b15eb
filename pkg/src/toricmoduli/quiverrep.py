"""Subspace quivers: Euler form, slope, moduli dimension, stability.

A subspace quiver has a central vertex q0 and n arms of chained vertices
q_{i,1} <- q_{i,2} <- ... feeding into it.  With injective arm maps a
representation is the same as n chains of nested subspaces of the centre
space, which is how it is stored here.  Slope uses Theta = -q0*, so
mu(d) = -d_0 / dim d.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .filtrations import FiltrationTriple, SubspaceBasis, UnsupportedRank, dim_intersection


class ShapeMismatch(ValueError):
    pass


class ZeroDimension(ValueError):
    pass


class Stability(enum.Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class SubspaceQuiverShape:
    lengths: tuple[int, ...]

    @property
    def arms(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class DimensionVector:
    center: int
    arm_dims: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, center: int, *arms: Sequence[int]) -> "DimensionVector":
        return cls(center, tuple(tuple(a) for a in arms))

    @property
    def shape(self) -> SubspaceQuiverShape:
        return SubspaceQuiverShape(tuple(len(a) for a in self.arm_dims))

    @property
    def total(self) -> int:
        return self.center + sum(sum(a) for a in self.arm_dims)

    def is_filtration_class(self) -> bool:
        """Weakly decreasing along every arm and bounded by the centre."""
        return all(
            all(x >= y for x, y in zip((self.center,) + a, a)) for a in self.arm_dims
        )

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        if self.shape != other.shape:
            raise ShapeMismatch("dimension vectors of different shapes")
        return DimensionVector(
            self.center + other.center,
            tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.arm_dims, other.arm_dims)),
        )


def euler_form(d: DimensionVector, e: DimensionVector) -> int:
    """<d,e> = sum_v d_v e_v - sum_{arrows v->w} d_v e_w."""
    if d.shape != e.shape:
        raise ShapeMismatch(f"shapes {d.shape.lengths} and {e.shape.lengths} differ")
    val = d.center * e.center
    for a, b in zip(d.arm_dims, e.arm_dims):
        val += sum(x * y for x, y in zip(a, b))
        heads = (e.center,) + b
        # q_{i,j} -> q_{i,j-1} (q_{i,0} is the centre)
        val -= sum(x * h for x, h in zip(a, heads))
    return val


def slope(d: DimensionVector) -> Fraction:
    if d.total == 0:
        raise ZeroDimension("slope of the zero dimension vector")
    return Fraction(-d.center, d.total)


def moduli_dim(d: DimensionVector) -> int:
    return 1 - euler_form(d, d)


@dataclass(frozen=True)
class QuiverRepresentation:
    center_dim: int
    arms: tuple[tuple[SubspaceBasis, ...], ...]

    def __post_init__(self):
        for n, chain in enumerate(self.arms):
            prev = SubspaceBasis.whole(self.center_dim)
            for j, U in enumerate(chain):
                if U.ambient_dim != self.center_dim:
                    raise ShapeMismatch(f"arm {n + 1} vertex {j + 1} is not in the centre space")
                if not prev.contains(U):
                    raise ShapeMismatch(f"arm {n + 1} vertex {j + 1} is not nested in its predecessor")
                prev = U

    @property
    def dimension_vector(self) -> DimensionVector:
        return DimensionVector(self.center_dim, tuple(tuple(U.dim for U in c) for c in self.arms))

    @classmethod
    def from_triple(cls, t: FiltrationTriple) -> "QuiverRepresentation":
        """Arm vertex q_{a,j} carries E^a(j) for j >= 1 (standard position)."""
        from .filtrations import standard_position

        t = standard_position(t)
        arms = []
        for f in t.arms:
            last = f.steps[-1][0] - 1 if f.steps else 0
            arms.append(tuple(f.subspace_at(j) for j in range(1, last + 1)))
        return cls(t.ambient_dim, tuple(arms))

    def transform(self, g) -> "QuiverRepresentation":
        return QuiverRepresentation(self.center_dim, tuple(tuple(U.transform(g) for U in c) for c in self.arms))


def filtration_lattice(rep: QuiverRepresentation) -> list[SubspaceBasis]:
    """0, E, the arm subspaces, and all their pairwise intersections and sums.

    Iterating meet and join further does not terminate in general (four
    points of the plane in general position already generate infinitely many
    points).  One round is enough for centre dimension <= 3, see
    ``candidate_subspaces``.
    """
    if rep.center_dim > 3:
        raise UnsupportedRank(f"candidate lattice is only used for centre dimension <= 3, got {rep.center_dim}")
    r = rep.center_dim
    base = {U for chain in rep.arms for U in chain}
    out = {SubspaceBasis.zero(r), SubspaceBasis.whole(r)} | base
    items = sorted(base, key=lambda V: (V.dim, V.basis))
    for n, U in enumerate(items):
        for W in items[n + 1 :]:
            out.add(U & W)
            out.add(U + W)
    return sorted(out, key=lambda V: (V.dim, V.basis))


def candidate_subspaces(rep: QuiverRepresentation) -> list[SubspaceBasis]:
    """The lattice plus a generic subspace strictly between any two nested
    members.

    In centre dimension <= 3 the weight of a point only depends on which arm
    lines and planes contain it, and the weight of a plane on which arm
    points it contains.  So the maxima sit on arm subspaces, meets of two
    arm planes, joins of two arm points, or a generic point of some member
    (a line inside a lone arm plane, a plane through a lone arm line, any
    subspace when all arms are empty).
    """
    r = rep.center_dim
    members = filtration_lattice(rep)
    out = set(members)
    rng = random.Random(0x5EED)
    for A in members:
        for B in members:
            if B.dim - A.dim >= 2 and B.contains(A):
                F = A
                while F.dim < B.dim - 1:
                    v = [sum(rng.randint(-999, 999) * b[c] for b in B.basis) for c in range(r)]
                    F = F + SubspaceBasis.span(r, [v])
                    out.add(F)
    return sorted(out, key=lambda V: (V.dim, V.basis))


def arm_weight(rep: QuiverRepresentation, F: SubspaceBasis) -> int:
    """sum over arm vertices of dim(U_v intersect F)."""
    return sum(dim_intersection(U, F) for chain in rep.arms for U in chain)


def subrepresentation_slope(rep: QuiverRepresentation, F: SubspaceBasis) -> Fraction:
    """Slope of the largest subrepresentation with centre F."""
    return Fraction(-F.dim, F.dim + arm_weight(rep, F))


def is_stable(rep: QuiverRepresentation) -> Stability:
    """Compare weight(F)/dim F with weight(E)/dim E over the candidate subspaces."""
    r = rep.center_dim
    if r > 3:
        raise UnsupportedRank(f"stability oracle supports centre dimension <= 3, got {r}")
    total = arm_weight(rep, SubspaceBasis.whole(r))
    verdict = Stability.STABLE
    for F in candidate_subspaces(rep):
        if F.dim in (0, r):
            continue
        lhs = arm_weight(rep, F) * r
        rhs = total * F.dim
        if lhs > rhs:
            return Stability.UNSTABLE
        if lhs == rhs:
            verdict = Stability.STRICTLY_SEMISTABLE
    return verdict


def triple_stability(t: FiltrationTriple) -> Stability:
    return is_stable(QuiverRepresentation.from_triple(t))


__all__ = [
    "DimensionVector",
    "QuiverRepresentation",
    "ShapeMismatch",
    "Stability",
    "SubspaceQuiverShape",
    "ZeroDimension",
    "arm_weight",
    "candidate_subspaces",
    "euler_form",
    "filtration_lattice",
    "is_stable",
    "moduli_dim",
    "slope",
    "subrepresentation_slope",
    "triple_stability",
]
