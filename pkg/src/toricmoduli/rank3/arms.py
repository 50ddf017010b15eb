"""Arm lengths of rank-3 filtrations, their Chern data, and the symmetry group.

A rank-3 filtration in standard position is described by six arm lengths
alpha = (a11, a21, a31, a12, a22, a32): arm i is two-dimensional on a12-many
indices (a_i2 for arm i) and one-dimensional on a_i1 indices.  Generically the
discriminant only depends on alpha; special positions of the subspaces are
recorded as an inclusion pattern, a set of pairs (i, j) meaning that the line
of arm i lies in the plane of arm j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

ArmLengths = tuple[int, int, int, int, int, int]


class UnsupportedPattern(ValueError):
    pass


def a(alpha: Sequence[int], i: int, j: int) -> int:
    """alpha_{ij} with 1-based arm i and dimension j."""
    return alpha[(i - 1) + 3 * (j - 1)]


def as_arms(alpha: Iterable[int]) -> ArmLengths:
    t = tuple(int(v) for v in alpha)
    if len(t) != 6:
        raise ValueError(f"arm lengths need six entries, got {len(t)}")
    if min(t) < 0:
        raise ValueError("arm lengths are nonnegative")
    return t  # type: ignore[return-value]


@dataclass(frozen=True)
class InclusionPattern:
    pairs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        for i, j in self.pairs:
            if i == j or not (1 <= i <= 3 and 1 <= j <= 3):
                raise UnsupportedPattern(f"bad inclusion ({i},{j})")

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "InclusionPattern":
        return cls(frozenset(pairs))

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def is_case_shape(self) -> bool:
        """True for subsets of {(i,j),(j,i)}, {(i,j),(i,k)} or {(i,j),(k,j)}."""
        p = sorted(self.pairs)
        if len(p) <= 1:
            return True
        if len(p) > 2:
            return False
        (i1, j1), (i2, j2) = p
        return (i1, j1) == (j2, i2) or i1 == i2 or j1 == j2

    def __str__(self):
        return "{" + ",".join(f"({i},{j})" for i, j in self) + "}"


NO_INCLUSION = InclusionPattern()


def c1_r3(alpha: Sequence[int]) -> int:
    return sum(alpha[:3]) + 2 * sum(alpha[3:])


def c2_r3(alpha: Sequence[int], incl: InclusionPattern | Iterable = NO_INCLUSION) -> int:
    pairs = incl.pairs if isinstance(incl, InclusionPattern) else incl
    c2 = sum(a(alpha, i, 2) ** 2 + a(alpha, i, 1) * a(alpha, i, 2) for i in (1, 2, 3))
    for i, j in itertools.combinations((1, 2, 3), 2):
        c2 += (
            a(alpha, i, 1) * a(alpha, j, 1)
            + 2 * a(alpha, i, 1) * a(alpha, j, 2)
            + 2 * a(alpha, i, 2) * a(alpha, j, 1)
            + 3 * a(alpha, i, 2) * a(alpha, j, 2)
        )
    for k, l in pairs:
        c2 -= a(alpha, k, 1) * a(alpha, l, 2)
    return c2


def disc_r3(alpha: Sequence[int], incl: InclusionPattern | Iterable = NO_INCLUSION) -> int:
    """Working discriminant 2 c1^2 - 6 c2 (nonpositive on stable data)."""
    return 2 * c1_r3(alpha) ** 2 - 6 * c2_r3(alpha, incl)


# The group generated by arm transpositions and the line/plane swap tau.

Perm = tuple[int, ...]


def _sigma(i: int, j: int) -> Perm:
    p = list(range(6))
    for off in (0, 3):
        p[i - 1 + off], p[j - 1 + off] = p[j - 1 + off], p[i - 1 + off]
    return tuple(p)


TAU: Perm = (3, 4, 5, 0, 1, 2)
IDENTITY: Perm = tuple(range(6))
GENERATORS: dict[str, Perm] = {
    "s12": _sigma(1, 2),
    "s13": _sigma(1, 3),
    "s23": _sigma(2, 3),
    "tau": TAU,
}


@dataclass(frozen=True)
class GroupElement:
    """A coordinate permutation: (g.alpha)[k] = alpha[perm[k]]."""

    perm: Perm
    name: str = ""

    def __call__(self, alpha: Sequence[int]) -> ArmLengths:
        return tuple(alpha[p] for p in self.perm)  # type: ignore[return-value]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        # (self * other)(alpha) = self(other(alpha))
        return GroupElement(tuple(other.perm[p] for p in self.perm), f"{self.name}{other.name}")

    def act_on_pattern(self, incl: InclusionPattern) -> InclusionPattern:
        """Image of an inclusion pattern under the same relabelling of arms.

        tau exchanges lines and planes, so U_i1 in U_j2 becomes U_j1 in U_i2
        (dual flags); arm transpositions relabel i and j.
        """
        arm_of = {k: self.perm[k] % 3 for k in range(3)}
        swaps = self.perm[0] >= 3
        inv = {v: k for k, v in arm_of.items()}
        out = set()
        for i, j in incl:
            ni, nj = inv[i - 1] + 1, inv[j - 1] + 1
            out.add((nj, ni) if swaps else (ni, nj))
        return InclusionPattern(frozenset(out))


def group_elements() -> list[GroupElement]:
    """Closure of the generators; has twelve elements."""
    gens = [GroupElement(p, n) for n, p in GENERATORS.items()]
    seen = {IDENTITY: GroupElement(IDENTITY, "e")}
    frontier = [seen[IDENTITY]]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = h * g
                if gh.perm not in seen:
                    seen[gh.perm] = GroupElement(gh.perm, h.name + ("" if g.name == "e" else "." + g.name))
                    nxt.append(seen[gh.perm])
        frontier = nxt
    return sorted(seen.values(), key=lambda g: g.perm)


def group_orbit(g: GroupElement | str, alpha: Sequence[int]) -> ArmLengths:
    if isinstance(g, str):
        g = GroupElement(IDENTITY if g in ("e", "id", "identity") else GENERATORS[g], g)
    return g(alpha)


def orbit(alpha: Sequence[int], incl: InclusionPattern = NO_INCLUSION) -> set[tuple[ArmLengths, InclusionPattern]]:
    return {(g(alpha), g.act_on_pattern(incl)) for g in group_elements()}
