"""Rank-2 torus-fixed points, their discriminants, and Euler characteristics.

A stable rank-2 fixed point is a triple of arm lengths (a1, a2, a3)
satisfying the strict triangle inequalities.  Every such triple is
uniquely (k1+k3+i, k1+k2+i, k2+k3+i) with k in N^3 and i in {1, 2}; i = 1
gives |delta| = 3 mod 4 and i = 2 gives |delta| = 0 mod 4.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import divisor_count as _sympy_divisor_count

from .exactgeom import Polyhedron
from .series import EulerSeries, InvalidResidue


TripleAlpha = tuple[int, int, int]


def stable_triple(a: Sequence[int]) -> bool:
    a1, a2, a3 = a
    return a1 < a2 + a3 and a2 < a1 + a3 and a3 < a1 + a2


def disc2(a: Sequence[int]) -> int:
    a1, a2, a3 = a
    return a1 * a1 + a2 * a2 + a3 * a3 - 2 * a1 * a2 - 2 * a2 * a3 - 2 * a1 * a3


def stability_polyhedron() -> Polyhedron:
    """a_i - a_j - a_k <= -1 with a >= 0; membership with ``strict`` uses the
    open rows a_i - a_j - a_k < 0."""
    rows = [[1, -1, -1], [-1, 1, -1], [-1, -1, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    return Polyhedron.build(
        rows,
        [-1, -1, -1, 0, 0, 0],
        sign_rows=(3, 4, 5),
        open_rhs=[0, 0, 0, 0, 0, 0],
        labels=["tri1", "tri2", "tri3", "sign1", "sign2", "sign3"],
    )


def decompose(a: Sequence[int]) -> tuple[tuple[int, int, int], int]:
    """(k, i) with a = (k1+k3+i, k1+k2+i, k2+k3+i); raises for unstable a."""
    a1, a2, a3 = a
    if not stable_triple(a):
        raise ValueError(f"{tuple(a)} is not stable")
    s = a1 + a2 + a3
    i = 1 if s % 2 else 2
    h = (s - 3 * i) // 2  # k1 + k2 + k3
    k = (h - (a3 - i), h - (a1 - i), h - (a2 - i))
    return k, i


def compose(k: Sequence[int], i: int) -> TripleAlpha:
    k1, k2, k3 = k
    return (k1 + k3 + i, k1 + k2 + i, k2 + k3 + i)


def branch_disc(k: Sequence[int], i: int) -> int:
    """Closed forms on the two lattice branches."""
    k1, k2, k3 = k
    e2 = k1 * k2 + k1 * k3 + k2 * k3
    s = k1 + k2 + k3
    if i == 1:
        return -4 * e2 - 4 * s - 3
    if i == 2:
        return -4 * e2 - 8 * s - 12
    raise ValueError("branch index is 1 or 2")


def _count_branch(delta: int, i: int) -> int:
    const = 3 if i == 1 else 12
    lin = 4 if i == 1 else 8
    n = -delta
    if n < const:
        return 0
    bound = (n - const) // lin
    count = 0
    for k1 in range(bound + 1):
        for k2 in range(bound + 1 - k1):
            rest = n - const - 4 * k1 * k2 - lin * (k1 + k2)
            if rest < 0:
                break
            # rest = k3 * (4(k1+k2) + lin)
            step = 4 * (k1 + k2) + lin
            if rest % step == 0:
                count += 1
    return count


def chi_rank2(delta: int) -> int:
    if delta >= 0:
        raise InvalidResidue(f"rank-2 discriminants are negative, got {delta}")
    n = -delta
    if n % 4 == 3:
        return _count_branch(delta, 1)
    if n % 4 == 0:
        return _count_branch(delta, 2)
    return 0


def reduced_forms(n: int) -> list[tuple[int, int, int]]:
    """Reduced positive definite forms (a, b, c) with b^2 - 4ac = -n."""
    out = []
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            if (b * b + n) % (4 * a):
                continue
            c = (b * b + n) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append((a, b, c))
        a += 1
    return out


def hurwitz(n: int) -> Fraction:
    """Hurwitz class number: reduced forms of discriminant -n, with forms
    proportional to x^2+xy+y^2 weighted 1/3 and to x^2+y^2 weighted 1/2."""
    if n <= 0 or n % 4 not in (0, 3):
        return Fraction(0)
    total = Fraction(0)
    for a, b, c in reduced_forms(n):
        if a == b == c:
            total += Fraction(1, 3)
        elif b == 0 and a == c:
            total += Fraction(1, 2)
        else:
            total += 1
    return total


def divisor_count(n: int) -> int:
    if n < 1:
        raise ValueError("divisor_count needs n >= 1")
    return int(_sympy_divisor_count(n))


def chi_from_hurwitz(n: int) -> Fraction:
    """3H(n), minus (3/2) d(n/4) when 4 | n."""
    if n % 4 == 3:
        return 3 * hurwitz(n)
    if n % 4 == 0:
        return 3 * hurwitz(n) - Fraction(3, 2) * divisor_count(n // 4)
    raise InvalidResidue(f"n must be 0 or 3 mod 4, got {n}")


def series_rank2(residue: int, terms: int) -> EulerSeries:
    """Coefficients at -n for the first ``terms`` positive n = residue mod 4."""
    if residue not in (0, 3):
        raise InvalidResidue(f"residue must be 0 or 3, got {residue}")
    if terms < 1:
        raise ValueError("need at least one term")
    first = residue if residue else 4
    return EulerSeries.from_pairs(((-(first + 4 * t), chi_rank2(-(first + 4 * t))) for t in range(terms)), modulus=4)


def count_xy_yz_zx(n: int) -> int:
    """Solutions of xy + yz + zx = n in positive integers."""
    count = 0
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x * y >= n:
                break
            rest = n - x * y
            if rest % (x + y) == 0:
                count += 1
    return count


def bridge_count(delta: int) -> int:
    """Branch-2 count expressed through xy+yz+zx with x = k1 + 1 etc."""
    if (-delta) % 4:
        raise InvalidResidue("the bridge applies to |delta| = 0 mod 4")
    return count_xy_yz_zx(-delta // 4)


__all__ = [
    "InvalidResidue",
    "TripleAlpha",
    "branch_disc",
    "bridge_count",
    "chi_from_hurwitz",
    "chi_rank2",
    "compose",
    "count_xy_yz_zx",
    "decompose",
    "disc2",
    "divisor_count",
    "hurwitz",
    "reduced_forms",
    "series_rank2",
    "stability_polyhedron",
    "stable_triple",
]
