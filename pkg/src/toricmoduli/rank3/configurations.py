"""Explicit rank-3 filtration triples for given arm lengths.

Arm i is the flag p_i in L_i (a line inside a plane of Q^3), with the plane
repeated a_i2 times and the line a_i1 times.  ``generic_triple`` draws
random integer points and planes that realize a prescribed inclusion
pattern and nothing more.
"""

from __future__ import annotations

import random
from typing import Sequence

from ..filtrations import FiltrationTriple, SubspaceBasis, flag_arm
from .arms import InclusionPattern, as_arms


class ConfigurationError(ValueError):
    pass


def flag_triple(alpha: Sequence[int], points, planes) -> FiltrationTriple:
    """Triple from arm lengths, three lines and three planes (None where the
    corresponding length is 0)."""
    alpha = as_arms(alpha)
    arms = []
    for i in range(3):
        a1, a2 = alpha[i], alpha[i + 3]
        chain = []
        if a2:
            chain.append((a2, planes[i]))
        if a1:
            chain.append((a1, points[i]))
        arms.append(flag_arm(3, chain))
    return FiltrationTriple(3, tuple(arms))


def lemma_triple(line_plane_pairs: Sequence[tuple[Sequence[int], Sequence[int]]],
                 alpha: Sequence[int] = (1, 1, 1, 1, 1, 1)) -> FiltrationTriple:
    """Arm i has line span(u_i) and plane span(u_i, w_i) for pairs (u_i, w_i)."""
    points = [SubspaceBasis.span(3, [u]) for u, _ in line_plane_pairs]
    planes = [SubspaceBasis.span(3, [u, w]) for u, w in line_plane_pairs]
    return flag_triple(alpha, points, planes)


E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def standard_lemma_triple(v2: Sequence[int], v1: Sequence[int] = (1, 1, 1)) -> FiltrationTriple:
    """Arms (e1, e2), (e3, e2), (v1, v2) with all lengths one."""
    return lemma_triple([(E1, E2), (E3, E2), (v1, v2)])


def realized_pattern(alpha: Sequence[int], points, planes) -> InclusionPattern:
    alpha = as_arms(alpha)
    pairs = []
    for i in range(3):
        for j in range(3):
            if i != j and alpha[i] and alpha[j + 3] and planes[j].contains(points[i]):
                pairs.append((i + 1, j + 1))
    return InclusionPattern.of(*pairs)


def _is_generic(alpha, points, planes, collinear_ok: bool = False) -> bool:
    """Distinct points, three distinct planes meeting at most in an arm
    point, and points not collinear unless the pattern forces it."""
    present_p = [points[i] for i in range(3) if alpha[i]]
    present_L = list({planes[i] for i in range(3) if alpha[i + 3]})
    if len(set(present_p)) != len(present_p):
        return False
    if not collinear_ok and len(present_p) == 3 and (present_p[0] + present_p[1] + present_p[2]).dim < 3:
        return False
    if len(present_L) == 3:
        common = present_L[0] & present_L[1] & present_L[2]
        # a common arm point is already accounted for by the pattern
        if common.dim > 0 and common not in present_p:
            return False
    return True


def generic_triple(alpha: Sequence[int], incl: InclusionPattern, rng: random.Random | None = None,
                   tries: int = 200) -> FiltrationTriple:
    """A random triple with arm lengths alpha whose inclusions U_i1 in U_j2
    are exactly ``incl``."""
    alpha = as_arms(alpha)
    rng = rng or random.Random(0)
    for i, j in incl:
        if not alpha[i - 1] or not alpha[j + 2]:
            raise ConfigurationError(f"inclusion ({i},{j}) involves an empty step")
    for _ in range(tries):
        vec = lambda: [rng.randint(-4, 4) for _ in range(3)]  # noqa: E731
        p = [vec() for _ in range(3)]
        needed = {j: [i for (i, jj) in incl if jj == j] for j in (1, 2, 3)}
        for j, srcs in needed.items():
            own = [j] if alpha[j - 1] else []
            if len(srcs) + len(own) > 2:
                # the plane must hold three points: make them collinear in P^2
                a, b = srcs[0], srcs[1]
                c1, c2 = rng.choice([-2, -1, 1, 2]), rng.choice([-2, -1, 1, 2])
                p[j - 1] = [c1 * x + c2 * y for x, y in zip(p[a - 1], p[b - 1])]
        if any(all(x == 0 for x in v) for v in p):
            continue
        points = [SubspaceBasis.span(3, [v]) for v in p]
        planes = []
        for j in (1, 2, 3):
            gens = ([p[j - 1]] if alpha[j - 1] else []) + [p[i - 1] for i in needed[j]]
            V = SubspaceBasis.span(3, gens)
            while V.dim < 2:
                V = V + SubspaceBasis.span(3, [vec()])
            planes.append(V if V.dim == 2 else None)
        if any(V is None for V in planes):
            continue
        if realized_pattern(alpha, points, planes) != incl:
            continue
        forced = any(len(v) + bool(alpha[j - 1]) > 2 for j, v in needed.items())
        if not _is_generic(alpha, points, planes, collinear_ok=forced):
            continue
        return flag_triple(alpha, points, planes)
    raise ConfigurationError(f"no generic configuration found for {alpha} with {incl}")


__all__ = [
    "ConfigurationError",
    "flag_triple",
    "generic_triple",
    "lemma_triple",
    "realized_pattern",
    "standard_lemma_triple",
]
