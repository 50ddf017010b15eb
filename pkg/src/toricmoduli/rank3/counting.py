"""Euler characteristics of rank-3 moduli by counting lattice points on
level sets of the closed-form discriminants.

A counting term is a closed form evaluated on a pattern of its coordinates:
each slot is either pinned to 0 or fed by one of ``nfree + npos`` new
variables, the first ``nfree`` ranging over N and the rest over N_+.  Two
slots may share a variable (the k1 = k2 identification).  Positive variables
are shifted by one so that every term is enumerated over N^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..series import EulerSeries, InvalidResidue
from .forms import ClosedFormId, QuadraticForm, UnboundedForm, disc_closed, form


@dataclass(frozen=True)
class Term:
    weight: int
    form: ClosedFormId
    slots: tuple[int | None, ...]
    nfree: int
    npos: int = 0

    def __post_init__(self):
        if len(self.slots) != self.form.arity:
            raise ValueError(f"{self.form} needs {self.form.arity} slots, got {len(self.slots)}")
        used = {s for s in self.slots if s is not None}
        if used != set(range(self.nfree + self.npos)):
            raise ValueError("slots must use every variable exactly as declared")

    @property
    def nvars(self) -> int:
        return self.nfree + self.npos

    def expand(self, x: Sequence[int]) -> tuple[int, ...]:
        """Form coordinates for shifted variables x in N^nvars."""
        y = [v + (1 if n >= self.nfree else 0) for n, v in enumerate(x)]
        return tuple(0 if s is None else y[s] for s in self.slots)

    def value(self, x: Sequence[int]) -> int:
        return disc_closed(self.form, self.expand(x))


@lru_cache(maxsize=None)
def reduced_form(term: Term) -> QuadraticForm:
    q = QuadraticForm.from_callable(term.value, term.nvars)
    if not q.is_monotone():
        raise UnboundedForm(f"{term.form} with slots {term.slots} is not decreasing in every variable")
    return q


@lru_cache(maxsize=None)
def _histogram(term: Term, floor: int) -> dict[int, int]:
    return reduced_form(term).values_at_least(floor)


def term_count(term: Term, delta: int) -> int:
    return _histogram(term, delta).get(delta, 0)


def term_solutions(term: Term, delta: int) -> list[tuple[int, ...]]:
    """The form coordinates k (after expansion) of every solution, for small |delta|."""
    q = reduced_form(term)
    bounds = [q.coordinate_bound(delta, i) for i in range(term.nvars)]
    out = []

    def rec(prefix):
        if len(prefix) == term.nvars:
            if q(prefix) == delta:
                out.append(term.expand(prefix))
            return
        for t in range(bounds[len(prefix)] + 1):
            p = prefix + [t]
            if q(p + [0] * (term.nvars - len(p))) < delta:
                break
            rec(p)

    rec([])
    return out


def make_term(f: ClosedFormId, zero_pattern: Sequence[bool] | None = None,
              positivity: Sequence[bool] | None = None, weight: int = 1) -> Term:
    """Term with coordinates pinned by ``zero_pattern`` and forced >= 1 by
    ``positivity``; the remaining coordinates range over N."""
    n = f.arity
    zero = list(zero_pattern) if zero_pattern is not None else [False] * n
    pos = list(positivity) if positivity is not None else [False] * n
    if len(zero) != n or len(pos) != n:
        raise ValueError(f"masks must have length {n}")
    if any(z and p for z, p in zip(zero, pos)):
        raise ValueError("a coordinate cannot be both zero and positive")
    free = [c for c in range(n) if not zero[c] and not pos[c]]
    posc = [c for c in range(n) if pos[c]]
    slots: list[int | None] = [None] * n
    for v, c in enumerate(free + posc):
        slots[c] = v
    return Term(weight, f, tuple(slots), len(free), len(posc))


def count_solutions(f: ClosedFormId, delta: int, zero_pattern=None, positivity=None) -> int:
    """Number of k in N^arity with disc_closed(f, k) == delta under the masks."""
    return term_count(make_term(f, zero_pattern, positivity), delta)


_Z = None

MOD4_TERMS: tuple[Term, ...] = tuple(
    Term(w, f, tuple(range(f.arity)), f.arity)
    for w, f in (
        (6, form("D1_incl_1122", 2, 2, 1)),
        (6, form("D1_incl_1122", 2, 2, 2)),
        (6, form("D2_incl_1122", 1, 2)),
        (3, form("D3", 2, 1)),
        (3, form("D3", 1, 1)),
    )
)

_D8 = form("D8")
_D8_1 = form("D8_incl_1")
_D8_2 = form("D8_incl_2")
_D8_3 = form("D8_incl_3")

MOD0_TERMS: tuple[Term, ...] = (
    Term(-1, _D8, (0, 0, _Z, _Z, _Z, _Z, _Z, _Z), 1, 0),
    Term(-6, _D8, (0, 0, 1, _Z, _Z, _Z, _Z, _Z), 1, 1),
    Term(-3, _D8, (0, 0, 1, _Z, _Z, _Z, 2, _Z), 1, 2),
    Term(-6, _D8, (0, 0, 1, _Z, _Z, _Z, _Z, 2), 1, 2),
    Term(-6, _D8, (0, 0, 1, 2, _Z, _Z, _Z, _Z), 1, 2),
    Term(-12, _D8, (0, 0, 1, 2, _Z, _Z, 3, _Z), 1, 3),
    Term(-6, _D8, (0, 0, 1, 2, _Z, 3, _Z, _Z), 1, 3),
    Term(-3, _D8, (0, 0, 1, 2, _Z, _Z, 3, 4), 1, 4),
    Term(-6, _D8, (0, 0, 1, 2, _Z, 3, 4, _Z), 1, 4),
    Term(6, _D8_1, (0, 1, 2, 3, _Z, _Z, _Z, _Z), 2, 2),
    Term(12, _D8_1, (0, 1, 2, 3, _Z, _Z, 4, _Z), 2, 3),
    Term(6, _D8_1, (0, 1, 2, 3, _Z, 4, _Z, _Z), 2, 3),
    Term(3, _D8_1, (0, 1, 2, 3, _Z, _Z, 4, 5), 2, 4),
    Term(3, _D8_2, (0, 1, 2, 3, _Z, _Z, 4, 5), 2, 4),
    Term(6, _D8_1, (0, 1, 2, 3, _Z, 4, 5, _Z), 2, 4),
    Term(6, _D8_3, (0, 1, 2, 3, _Z, 4, 5, _Z), 2, 4),
    Term(6, form("D0"), (0, 1, 2, 3, 4), 5, 0),
)


def _weighted(terms: Sequence[Term], delta: int, floor: int | None = None) -> int:
    floor = delta if floor is None else floor
    return sum(t.weight * _histogram(t, floor).get(delta, 0) for t in terms)


def chi_mod4(delta: int) -> int:
    if delta > 0 or (-delta) % 6 != 4:
        raise InvalidResidue(f"chi_mod4 needs |delta| = 4 mod 6 with delta <= 0, got {delta}")
    return _weighted(MOD4_TERMS, delta)


def chi_mod0(delta: int) -> int:
    if delta > 0 or (-delta) % 6 != 0:
        raise InvalidResidue(f"chi_mod0 needs |delta| = 0 mod 6 with delta <= 0, got {delta}")
    return _weighted(MOD0_TERMS, delta)


def chi_rank3(delta: int) -> int:
    r = (-delta) % 6
    if r == 4:
        return chi_mod4(delta)
    if r == 0:
        return chi_mod0(delta)
    raise InvalidResidue(f"rank-3 discriminants satisfy |delta| = 0 or 4 mod 6, got {delta}")


def series_rank3(residue: int, terms: int) -> EulerSeries:
    """Coefficients at -residue, -residue-6, ... (``terms`` of them)."""
    if residue not in (0, 4):
        raise InvalidResidue(f"residue must be 0 or 4, got {residue}")
    if terms < 1:
        raise ValueError("need at least one term")
    table = MOD4_TERMS if residue == 4 else MOD0_TERMS
    exps = [-(residue + 6 * n) for n in range(terms)]
    floor = exps[-1]
    hist = [(t.weight, _histogram(t, floor)) for t in table]
    return EulerSeries.from_pairs((e, sum(w * h.get(e, 0) for w, h in hist)) for e in exps)


def term_contributions(residue: int, delta: int) -> list[tuple[Term, int]]:
    table = MOD4_TERMS if residue == 4 else MOD0_TERMS
    return [(t, term_count(t, delta)) for t in table]


def polystable_case(k: Sequence[int]) -> dict:
    """Which item of the polystable classification a point k in N^8 of the
    eight-ray standard form falls into (diagnostic only)."""
    if len(k) != 8:
        raise ValueError("expected eight coordinates")
    k1, k2 = k[0], k[1]
    a = sum(1 for v in k[2:5] if v)
    b = sum(1 for v in k[5:8] if v)
    if a == 3 or b == 3:
        raise ValueError("standard form needs a zero in each of (k3,k4,k5) and (k6,k7,k8)")
    order = ">" if k1 > k2 else "<" if k1 < k2 else "="
    pair = tuple(sorted((a, b)))
    item = {(0, 0): None, (0, 1): 4, (0, 2): 5, (1, 1): 6, (1, 2): 7, (2, 2): 8}[pair]
    stable_base = {">": 1, "<": 2, "=": 3}[order]
    return {"k1_vs_k2": order, "nonzero_K1": a, "nonzero_K2": b, "items": [stable_base] + ([item] if item else [])}


def solution_alphas(residue: int, delta: int):
    """(term, k, alpha, incl) for every counted solution at delta."""
    from .forms import alpha_from_k

    table = MOD4_TERMS if residue == 4 else MOD0_TERMS
    for t in table:
        for k in term_solutions(t, delta):
            alpha, incl = alpha_from_k(t.form, k)
            yield t, k, alpha, incl


__all__ = [
    "InvalidResidue",
    "MOD0_TERMS",
    "MOD4_TERMS",
    "Term",
    "chi_mod0",
    "chi_mod4",
    "chi_rank3",
    "count_solutions",
    "make_term",
    "polystable_case",
    "reduced_form",
    "series_rank3",
    "solution_alphas",
    "term_contributions",
    "term_count",
    "term_solutions",
]
