"""Closed-form discriminant polynomials and their lattice parametrizations.

Each tagged form pairs a hand-expanded quadratic polynomial in k with the
parametrization alpha(k) it came from; ``disc_closed(form, k)`` must agree
with ``disc_r3(*alpha_from_k(form, k))`` for every k.

Tags and parametrizations (k in N^arity):

* ``D1(l,m,n)``, ``D1_incl_1122``, ``D1_incl_1132``: alpha =
  (k1+1, k1+k3+k5+l, k1+k4+k6+m, k2+k5+k6+n, k2+k4+1, k2+k3+1), with no
  inclusion, U11 in U22, U11 in U32 respectively.
* ``D2(m,n)``, ``D2_incl_1122``, ``D2_incl_2112``: alpha =
  (k1+k3+1, k1+k5+1, k1+k4+k6+m, k2+k4+1, k2+k6+1, k2+k3+k5+n).
* ``D3(m,n)``: alpha = (0, k2+k5+n, k3+k4+n, k1+k2+k3+m, k1+k4+n, k1+k5+n).
* ``D0``: the a11 = 0 form at start (0,2,2,3,2,2), i.e. D3 with (m,n) = (3,2).
* ``D8`` and ``D8_incl_1/2/3``: the eight-ray standard form
  alpha = (k1+k3+k6+1, k1+k4+k7+1, k1+k5+k8+1, k2+k5+k7+1, k2+k3+k8+1,
  k2+k4+k6+1), with no inclusion, U31 in U12, U11 in U32, U31 in U22.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .arms import ArmLengths, InclusionPattern, disc_r3


class ArityMismatch(ValueError):
    pass


class UnboundedForm(ValueError):
    """A form with a positive coefficient cannot be enumerated by bounds."""


def _pairs(k: Sequence[int]) -> int:
    return sum(a * b for a, b in itertools.combinations(k, 2))


# Hand-transcribed expansions.  The argument order follows the displays:
# parameters first, then k.


def _d1(l, m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (
        -18 * k1 * k2 - 6 * k1 * k3 - 6 * k1 * k4 - 6 * k1 * k5 - 6 * k1 * k6 - 6 * k2 * k3
        - 6 * k2 * k4 - 6 * k2 * k5 - 6 * k2 * k6 - 6 * k3 * k5 - 6 * k3 * k6 - 6 * k4 * k5
        - 6 * k4 * k6 - 6 * k5 * k6 + 2 * k1 * (-3 * n - 6) + 2 * k2 * (-3 * l - 3 * m - 3)
        + 2 * k3 * (-3 * n - 3) + 2 * k4 * (-3 * n - 3) + 2 * k5 * (-3 * m - 3)
        + 2 * k6 * (-3 * l - 3)
        + 2 * (l * l + m * m + n * n - l * m - 2 * l * n - 2 * m * n - 2 * l - 2 * m - n - 2)
    )


def _d1_incl_1122(l, m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (
        -6 * _pairs(k) + 6 * k1 * k4 + 6 * k3 * k4 - 6 * k1 * k2
        - 6 * n * (k1 + k3 + k4) - 6 * l * (k2 + k6) - 6 * m * (k2 + k5)
        - 6 * (k1 + k3 + k5 + k6)
        + 2 * (l * l + m * m + n * n - l * m - 2 * l * n - 2 * m * n - 2 * l - 2 * m - n + 1)
    )


def _d1_incl_1132(l, m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (
        -6 * _pairs(k) + 6 * k1 * k3 + 6 * k3 * k4 - 6 * k1 * k2
        - 6 * n * (k1 + k3 + k4) - 6 * l * (k2 + k6) - 6 * m * (k2 + k5)
        - 6 * (k1 + k4 + k5 + k6)
        + 2 * (l * l + m * m + n * n - l * m - 2 * l * n - 2 * m * n - 2 * l - 2 * m - n + 1)
    )


def _d2(m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (
        -18 * k1 * k2 - 6 * k1 * k3 - 6 * k1 * k4 - 6 * k1 * k5 - 6 * k1 * k6
        - 6 * k2 * k3 - 6 * k2 * k4 - 6 * k2 * k5 - 6 * k2 * k6 - 6 * k3 * k5 - 6 * k3 * k6
        - 6 * k4 * k5 - 6 * k4 * k6 - 12 * (k1 + k2 + k3 + k4 + k5 + k6)
        - 6 * k1 * n - 6 * k2 * m - 12 * m - 12 * n + 2 * m * n + 2 * n * n + 2 * m * m
    )


def _d2_incl_1122(m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (
        -6 * _pairs(k) - 6 * k1 * k2 + 6 * k1 * k6 + 6 * k2 * k3 + 6 * k3 * k4
        + 6 * k3 * k6 + 6 * k5 * k6 - 6 * (k1 + k2 + k3 + 2 * k4 + 2 * k5 + k6)
        - 6 * k1 * n - 6 * k2 * m - 12 * m - 12 * n + 2 * m * n + 2 * n * n + 2 * m * m + 6
    )


def _d2_incl_2112(m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (
        -6 * _pairs(k) - 6 * k1 * k2 + 6 * k1 * k4 + 6 * k2 * k5 + 6 * k3 * k4
        + 6 * k4 * k5 + 6 * k5 * k6 - 6 * (k1 + k2 + 2 * k3 + k4 + k5 + 2 * k6)
        - 6 * k1 * n - 6 * k2 * m - 12 * m - 12 * n + 2 * m * n + 2 * n * n + 2 * m * m + 6
    )


def _d3(m, n, k):
    k1, k2, k3, k4, k5 = k
    return (
        -6 * k1 * k2 - 6 * k1 * k3 - 6 * k1 * k4 - 6 * k1 * k5 - 6 * k2 * k3
        - 6 * k2 * k4 - 6 * k2 * k5 - 6 * k3 * k4 - 6 * k3 * k5 - 12 * k1 * n - 12 * k2 * n
        - 12 * k3 * n - 6 * k4 * m - 6 * k5 * m - 12 * m * n + 2 * m * m
    )


def _d0(k):
    k1, k2, k3, k4, k5 = k
    return -6 * _pairs(k) + 6 * k4 * k5 - 24 * k1 - 24 * k2 - 24 * k3 - 18 * k4 - 18 * k5 - 54


def _d8(k):
    k1, k2, k3, k4, k5, k6, k7, k8 = k
    return (
        -6 * _pairs(k) - 12 * k1 * k2 + 6 * k3 * k7 + 6 * k4 * k8 + 6 * k5 * k6
        - 18 * k1 - 18 * k2 - 12 * (k3 + k4 + k5 + k6 + k7 + k8) - 18
    )


def _d8_incl_1(k):
    k1, k2, k3, k4, k5, k6, k7, k8 = k
    return _d8(k) + 6 * (k1 + k5 + k8 + 1) * (k2 + k5 + k7 + 1)


def _d8_incl_2(k):
    k1, k2, k3, k4, k5, k6, k7, k8 = k
    return _d8(k) + 6 * (k1 + k3 + k6 + 1) * (k2 + k4 + k6 + 1)


def _d8_incl_3(k):
    k1, k2, k3, k4, k5, k6, k7, k8 = k
    return _d8(k) + 6 * (k1 + k5 + k8 + 1) * (k2 + k3 + k8 + 1)


# Parametrizations


def _alpha1(l, m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (k1 + 1, k1 + k3 + k5 + l, k1 + k4 + k6 + m, k2 + k5 + k6 + n, k2 + k4 + 1, k2 + k3 + 1)


def _alpha2(m, n, k):
    k1, k2, k3, k4, k5, k6 = k
    return (k1 + k3 + 1, k1 + k5 + 1, k1 + k4 + k6 + m, k2 + k4 + 1, k2 + k6 + 1, k2 + k3 + k5 + n)


def _alpha3(m, n, k):
    k1, k2, k3, k4, k5 = k
    return (0, k2 + k5 + n, k3 + k4 + n, k1 + k2 + k3 + m, k1 + k4 + n, k1 + k5 + n)


def _alpha8(k):
    k1, k2, k3, k4, k5, k6, k7, k8 = k
    return (
        k1 + k3 + k6 + 1,
        k1 + k4 + k7 + 1,
        k1 + k5 + k8 + 1,
        k2 + k5 + k7 + 1,
        k2 + k3 + k8 + 1,
        k2 + k4 + k6 + 1,
    )


@dataclass(frozen=True)
class _FormSpec:
    arity: int
    nparams: int
    closed: Callable
    alpha: Callable
    incl: InclusionPattern


_I = InclusionPattern.of
_SPECS: dict[str, _FormSpec] = {
    "D1": _FormSpec(6, 3, _d1, _alpha1, _I()),
    "D1_incl_1122": _FormSpec(6, 3, _d1_incl_1122, _alpha1, _I((1, 2))),
    "D1_incl_1132": _FormSpec(6, 3, _d1_incl_1132, _alpha1, _I((1, 3))),
    "D2": _FormSpec(6, 2, _d2, _alpha2, _I()),
    "D2_incl_1122": _FormSpec(6, 2, _d2_incl_1122, _alpha2, _I((1, 2))),
    "D2_incl_2112": _FormSpec(6, 2, _d2_incl_2112, _alpha2, _I((2, 1))),
    "D3": _FormSpec(5, 2, _d3, _alpha3, _I()),
    "D0": _FormSpec(5, 0, _d0, lambda k: _alpha3(3, 2, k), _I()),
    "D8": _FormSpec(8, 0, _d8, _alpha8, _I()),
    "D8_incl_1": _FormSpec(8, 0, _d8_incl_1, _alpha8, _I((3, 1))),
    "D8_incl_2": _FormSpec(8, 0, _d8_incl_2, _alpha8, _I((1, 3))),
    "D8_incl_3": _FormSpec(8, 0, _d8_incl_3, _alpha8, _I((3, 2))),
}


@dataclass(frozen=True)
class ClosedFormId:
    name: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        spec = _SPECS.get(self.name)
        if spec is None:
            raise KeyError(f"unknown closed form {self.name!r}")
        if len(self.params) != spec.nparams:
            raise ArityMismatch(f"{self.name} takes {spec.nparams} parameters, got {len(self.params)}")

    @property
    def arity(self) -> int:
        return _SPECS[self.name].arity

    @property
    def inclusion(self) -> InclusionPattern:
        return _SPECS[self.name].incl

    def __str__(self):
        return f"{self.name}{self.params}" if self.params else self.name


def form(name: str, *params: int) -> ClosedFormId:
    return ClosedFormId(name, tuple(params))


# Parameter values that occur as start vectors of the three cases.
D1_PARAMS = ((1, 1, 1), (2, 2, 1), (2, 2, 2))
D2_PARAMS = ((1, 1), (2, 1), (1, 2))
D3_PARAMS = ((1, 1), (2, 1), (3, 2))


def all_form_ids() -> list[ClosedFormId]:
    out = []
    for name in ("D1", "D1_incl_1122", "D1_incl_1132"):
        out += [form(name, *p) for p in D1_PARAMS]
    for name in ("D2", "D2_incl_1122", "D2_incl_2112"):
        out += [form(name, *p) for p in D2_PARAMS]
    out += [form("D3", *p) for p in D3_PARAMS]
    out += [form(n) for n in ("D0", "D8", "D8_incl_1", "D8_incl_2", "D8_incl_3")]
    return out


def _check(f: ClosedFormId, k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(int(v) for v in k)
    if len(k) != f.arity:
        raise ArityMismatch(f"{f} takes {f.arity} coordinates, got {len(k)}")
    return k


def disc_closed(f: ClosedFormId, k: Sequence[int]) -> int:
    k = _check(f, k)
    return _SPECS[f.name].closed(*f.params, k)


def alpha_from_k(f: ClosedFormId, k: Sequence[int]) -> tuple[ArmLengths, InclusionPattern]:
    k = _check(f, k)
    spec = _SPECS[f.name]
    return spec.alpha(*f.params, k), spec.incl


def disc_direct(f: ClosedFormId, k: Sequence[int]) -> int:
    alpha, incl = alpha_from_k(f, k)
    return disc_r3(alpha, incl)


@dataclass(frozen=True)
class QuadraticForm:
    """const + sum lin_i k_i + sum_{i<=j} quad[i][j] k_i k_j with integer data."""

    const: int
    lin: tuple[int, ...]
    quad: tuple[tuple[int, ...], ...]  # upper triangular, quad[i][j] for i <= j

    @property
    def arity(self) -> int:
        return len(self.lin)

    @classmethod
    def from_callable(cls, f: Callable[[tuple[int, ...]], int], n: int) -> "QuadraticForm":
        """Recover the coefficients of a polynomial of degree <= 2 by finite
        differences, then confirm the fit on extra points."""
        e = lambda *idx: tuple(sum(1 for t in idx if t == c) for c in range(n))  # noqa: E731
        c = f(e())
        f1 = [f(e(i)) for i in range(n)]
        quad = [[0] * n for _ in range(n)]
        lin = [0] * n
        for i in range(n):
            d2 = f(e(i, i)) - 2 * f1[i] + c
            if d2 % 2:
                raise ValueError("not an integral quadratic")
            quad[i][i] = d2 // 2
            lin[i] = f1[i] - c - quad[i][i]
            for j in range(i + 1, n):
                quad[i][j] = f(e(i, j)) - f1[i] - f1[j] + c
        q = cls(c, tuple(lin), tuple(tuple(r) for r in quad))
        for probe in (tuple(range(1, n + 1)), tuple((3 * i + 2) % 5 for i in range(n)), (3,) * n,
                      tuple(i + 4 for i in range(n))):
            if q(probe) != f(probe):
                raise ValueError("function is not a quadratic polynomial")
        return q

    def __call__(self, k: Sequence[int]) -> int:
        n = self.arity
        v = self.const + sum(a * b for a, b in zip(self.lin, k))
        for i in range(n):
            if k[i]:
                row = self.quad[i]
                v += k[i] * sum(row[j] * k[j] for j in range(i, n))
        return v

    def is_monotone(self) -> bool:
        """Nonpositive quadratic part and strictly negative linear part."""
        return all(v < 0 for v in self.lin) and all(
            self.quad[i][j] <= 0 for i in range(self.arity) for j in range(i, self.arity)
        )

    def coordinate_bound(self, floor: int, i: int) -> int:
        """Largest k_i compatible with value >= floor (others >= 0)."""
        return (self.const - floor) // (-self.lin[i])

    def values_at_least(self, floor: int) -> dict[int, int]:
        """Histogram of values >= floor over k in N^arity (monotone forms only)."""
        if not self.is_monotone():
            raise UnboundedForm("form has a nonnegative linear or positive quadratic coefficient")
        n = self.arity
        hist: dict[int, int] = {}
        if self.const < floor:
            return hist
        if n == 0:
            return {self.const: 1}
        Q = self.quad
        k = [0] * n

        def walk(d: int, base: int):
            # value of (k_0..k_{d-1}, t, 0, ...) = base + t*lin_d + Q_dd t^2
            lin = self.lin[d] + sum(Q[i][d] * k[i] for i in range(d))
            qd = Q[d][d]
            t = 0
            v = base
            last = d == n - 1
            while v >= floor:
                k[d] = t
                if last:
                    hist[v] = hist.get(v, 0) + 1
                else:
                    walk(d + 1, v)
                t += 1
                v = base + t * lin + qd * t * t
            k[d] = 0

        walk(0, self.const)
        return hist


def quadratic_form(f: ClosedFormId) -> QuadraticForm:
    return QuadraticForm.from_callable(lambda k: disc_closed(f, k), f.arity)


__all__ = [
    "ArityMismatch",
    "ClosedFormId",
    "QuadraticForm",
    "UnboundedForm",
    "all_form_ids",
    "alpha_from_k",
    "disc_closed",
    "disc_direct",
    "form",
    "quadratic_form",
]
