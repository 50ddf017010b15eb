"""Truncated generating functions sum c_e x^e with exponents e <= 0."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .exactgeom import format_rational


class MixedResidues(ValueError):
    pass


class InvalidResidue(ValueError):
    """A discriminant outside the residue classes a formula covers."""


@dataclass(frozen=True)
class EulerSeries:
    """Exponent -> coefficient, exponents <= 0 in a single class modulo ``modulus``."""

    terms: tuple[tuple[int, int | Fraction], ...]
    modulus: int = 6
    _index: dict = field(default=None, repr=False, compare=False, hash=False)  # type: ignore[assignment]

    def __post_init__(self):
        seen = {}
        for e, c in self.terms:
            if e > 0:
                raise ValueError(f"positive exponent {e}")
            if e in seen:
                raise ValueError(f"exponent {e} listed twice")
            seen[e] = c
        if len({e % self.modulus for e in seen}) > 1:
            raise MixedResidues(f"exponents are not in one class modulo {self.modulus}")
        ordered = tuple(sorted(seen.items(), key=lambda t: -t[0]))
        object.__setattr__(self, "terms", ordered)
        object.__setattr__(self, "_index", seen)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int | Fraction]], modulus: int = 6) -> "EulerSeries":
        return cls(tuple(pairs), modulus)

    def __getitem__(self, exponent: int):
        return self._index.get(exponent, 0)

    def __iter__(self) -> Iterator[tuple[int, int | Fraction]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def exponents(self) -> list[int]:
        return [e for e, _ in self.terms]

    @property
    def coefficients(self) -> list:
        return [c for _, c in self.terms]

    def to_json(self) -> list[list]:
        return [[e, c if isinstance(c, int) else format_rational(c)] for e, c in self.terms]

    def __str__(self) -> str:
        return " + ".join(f"{format_rational(Fraction(c))}x^{e}" for e, c in self.terms)


__all__ = ["EulerSeries", "InvalidResidue", "MixedResidues"]
