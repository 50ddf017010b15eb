import itertools
from fractions import Fraction as F

import pytest

from toricmoduli.rank2 import (
    branch_disc,
    bridge_count,
    chi_from_hurwitz,
    chi_rank2,
    compose,
    decompose,
    disc2,
    divisor_count,
    hurwitz,
    reduced_forms,
    series_rank2,
    stable_triple,
)
from toricmoduli.series import InvalidResidue

# class numbers from a standard table (forms weighted 1/2 and 1/3)
HURWITZ_TABLE = {
    3: F(1, 3), 4: F(1, 2), 7: 1, 8: 1, 11: 1, 12: F(4, 3), 15: 2, 16: F(3, 2), 19: 1, 20: 2,
    23: 3, 24: 2, 27: F(4, 3), 28: 2, 31: 3, 32: 3, 35: 2, 36: F(5, 2), 39: 4, 40: 2,
}


def brute_chi(delta, box=60):
    return sum(
        1
        for a in itertools.product(range(1, box), repeat=3)
        if stable_triple(a) and disc2(a) == delta
    )


def test_examples():
    assert stable_triple((1, 1, 1))
    assert not stable_triple((1, 1, 2))
    assert disc2((1, 1, 1)) == -3
    assert chi_rank2(-3) == 1
    assert chi_from_hurwitz(3) == 1
    assert chi_rank2(-5) == 0


def test_hurwitz_table():
    for n, h in HURWITZ_TABLE.items():
        assert hurwitz(n) == h, n
    assert hurwitz(5) == 0


def test_reduced_forms_brute():
    # reduced forms by a direct scan of |b| <= a <= c
    for n in range(3, 80):
        if n % 4 not in (0, 3):
            continue
        want = []
        for a in range(1, n + 1):
            for b in range(-a, a + 1):
                for c in range(a, n + 1):
                    if b * b - 4 * a * c != -n:
                        continue
                    if b == -a or (a == c and b < 0):
                        continue
                    want.append((a, b, c))
        assert sorted(reduced_forms(n)) == sorted(want), n


def test_divisor_count():
    for n in range(1, 60):
        assert divisor_count(n) == sum(1 for d in range(1, n + 1) if n % d == 0)
    with pytest.raises(ValueError):
        divisor_count(0)


def test_chi_brute_force():
    for n in range(3, 60):
        if n % 4 in (0, 3):
            assert chi_rank2(-n) == brute_chi(-n), n


def test_hurwitz_identity():
    for n in range(3, 201):
        if n % 4 in (0, 3):
            assert chi_rank2(-n) == chi_from_hurwitz(n), n


def test_bridge():
    for n in range(4, 200, 4):
        assert chi_rank2(-n) == bridge_count(-n)
    with pytest.raises(InvalidResidue):
        bridge_count(-7)


def test_decomposition_partition():
    for a in itertools.product(range(1, 31), repeat=3):
        if not stable_triple(a):
            with pytest.raises(ValueError):
                decompose(a)
            continue
        k, i = decompose(a)
        assert min(k) >= 0 and i in (1, 2)
        assert compose(k, i) == a
        assert branch_disc(k, i) == disc2(a)
        assert (-disc2(a)) % 4 == (3 if i == 1 else 0)


def test_invalid():
    with pytest.raises(InvalidResidue):
        chi_rank2(0)
    with pytest.raises(InvalidResidue):
        chi_rank2(4)
    with pytest.raises(InvalidResidue):
        series_rank2(1, 3)
    with pytest.raises(InvalidResidue):
        chi_from_hurwitz(5)


def test_series():
    s = series_rank2(3, 5)
    assert s.exponents == [-3, -7, -11, -15, -19]
    assert s[-3] == 1
    assert list(s.coefficients) == [chi_rank2(e) for e in s.exponents]
    s0 = series_rank2(0, 4)
    assert s0.exponents == [-4, -8, -12, -16]
    assert s0[-4] == 0 and s0[-12] == 1
