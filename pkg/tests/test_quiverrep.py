import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmoduli.filtrations import FiltrationTriple, SubspaceBasis, UnsupportedRank, flag_arm
from toricmoduli.quiverrep import (
    DimensionVector,
    QuiverRepresentation,
    ShapeMismatch,
    Stability,
    ZeroDimension,
    candidate_subspaces,
    euler_form,
    filtration_lattice,
    moduli_dim,
    slope,
    triple_stability,
)
from toricmoduli.rank3.arms import NO_INCLUSION, InclusionPattern
from toricmoduli.rank3.configurations import flag_triple, generic_triple, standard_lemma_triple
from toricmoduli.rank3.systems import is_stable_alpha

U111 = DimensionVector.of(3, (2, 1), (2, 1), (2, 1))
STAR2 = DimensionVector.of(2, (1,), (1,), (1,))


def span(*vs):
    return SubspaceBasis.span(3, vs)


def test_euler_form_examples():
    assert euler_form(DimensionVector.of(1), DimensionVector.of(1)) == 1
    assert euler_form(U111, U111) == 0
    # 4 + 3 - 3*2
    assert euler_form(STAR2, STAR2) == 1
    with pytest.raises(ShapeMismatch):
        euler_form(U111, STAR2)


def test_slope_examples():
    assert slope(U111) == F(-1, 4)
    assert slope(DimensionVector.of(1)) == -1
    assert slope(DimensionVector.of(2, (1,))) == F(-2, 3)
    with pytest.raises(ZeroDimension):
        slope(DimensionVector.of(0, (0,)))


def test_moduli_dim_examples():
    assert moduli_dim(U111) == 1
    assert moduli_dim(STAR2) == 0
    assert moduli_dim(DimensionVector.of(1)) == 0


dims = st.integers(0, 4)


@settings(max_examples=200)
@given(st.lists(dims, min_size=7, max_size=7), st.lists(dims, min_size=7, max_size=7),
       st.lists(dims, min_size=7, max_size=7))
def test_euler_form_bilinear(x, y, z):
    def dv(v):
        return DimensionVector.of(v[0], v[1:3], v[3:5], v[5:7])

    d, e, f = dv(x), dv(y), dv(z)
    assert euler_form(d + e, f) == euler_form(d, f) + euler_form(e, f)
    assert euler_form(f, d + e) == euler_form(f, d) + euler_form(f, e)


def test_lemma_stability():
    assert triple_stability(standard_lemma_triple((0, 1, 2))) == Stability.STABLE
    for v2 in ((0, 1, 0), (0, 0, 1), (0, 1, 1)):
        assert triple_stability(standard_lemma_triple(v2)) == Stability.STRICTLY_SEMISTABLE


def test_polystable_type1_is_strictly_semistable():
    # a line <e2> plus a rank-2 summand on <e1,e3> carrying three distinct lines
    lines = [(1, 0, 0), (0, 0, 1), (1, 0, 1)]
    points = [span(v) for v in lines]
    planes = [span((0, 1, 0), v) for v in lines]
    t = flag_triple((1, 1, 1, 1, 1, 1), points, planes)
    assert triple_stability(t) == Stability.STRICTLY_SEMISTABLE


def test_trivial_arms():
    t = FiltrationTriple.trivial(3)
    rep = QuiverRepresentation.from_triple(t)
    assert filtration_lattice(rep) == [SubspaceBasis.zero(3), SubspaceBasis.whole(3)]
    assert triple_stability(t) == Stability.STRICTLY_SEMISTABLE


def test_lattice_contents():
    rep = QuiverRepresentation.from_triple(standard_lemma_triple((0, 1, 2)))
    lat = filtration_lattice(rep)
    # the planes <e1,e2> and <e3,e2> meet in <e2>
    assert span((0, 1, 0)) in lat
    assert span((1, 0, 0), (0, 0, 1)) in lat
    assert all(U in lat for chain in rep.arms for U in chain)
    assert set(lat) <= set(candidate_subspaces(rep))


def test_rank2_transverse_lines():
    def line_triple(vs):
        arms = tuple(flag_arm(2, [(1, SubspaceBasis.span(2, [v]))]) for v in vs)
        return FiltrationTriple(2, arms)

    assert triple_stability(line_triple([(1, 0), (0, 1), (1, 1)])) == Stability.STABLE
    assert triple_stability(line_triple([(1, 0), (1, 0), (1, 1)])) == Stability.UNSTABLE


def test_transverse_planes_distinct_points():
    rng = random.Random(7)
    t = generic_triple((1, 1, 1, 1, 1, 1), NO_INCLUSION, rng)
    assert triple_stability(t) == Stability.STABLE


def test_rank_guard():
    with pytest.raises(UnsupportedRank):
        triple_stability(FiltrationTriple.trivial(4))


def test_rep_validation():
    with pytest.raises(ShapeMismatch):
        QuiverRepresentation(3, ((span((1, 0, 0)), span((0, 1, 0), (0, 0, 1))),))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_base_change_invariance(seed):
    rng = random.Random(seed)
    alpha = tuple(rng.randint(0, 3) for _ in range(6))
    t = generic_triple(alpha, NO_INCLUSION, rng) if all(alpha) else standard_lemma_triple(
        rng.choice([(0, 1, 2), (0, 1, 0), (0, 1, 1)]))
    while True:
        g = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        if SubspaceBasis.span(3, g).dim == 3:
            break
    assert triple_stability(t.transform(g)) == triple_stability(t)


def _patterns_up_to_one():
    yield NO_INCLUSION
    for i, j in itertools.permutations((1, 2, 3), 2):
        yield InclusionPattern.of((i, j))


def test_oracle_matches_systems_on_single_patterns():
    # the quiver oracle on a generic configuration decides the same as the
    # inequality system for the empty and single-inclusion patterns
    rng = random.Random(11)
    n = 0
    for incl in _patterns_up_to_one():
        for alpha in itertools.product(range(1, 4), repeat=6):
            if rng.random() > 0.04:
                continue
            t = generic_triple(alpha, incl, rng)
            oracle = triple_stability(t) == Stability.STABLE
            assert oracle == is_stable_alpha(alpha, incl), (alpha, str(incl))
            n += 1
    assert n > 100


def test_double_pattern_discrepancy():
    # a frozen counterexample: with U_11 in U_22 and U_21 in U_12 both points
    # lie on both planes, so the planes of arms 1 and 2 coincide.  That plane
    # has weight 2*3 + 2*4 + 1 + 1 + 3 = 19 against a total of 25, and
    # 3 * 19 > 2 * 25, while the inequality system accepts alpha.
    alpha = (1, 1, 3, 3, 4, 3)
    incl = InclusionPattern.of((1, 2), (2, 1))
    assert is_stable_alpha(alpha, incl)
    t = generic_triple(alpha, incl, random.Random(3))
    assert triple_stability(t) == Stability.UNSTABLE
