"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction as F

from toricmoduli.exactgeom import extremal_rays, extreme_points, solve_square
from toricmoduli.filtrations import ChernData, discriminant_normalized, discriminant_working, shift, twist_chern
from toricmoduli.quiverrep import Stability, triple_stability
from toricmoduli.rank2 import chi_rank2, divisor_count, hurwitz, stability_polyhedron
from toricmoduli.rank3.arms import InclusionPattern, c1_r3, c2_r3, disc_r3
from toricmoduli.rank3.configurations import generic_triple, standard_lemma_triple
from toricmoduli.rank3.counting import _histogram, reduced_form, series_rank3, solution_alphas
from toricmoduli.rank3.forms import all_form_ids, alpha_from_k, disc_closed
from toricmoduli.rank3.systems import CASES, compose_solution, decompose_solution, strict_solutions

from _triples import random_triple

PRINTED_MOD4 = [
    0, 3, 15, 36, 69, 114, 165, 246, 303, 432, 492, 669, 726, 975, 999, 1332, 1338, 1743, 1716, 2226,
    2130, 2775, 2625, 3354, 3129, 4041, 3735, 4752, 4317, 5532, 5070, 6393,
]
PRINTED_MOD0 = [
    0, 0, 0, -1, 0, -6, 0, -3, -12, 6, 12, -15, 17, 72, -24, 102, 30, 138, 132, 171, 27, 420, 204,
    360, 180, 678, 192, 773, 351, 906, 624, 816, 519,
]

h = F(1, 2)
PRINTED_POLYHEDRA = {
    "rank2": ({(1, 1, 1)}, {(1, 1, 0), (0, 1, 1), (1, 0, 1)}),
    "case1": (
        {(1, 1, 1, 1, 1, 1), (1, 3, 2, 1, 1, 1), (1, 2, 3, 1, 1, 1)},
        {(1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0),
         (0, 1, 0, 1, 0, 0), (0, 0, 1, 1, 0, 0)},
    ),
    "case2": (
        {(1, 1, 1, 1, 1, 1), (1, 1, 5 * h, 1, 1, 1), (2, 1, 3, 1, 1, 1), (1, 2, 3, 1, 1, 1),
         (1, 1, 1, 1, 2, 3), (1, 1, 1, 2, 1, 3), (1, 1, 2, 1, 1, 2), (1, 1, 1, 1, 1, 5 * h)},
        {(1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1), (1, 0, 0, 0, 0, 1), (0, 0, 1, 1, 0, 0),
         (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0)},
    ),
    "case3": (
        {(0, 1, 1, 2, 2, 1), (0, 1, 1, 3, 1, 1), (0, 1, 1, 1, 2, 2), (0, 2, 1, 1, 1, 1),
         (0, 1, 1, 1, 3 * h, 1), (0, 1, 1, 2, 1, 2), (0, 1, 2, 1, 1, 1), (0, 1, 1, 1, 1, 3 * h),
         (0, 1, 1, 1, 1, 1)},
        {(0, 0, 0, 1, 1, 1), (0, 1, 0, 1, 0, 0), (0, 0, 1, 1, 0, 0), (0, 0, 1, 0, 1, 0),
         (0, 1, 0, 0, 0, 1)},
    ),
}


def report(capsys, n, title, ok, detail=""):
    with capsys.disabled():
        line = f"criterion {n} [{title}]: {'PASS' if ok else 'FAIL'}"
        print(f"\n{line}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def _series_check(residue, printed):
    # time a cold computation
    _histogram.cache_clear()
    reduced_form.cache_clear()
    t0 = time.perf_counter()
    got = series_rank3(residue, len(printed))
    dt = time.perf_counter() - t0
    bad = [(e, c, w) for (e, c), w in zip(got, printed) if c != w]
    detail = f"{dt:.2f}s"
    if bad:
        detail += "; exponent computed/printed " + ", ".join(f"{e}: {c}/{w}" for e, c, w in bad[:5])
    return not bad and len(list(got)) == len(printed) and dt < 60, detail


def test_criterion_1_series_mod4(capsys):
    ok, detail = _series_check(4, PRINTED_MOD4)
    report(capsys, 1, "rank-3 series, |delta| = 4 mod 6", ok, detail)


def test_criterion_2_series_mod0(capsys):
    ok, detail = _series_check(0, PRINTED_MOD0)
    report(capsys, 2, "rank-3 series, |delta| = 0 mod 6", ok, detail)


def test_criterion_3_polyhedra(capsys):
    bad = []
    for name, (points, rays) in PRINTED_POLYHEDRA.items():
        P = stability_polyhedron() if name == "rank2" else CASES[name].system()
        got_points = {tuple(F(v) for v in p) for p in extreme_points(P)}
        if got_points != {tuple(F(v) for v in p) for p in points}:
            bad.append(f"{name} points")
        if set(extremal_rays(P)) != rays:
            bad.append(f"{name} rays")
    report(capsys, 3, "polyhedron golden sets", not bad, ", ".join(bad))


def test_criterion_4_closed_forms(capsys):
    bad = []
    for f in all_form_ids():
        for k in itertools.product(range(5), repeat=f.arity):
            alpha, incl = alpha_from_k(f, k)
            if disc_closed(f, k) != disc_r3(alpha, incl):
                bad.append(f"{f} at {k}")
                break
    report(capsys, 4, "closed form vs direct discriminant", not bad, "; ".join(bad[:3]))


def test_criterion_5_hurwitz(capsys):
    bad = []
    for n in range(3, 201):
        if n % 4 == 3:
            want = 3 * hurwitz(n)
        elif n % 4 == 0:
            want = 3 * hurwitz(n) - F(3, 2) * divisor_count(n // 4)
        else:
            continue
        if chi_rank2(-n) != want:
            bad.append(n)
    report(capsys, 5, "Hurwitz identity for n <= 200", not bad, f"n = {bad[:5]}" if bad else "")


def _ray_solver(case):
    """Map d to the rational n with sum n_i * ray_i = d, or None."""
    rays = case.rays
    cols = [i for i in range(6) if any(r[i] for r in rays)]
    for rows in itertools.combinations(cols, len(rays)):
        M = [[r[i] for r in rays] for i in rows]
        inv = [solve_square(M, [int(i == j) for i in range(len(rows))]) for j in range(len(rows))]
        if inv[0] is not None:
            break
    else:
        raise AssertionError("rays are dependent")

    def solve(d):
        if any(d[i] for i in range(6) if i not in cols):
            return None
        n = [sum(inv[j][c] * d[rows[j]] for j in range(len(rows))) for c in range(len(rays))]
        if any(sum(c * r[i] for c, r in zip(n, rays)) != d[i] for i in cols):
            return None
        return n

    return solve


def _reaches(solve, start, alpha):
    """Whether alpha - start is a nonnegative integer combination of the rays."""
    n = solve([a - b for a, b in zip(alpha, start)])
    return n is not None and all(v >= 0 and F(v).denominator == 1 for v in n)


def test_criterion_6_unique_decomposition(capsys):
    bad = []
    total = 0
    for name, case in CASES.items():
        solve = _ray_solver(case)
        for alpha in strict_solutions(case, 8):
            total += 1
            s, n = decompose_solution(case, alpha)
            if compose_solution(case, s, n) != alpha:
                bad.append(f"{name} {alpha}: no round trip")
            hits = sum(_reaches(solve, start, alpha) for start in case.starts)
            if hits != 1:
                bad.append(f"{name} {alpha}: {hits} start vectors")
    report(capsys, 6, "unique decomposition, alpha <= 8", not bad and total > 0,
           f"{total} solutions" + ("; " + "; ".join(bad[:3]) if bad else ""))


def test_criterion_7_properties(capsys):
    rng = random.Random(2024)
    bad = []
    for _ in range(1000):
        t = random_triple(rng)
        k = tuple(rng.randint(-6, 6) for _ in range(3))
        if discriminant_working(shift(t, k)) != discriminant_working(t):
            bad.append("shift")
            break
    for _ in range(100):
        r = rng.randint(1, 5)
        c = ChernData(rng.randint(-50, 50), rng.randint(-500, 500), r)
        if discriminant_normalized(twist_chern(c, rng.randint(-9, 9))) != discriminant_normalized(c):
            bad.append("twist")
            break
    pairs = list(itertools.permutations((1, 2, 3), 2))
    for _ in range(10_000):
        alpha = tuple(rng.randint(0, 15) for _ in range(6))
        incl = InclusionPattern.of(*rng.sample(pairs, rng.randint(0, 2)))
        if (-disc_r3(alpha, incl)) % 6 not in (0, 4):
            bad.append(f"residue {alpha} {incl}")
            break
    n_sol = 0
    for residue, deltas in ((4, range(-4, -101, -6)), (0, range(0, -97, -6))):
        for delta in deltas:
            for _, _, alpha, incl in solution_alphas(residue, delta):
                n_sol += 1
                c = ChernData(c1_r3(alpha), c2_r3(alpha, incl), 3)
                if disc_r3(alpha, incl) != delta or discriminant_normalized(c) < 0:
                    bad.append(f"Bogomolov {alpha}")
    report(capsys, 7, "property suites", not bad and n_sol > 0,
           f"{n_sol} counted solutions checked" + ("; " + ", ".join(bad[:3]) if bad else ""))


def test_criterion_8_oracle_concordance(capsys):
    rng = random.Random(8)
    bad = []
    n = 0
    for residue, deltas in ((4, range(-4, -41, -6)), (0, range(0, -41, -6))):
        for delta in deltas:
            for term, k, alpha, incl in solution_alphas(residue, delta):
                n += 1
                verdict = triple_stability(generic_triple(alpha, incl, rng))
                if verdict != Stability.STABLE:
                    bad.append(f"{term.form}{k} -> {alpha} {incl}: {verdict.value}")
    for v2 in ((0, 1, 0), (0, 0, 1), (0, 1, 1)):
        verdict = triple_stability(standard_lemma_triple(v2))
        if verdict != Stability.STRICTLY_SEMISTABLE:
            bad.append(f"boundary {v2}: {verdict.value}")
    report(capsys, 8, "stability oracle concordance", not bad and n > 0,
           f"{n} counted solutions, 3 boundary points" + ("; " + "; ".join(bad[:3]) if bad else ""))
