"""Self-checks shared by the command line and the acceptance tests.

Every check returns a ``Check``; a failing check carries a short
counterexample in ``detail``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import rank2
from .exactgeom import Polyhedron, extremal_rays, extreme_points, to_fraction
from .rank3.arms import NO_INCLUSION, disc_r3
from .rank3.counting import series_rank3
from .rank3.forms import all_form_ids, alpha_from_k, disc_closed, form
from .rank3.systems import CASES, compose_solution, decompose_solution, inequality_system, strict_solutions
from .rank3.systems import NotRepresentable, residue_class


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def golden() -> dict:
    return json.loads(resources.files("toricmoduli").joinpath("data/golden.json").read_text())


POLYHEDRON_CASES = ("rank2", "case1", "case2", "case3", "rank3-mod0")


def named_polyhedron(name: str) -> Polyhedron:
    if name == "rank2":
        return rank2.stability_polyhedron()
    if name in CASES:
        return CASES[name].system()
    if name == "rank3-mod0":
        return inequality_system(NO_INCLUSION)
    raise KeyError(f"unknown polyhedron case {name!r}; choose from {', '.join(POLYHEDRON_CASES)}")


def _point_set(points) -> set[tuple[Fraction, ...]]:
    return {tuple(to_fraction(v) for v in p) for p in points}


def check_polyhedra() -> list[Check]:
    out = []
    for name, want in golden()["polyhedra"].items():
        P = named_polyhedron(name)
        rays = set(extremal_rays(P))
        exp_rays = {tuple(r) for r in want["rays"]}
        out.append(Check(f"polyhedra/{name}/rays", rays == exp_rays, _diff(rays, exp_rays)))
        if "points" in want:
            pts = _point_set(extreme_points(P))
            exp = _point_set(want["points"])
            out.append(Check(f"polyhedra/{name}/points", pts == exp, _diff(pts, exp)))
    return out


def _diff(got: set, want: set) -> str:
    if got == want:
        return ""
    return f"missing {sorted(want - got)[:3]} extra {sorted(got - want)[:3]}"


def check_closed_forms(box: int = 4) -> list[Check]:
    out = []
    for f in all_form_ids():
        bad = None
        for k in itertools.product(range(box + 1), repeat=f.arity):
            alpha, incl = alpha_from_k(f, k)
            if disc_closed(f, k) != disc_r3(alpha, incl):
                bad = k
                break
        out.append(Check(f"closed-forms/{f}", bad is None, f"k={bad}" if bad else ""))
    out.extend(check_symmetries(box))
    return out


def check_symmetries(box: int = 4) -> list[Check]:
    d1a, d1b = form("D1_incl_1122", 2, 2, 1), form("D1_incl_1132", 2, 2, 1)
    d2a, d2b = form("D2_incl_1122", 1, 1), form("D2_incl_2112", 1, 1)
    d2_12, d2_21 = form("D2_incl_1122", 1, 2), form("D2_incl_1122", 2, 1)
    rels = {
        "D1_1122=D1_1132(swap k3,k4)": lambda k: disc_closed(d1a, k)
        == disc_closed(d1b, (k[0], k[1], k[3], k[2], k[4], k[5])),
        "D2_1122=D2_2112(k1,k2,k5,k6,k3,k4)": lambda k: disc_closed(d2a, k)
        == disc_closed(d2b, (k[0], k[1], k[4], k[5], k[2], k[3])),
        "D2_1122(1,2)=D2_1122(2,1) reversed": lambda k: disc_closed(d2_12, k)
        == disc_closed(d2_21, (k[1], k[0], k[5], k[4], k[3], k[2])),
    }
    out = []
    for name, rel in rels.items():
        bad = next((k for k in itertools.product(range(box + 1), repeat=6) if not rel(k)), None)
        out.append(Check(f"symmetry/{name}", bad is None, f"k={bad}" if bad else ""))
    return out


def check_decomposition(bound: int = 8) -> list[Check]:
    out = []
    for name, case in CASES.items():
        problems = []
        n_sol = 0
        for alpha in strict_solutions(case, bound):
            n_sol += 1
            try:
                s, n = decompose_solution(case, alpha)
            except NotRepresentable as exc:
                problems.append(f"{alpha}: {exc}")
                continue
            if compose_solution(case, s, n) != alpha:
                problems.append(f"{alpha}: round trip gave {compose_solution(case, s, n)}")
            # no other start vector may reach alpha
            others = [t for t, v in enumerate(case.starts) if t != s and residue_class(v) == residue_class(alpha)]
            if others:
                problems.append(f"{alpha}: start vectors {others} share its residue class")
            if len(problems) > 3:
                break
        out.append(Check(f"decomposition/{name}", not problems and n_sol > 0, f"{n_sol} solutions; " + "; ".join(problems)))
    return out


def check_hurwitz(limit: int = 200) -> list[Check]:
    bad = [n for n in range(3, limit + 1) if n % 4 in (0, 3) and rank2.chi_rank2(-n) != rank2.chi_from_hurwitz(n)]
    return [Check(f"hurwitz/n<={limit}", not bad, f"n={bad[:5]}" if bad else "")]


def check_series() -> list[Check]:
    out = []
    for residue in (4, 0):
        g = golden()[f"series_rank3_residue{residue}"]
        want = g["coefficients"]
        got = series_rank3(residue, len(want))
        mism = [(e, c, w) for (e, c), w in zip(got, want) if c != w]
        detail = "" if not mism else "exponent/computed/printed " + ", ".join(f"{e}:{c}/{w}" for e, c, w in mism[:6])
        out.append(Check(f"series/rank3/residue{residue}", not mism, detail))
    return out


SUITES = {
    "polyhedra": check_polyhedra,
    "closed-forms": check_closed_forms,
    "decomposition": check_decomposition,
    "hurwitz": check_hurwitz,
    "series": check_series,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for s in SUITES.values() for c in s()]
    return SUITES[name]()


__all__ = ["Check", "POLYHEDRON_CASES", "SUITES", "golden", "named_polyhedron", "run_suite"]
