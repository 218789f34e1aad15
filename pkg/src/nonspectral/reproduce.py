"""Reproduction suites for the 48-matrix reference table and worked examples.

Each suite returns ``(ok, payload)``; ``ok`` is the suite's mathematical
assertion and ``payload`` a JSON-ready record of what was checked.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .classify import (
    MatrixClass,
    classify,
    classify_residue,
    gl2_enumerate,
    is_expanding,
    lift_expanding,
    orbit_union,
    p_tilde,
    punctured_grid,
    residue_zeros,
)
from .exact import RationalPoint
from .finite_field import (
    FpMatrix2,
    companion_matrix,
    euler_phi,
    find_primitive_quadratics,
    matrix_order,
)
from .mask import SIERPINSKI, DigitSet, exact_zero_set, minkowski_sum, zeros_in_Ep
from .ortho import diffset_cover_check

F = Fraction

D1 = DigitSet(((0, 0), (-1, 0), (1, 1)))
D2 = DigitSet(((0, 0), (3, 1), (0, -1)))

# reference zero lists for the worked example
EXPECTED_Z_D1 = frozenset({RationalPoint(F(1, 3), 0), RationalPoint(F(2, 3), 0)})
EXPECTED_Z_D2 = frozenset(
    RationalPoint(F(x), F(y))
    for x, y in [(0, F(1, 3)), (F(1, 3), F(1, 3)), (F(2, 3), F(1, 3)),
                 (0, F(2, 3)), (F(1, 3), F(2, 3)), (F(2, 3), F(2, 3))]
)
EXPECTED_Z_SIERPINSKI = frozenset({RationalPoint(F(1, 3), F(2, 3)), RationalPoint(F(2, 3), F(1, 3))})


def load_m_alpha_fixture() -> tuple[dict[int, FpMatrix2], list[int]]:
    """The reference residue matrices ``M_1 .. M_48`` (mod 3, acting as M*)."""
    raw = json.loads(resources.files("nonspectral.data").joinpath("sierpinski_m_alpha.json").read_text())
    p = raw["p"]
    mats = {}
    for entry in raw["matrices"]:
        (a, b), (d, c) = entry["rows"]
        mats[entry["index"]] = FpMatrix2(a, b, d, c, p)
    return mats, list(raw["class2_indices"])


def example42_digit_sets() -> tuple[DigitSet, DigitSet, DigitSet]:
    return D1, D2, minkowski_sum(D1, D2)


def suite_sierpinski48(*, lift: bool = True) -> tuple[bool, dict]:
    p = 3
    mats, fixture_class2 = load_m_alpha_fixture()
    zero_report = exact_zero_set(SIERPINSKI)
    zeros = residue_zeros(SIERPINSKI, p)
    same_group = set(mats.values()) == set(gl2_enumerate(p)) and len(mats) == 48
    rows = []
    class2, lift_mismatch = [], []
    for idx in sorted(mats):
        A = mats[idx]
        klass, orbit = classify_residue(A, zeros, p)
        nstar = 9 if klass is MatrixClass.CLASS2 else 3
        row = {"index": idx, "mstar_mod_3": A, "class": klass, "orbit_size": len(orbit), "nstar": nstar}
        if lift:
            M = lift_expanding(A, p)
            full = classify(M, SIERPINSKI, p)
            row["lifted_m"] = M
            if full.klass is not klass or full.nstar.value != nstar:
                lift_mismatch.append(idx)
        if klass is MatrixClass.CLASS2:
            class2.append(idx)
        rows.append(row)
    counts = {"class1": 48 - len(class2), "class2": len(class2)}
    ok = (
        same_group
        and frozenset(zero_report.points) == EXPECTED_Z_SIERPINSKI
        and counts == {"class1": 36, "class2": 12}
        and class2 == sorted(fixture_class2)
        and not lift_mismatch
    )
    return ok, {
        "zero_set": zero_report.points,
        "fixture_is_gl2_f3": same_group,
        "counts": counts,
        "class2_indices": class2,
        "fixture_class2_indices": fixture_class2,
        "lift_mismatches": lift_mismatch,
        "matrices": rows,
    }


def suite_example42() -> tuple[bool, dict]:
    p = 3
    d1, d2, d3 = example42_digit_sets()
    z1 = frozenset(exact_zero_set(d1).points)
    z2 = frozenset(exact_zero_set(d2).points)
    z3_report = exact_zero_set(d3)
    z3 = frozenset(z3_report.points)
    scan3 = frozenset(zeros_in_Ep(d3, p).points)
    punct = frozenset(r.to_point() for r in punctured_grid(p))
    zeros = residue_zeros(d3, p)
    not_class2 = [A for A in gl2_enumerate(p) if classify_residue(A, zeros, p)[0] is not MatrixClass.CLASS2]
    ok = (
        z1 == EXPECTED_Z_D1
        and z2 == EXPECTED_Z_D2
        and z3_report.finite is True
        and z3 == punct
        and scan3 == punct
        and not not_class2
    )
    return ok, {
        "D3": d3,
        "Z_D1": z1,
        "Z_D2": z2,
        "Z_D3": z3,
        "Z_D3_equals_punctured_grid": z3 == punct,
        "residue_classes_checked": len(gl2_enumerate(p)),
        "class1_matrices": not_class2,
    }


def suite_prop27(ps=(2, 3, 4, 5)) -> tuple[bool, dict]:
    results = []
    ok = True
    for p in ps:
        m = p_tilde(p) + 1
        rep = diffset_cover_check(p, m)
        ok &= rep.all_pass
        results.append(rep)
    payload = {"checks": results}
    if 3 in ps:
        # one fewer point is not enough at p = 3
        ce = diffset_cover_check(3, 3)
        payload["p3_m3"] = ce
        ok &= not ce.all_pass
    return ok, payload


def construct_full_orbit_witness(p: int) -> tuple[bool, dict]:
    """Primitive quadratic -> companion matrix -> expanding lift, with full-orbit check."""
    polys = find_primitive_quadratics(p)
    expected_count = euler_phi(p * p - 1) // 2
    if not polys:
        return False, {"p": p, "primitive_count": 0, "expected_count": expected_count}
    f = polys[0]
    C = companion_matrix(f)
    order = matrix_order(C)
    # the companion matrix plays the role of M*; the lift returns M with M* = C (mod p)
    M = lift_expanding(C, p)
    mstar = M.transpose()
    punct = punctured_grid(p)
    bad = [lam for lam in sorted(punct) if orbit_union(mstar, [lam], p) != punct]
    ok = (
        len(polys) == expected_count
        and order == p * p - 1
        and is_expanding(M)
        and FpMatrix2.from_int(mstar, p) == C
        and not bad
    )
    return ok, {
        "p": p,
        "primitive_polynomials": polys,
        "primitive_count": len(polys),
        "expected_count": expected_count,
        "polynomial": f,
        "companion": C,
        "companion_order": order,
        "witness_m": M,
        "witness_mstar": mstar,
        "det": M.det,
        "expanding": is_expanding(M),
        "lambdas_checked": len(punct),
        "lambdas_without_full_orbit": bad,
    }


def suite_prop26(ps=(2, 3, 5)) -> tuple[bool, dict]:
    ok = True
    out = []
    for p in ps:
        good, payload = construct_full_orbit_witness(p)
        ok &= good
        out.append(payload)
    return ok, {"witnesses": out}


SUITES = {
    "sierpinski48": suite_sierpinski48,
    "example42": suite_example42,
    "prop27": suite_prop27,
    "prop26": suite_prop26,
}
