import itertools
import random
from fractions import Fraction

import pytest

from nonspectral.classify import classify, gl2_enumerate, is_expanding, lift_expanding
from nonspectral.errors import ConstructionError, HypothesisError, NotExpandingError
from nonspectral.exact import IntMatrix2, RationalPoint, mat_pow
from nonspectral.finite_field import euler_phi
from nonspectral.mask import SIERPINSKI, DigitSet, ep_grid, mask_is_zero
from nonspectral.ortho import (
    construct_lambda,
    construct_small_lambda,
    default_candidates,
    diffset_cover_check,
    is_orthogonal_set,
    iteration_bound,
    lambda_scale,
    orthogonal_count_bound,
    lifted_grid_candidates,
    max_clique_orthogonal,
    oracle_certificate,
    zero_set_member,
)

F = Fraction
P = RationalPoint
TWO_I = IntMatrix2(2, 0, 0, 2)
CLASS2_M = IntMatrix2(3, 1, 1, 4).transpose()  # M* = [[3, 1], [1, 4]]
TETRA = DigitSet(((0, 0), (1, 0), (0, 1), (-1, -1)))


def test_member_examples():
    t = zero_set_member(TWO_I, SIERPINSKI, P(F(2, 3), F(4, 3)))
    assert t.member and t.witness_j == 1 and t.termination == "witness-found"
    t = zero_set_member(TWO_I, SIERPINSKI, P(0, 0))
    assert not t.member and t.witness_j is None and t.termination == "safe-radius"
    for lam in [P(1, 0), P(0, 1), P(3, -5), P(40, 17)]:
        t = zero_set_member(TWO_I, SIERPINSKI, lam)
        assert not t.member and t.iterations <= t.iteration_bound
    # a zero of the mask itself is not a witness: j starts at 1
    assert not zero_set_member(TWO_I, SIERPINSKI, P(F(1, 3), F(2, 3))).member


def first_witness(M, D, lam, jmax):
    mstar = M.transpose()
    return next((j for j in range(1, jmax + 1) if mask_is_zero(D, mat_pow(mstar, -j).apply(lam))), None)


def test_member_deep_witness():
    for k in range(1, 9):
        lam = mat_pow(CLASS2_M.transpose(), k).apply(P(F(1, 3), F(2, 3)))
        t = zero_set_member(CLASS2_M, SIERPINSKI, lam)
        assert t.member and t.witness_j == first_witness(CLASS2_M, SIERPINSKI, lam, k)
    # with M = 2I the witness is found early: 2^6 = 1 (mod 3) maps the zero to itself
    lam = mat_pow(TWO_I, 7).apply(P(F(1, 3), F(2, 3)))
    assert zero_set_member(TWO_I, SIERPINSKI, lam).witness_j == 1


def test_non_expanding_rejected():
    with pytest.raises(NotExpandingError, match="no termination guarantee"):
        zero_set_member(IntMatrix2(1, 0, 0, 2), SIERPINSKI, P(0, 0))


def test_certificate_fields():
    cert = oracle_certificate(TWO_I, SIERPINSKI)
    assert cert.k0 == 1 and cert.contraction_sq == F(1, 2) and cert.window_sq == 2
    assert cert.threshold_sq == cert.safe_radius**2 / 2
    shear = IntMatrix2(2, 5, 0, 2)  # far from normal: several steps before contraction
    assert oracle_certificate(shear, SIERPINSKI).k0 > 1


def _random_instance(rng):
    while True:
        M = IntMatrix2(*(rng.randint(-5, 5) for _ in range(4)))
        if is_expanding(M):
            break
    D = DigitSet(tuple(rng.sample([(x, y) for x in range(-2, 3) for y in range(-2, 3)], rng.randint(2, 4))))
    return M, D


def test_soundness_and_bounds_random():
    rng = random.Random(99)
    members = 0
    for _ in range(150):
        M, D = _random_instance(rng)
        mstar = M.transpose()
        if rng.random() < 0.5:
            # plant a witness: push a mask zero forward by a few steps
            zeros = [pt for p in (2, 3, 4) for pt in ep_grid(p) if mask_is_zero(D, pt)]
            if not zeros:
                continue
            lam = mat_pow(mstar, rng.randint(1, 4)).apply(rng.choice(zeros))
        else:
            q = rng.randint(1, 12)
            lam = P(F(rng.randint(-30, 30), q), F(rng.randint(-30, 30), q))
        t = zero_set_member(M, D, lam)
        assert t.iterations <= iteration_bound(M, D, lam)
        if t.member:
            members += 1
            assert mask_is_zero(D, mat_pow(mstar, -t.witness_j).apply(lam))
        else:
            assert t.final_norm_sq < t.threshold_sq
    assert members > 20


def test_orthogonal_set_examples():
    assert is_orthogonal_set(TWO_I, SIERPINSKI, [P(0, 0)]).certified
    s1 = P(F(2, 3), F(4, 3))
    assert is_orthogonal_set(TWO_I, SIERPINSKI, [P(0, 0), s1]).certified
    res = is_orthogonal_set(TWO_I, SIERPINSKI, [P(0, 0), P(1, 0)])
    assert not res.certified and len(res.failures) == 2
    with pytest.raises(ValueError):
        is_orthogonal_set(TWO_I, SIERPINSKI, [P(0, 0), P(0, 0)])


def test_construct_lambda_class2():
    out = construct_lambda(CLASS2_M, SIERPINSKI, 3)
    assert lambda_scale(CLASS2_M, 3) == 11**16
    assert out.certified and len(out) == 9
    assert set(out.frequencies) == {pt * 11**16 for pt in ep_grid(3)}
    assert P(0, 0) in out.frequencies


def test_construct_lambda_rejects_class1():
    with pytest.raises(ConstructionError, match="construction requires class 2"):
        construct_lambda(TWO_I, SIERPINSKI, 3)


def test_construct_lambda_p2():
    M = lift_expanding(gl2_enumerate(2)[0], 2)
    out = construct_lambda(M, TETRA, 2)
    assert out.certified and len(out) == 4


def test_p2_line_zero_set():
    # m_D vanishes on a whole line, so the classification hypothesis fails,
    # but the scaled grid is still certified orthogonal by the oracle
    D = DigitSet(((0, 0), (1, 1)))
    M = IntMatrix2(0, 3, 3, 3)
    with pytest.raises(HypothesisError):
        construct_lambda(M, D, 2)
    scale = lambda_scale(M, 2)
    assert is_orthogonal_set(M, D, [pt * scale for pt in ep_grid(2)]).certified


def test_small_lambda_examples():
    out = construct_small_lambda(TWO_I, SIERPINSKI, 3)
    assert out.certified
    assert out.frequencies == (P(0, 0), P(F(2, 3), F(4, 3)), P(F(-2, 3), F(-4, 3)))
    D = DigitSet(((0, 0), (1, 1)))
    assert is_orthogonal_set(TWO_I, D, [P(0, 0), P(1, 1)]).certified
    out = construct_small_lambda(TWO_I, D, 2)
    assert out.certified and len(out) == 2
    with pytest.raises(ConstructionError):
        construct_small_lambda(TWO_I, DigitSet(((0, 0),)), 3)
    with pytest.raises(ValueError):
        construct_small_lambda(TWO_I, SIERPINSKI, 5)


def test_scaling_identity_witnesses():
    # L^(phi(p)(p^2-1)) v is a member with witness the first j that sends v into the zeros
    rng = random.Random(4)
    class2 = [A for A in gl2_enumerate(3) if classify(lift_expanding(A, 3), SIERPINSKI, 3).klass.value == "class2"]
    for A in rng.sample(class2, 6):
        M = lift_expanding(A, 3)
        scale = lambda_scale(M, 3)
        assert scale % 3 == 1
        for v in ep_grid(3, punctured=True):
            t = zero_set_member(M, SIERPINSKI, v * scale)
            assert t.member and t.witness_j <= 8
            assert t.witness_j == first_witness(M, SIERPINSKI, v * scale, 8)


def test_euler_identity_for_accepted_matrices():
    for A in gl2_enumerate(3):
        M = lift_expanding(A, 3)
        classify(M, SIERPINSKI, 3)
        assert pow(M.det, euler_phi(3), 3) == 1
    for p in (5, 7):
        for A in gl2_enumerate(p)[:50]:
            assert pow(lift_expanding(A, p).det, euler_phi(p), p) == 1


@pytest.mark.parametrize("p, m, ok, count", [(2, 3, True, 4), (3, 4, True, 126), (3, 3, False, None)])
def test_diffset_examples(p, m, ok, count):
    rep = diffset_cover_check(p, m)
    assert rep.all_pass is ok
    if ok:
        assert rep.subsets_checked == count and rep.counterexample is None
    else:
        A = rep.counterexample
        diffs = {((a.u - b.u) % p, (a.v - b.v) % p) for a, b in itertools.product(A, A)}
        assert len(A) == m and len(diffs) < p * p


def test_diffset_counterexample_from_statement():
    A = [(0, 0), (1, 0), (2, 0)]
    diffs = {((a[0] - b[0]) % 3, (a[1] - b[1]) % 3) for a in A for b in A}
    assert len(diffs) == 3


def test_diffset_rejects_bad_m():
    with pytest.raises(ValueError):
        diffset_cover_check(3, 1)


def test_clique_examples():
    lam = construct_lambda(CLASS2_M, SIERPINSKI, 3)
    res = max_clique_orthogonal(CLASS2_M, SIERPINSKI, lam.frequencies)
    assert res.size == 9 and res.witness.certified
    assert max_clique_orthogonal(TWO_I, SIERPINSKI, [P(0, 0)]).size == 1
    res = max_clique_orthogonal(TWO_I, SIERPINSKI, lifted_grid_candidates(TWO_I, 3))
    assert res.size == 3 and res.witness.certified
    res = max_clique_orthogonal(TWO_I, SIERPINSKI, default_candidates(TWO_I, SIERPINSKI, 3))
    assert res.size == 3
    with pytest.raises(ValueError, match="cap"):
        max_clique_orthogonal(TWO_I, SIERPINSKI, [P(k, 0) for k in range(5)], cap=4)


def test_clique_never_exceeds_p_squared():
    rng = random.Random(8)
    for A in rng.sample(gl2_enumerate(3), 8):
        M = lift_expanding(A, 3)
        cands = set(lifted_grid_candidates(M, 3)) | set(default_candidates(M, SIERPINSKI, 3))
        res = max_clique_orthogonal(M, SIERPINSKI, sorted(cands))
        assert res.size <= 9 == orthogonal_count_bound(8)
        assert res.size <= classify(M, SIERPINSKI, 3).nstar.value
