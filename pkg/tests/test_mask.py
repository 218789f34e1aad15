import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonspectral.errors import DigitSetError
from nonspectral.exact import RationalPoint
from nonspectral.mask import (
    SIERPINSKI,
    DigitSet,
    HypothesisVerdict,
    check_hypothesis,
    mask_is_zero,
    mask_value,
    minkowski_sum,
    safe_radius,
    zeros_four_digit,
    zeros_in_Ep,
    zeros_three_digit,
)

F = Fraction
P = RationalPoint
D1 = DigitSet(((0, 0), (-1, 0), (1, 1)))
D2 = DigitSet(((0, 0), (3, 1), (0, -1)))
COLLINEAR = DigitSet(((0, 0), (1, 0), (2, 0)))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=30)
points = st.builds(P, rationals, rationals)
digit = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
digit_sets = st.lists(digit, min_size=1, max_size=5, unique=True).map(lambda ds: DigitSet(tuple(ds)))
three_sets = st.lists(digit, min_size=3, max_size=3, unique=True).map(lambda ds: DigitSet(tuple(ds)))
four_sets = st.lists(digit, min_size=4, max_size=4, unique=True).map(lambda ds: DigitSet(tuple(ds)))
TETRA = DigitSet(((0, 0), (1, 0), (0, 1), (-1, -1)))


def thirds(*pairs):
    return {P(F(a, 3), F(b, 3)) for a, b in pairs}


def test_digit_set_validation():
    with pytest.raises(DigitSetError):
        DigitSet(())
    with pytest.raises(DigitSetError):
        DigitSet(((0, 0), (0, 0)))
    assert len(SIERPINSKI) == 3


def test_mask_examples():
    assert mask_is_zero(SIERPINSKI, P(F(1, 3), F(2, 3)))
    assert not mask_is_zero(SIERPINSKI, P(0, 0))
    assert not mask_is_zero(D1, P(0, 0))
    assert mask_is_zero(D2, P(0, F(1, 3)))


def test_zeros_in_ep_examples():
    assert set(zeros_in_Ep(SIERPINSKI, 3).points) == thirds((1, 2), (2, 1))
    assert set(zeros_in_Ep(D2, 3).points) == thirds((0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2))
    for p in (2, 3, 7):
        assert zeros_in_Ep(DigitSet(((0, 0),)), p).points == ()


def test_zeros_three_digit_examples():
    z = zeros_three_digit(D1)
    assert z.finite and set(z.points) == thirds((1, 0), (2, 0))
    z = zeros_three_digit(SIERPINSKI)
    assert z.finite and set(z.points) == thirds((1, 2), (2, 1))
    z = zeros_three_digit(COLLINEAR)
    assert z.finite is False and z.points == ()
    # the collinear zero set is the pair of lines x1 in {1/3, 2/3}
    assert len(zeros_in_Ep(COLLINEAR, 3)) == 6
    with pytest.raises(DigitSetError, match="requires exactly three digits"):
        zeros_three_digit(D1 if False else SIERPINSKI.__class__(((0, 0), (1, 0))))


def test_singular_three_digit_with_no_zero():
    # 1 + e(t) + e(4t) never vanishes: t = 1/3 or 2/3 forces 4t = t (mod 1)
    D = DigitSet(((0, 0), (1, 0), (4, 0)))
    z = zeros_three_digit(D)
    assert z.finite is True and z.points == ()
    assert check_hypothesis(D, 3).verdict is HypothesisVerdict.FAILS_EMPTY
    xs = [F(k, 600) for k in range(600)]
    assert min(abs(mask_value(D, (float(x), 0.0))) for x in xs) > 1e-3


def test_check_hypothesis_examples():
    assert check_hypothesis(SIERPINSKI, 3).verdict is HypothesisVerdict.HOLDS
    D3 = minkowski_sum(D1, D2)
    chk = check_hypothesis(D3, 3)
    assert chk.verdict is HypothesisVerdict.HOLDS
    assert set(chk.zeros.points) == {P(F(a, 3), F(b, 3)) for a in range(3) for b in range(3)} - {P(0, 0)}
    assert check_hypothesis(COLLINEAR, 3).verdict is HypothesisVerdict.FAILS_OUTSIDE
    assert check_hypothesis(DigitSet(((0, 0),)), 3).verdict is HypothesisVerdict.FAILS_EMPTY
    assert check_hypothesis(SIERPINSKI, 2).verdict is HypothesisVerdict.FAILS_OUTSIDE
    # 9 digits with no recorded factorisation: undecidable here
    plain = DigitSet(D3.digits)
    chk = check_hypothesis(plain, 3)
    assert chk.verdict is HypothesisVerdict.UNKNOWN
    assert len(chk.zeros) == 8


def test_minkowski_examples():
    D3 = minkowski_sum(D1, D2)
    assert set(D3.digits) == {(0, 0), (3, 1), (0, -1), (-1, 0), (2, 1), (-1, -1), (1, 1), (4, 2), (1, 0)}
    assert len(D3) == 9
    zero = DigitSet(((0, 0),))
    assert minkowski_sum(zero, zero).digits == ((0, 0),)
    with pytest.raises(DigitSetError, match="sum collision"):
        minkowski_sum(DigitSet(((0, 0), (1, 0))), DigitSet(((0, 0), (-1, 0))))


def test_safe_radius_examples():
    r = safe_radius(SIERPINSKI)
    assert r <= F(3) / (4 * F(314159265, 100000000))
    assert r > F(23, 100)
    assert safe_radius(DigitSet(((0, 0),))) == math.inf
    r = safe_radius(DigitSet(((0, 0), (1, 0))))
    assert r <= 1 / math.pi and r < F(1, 2)


@given(digit_sets, points, st.integers(-3, 3), st.integers(-3, 3))
def test_periodicity(D, xi, a, b):
    assert mask_is_zero(D, xi) == mask_is_zero(D, xi + P(a, b))


@given(digit_sets, points)
def test_conjugate_symmetry(D, xi):
    assert mask_is_zero(D, xi) == mask_is_zero(D, -xi)


@given(digit_sets, points)
@settings(max_examples=200)
def test_exact_zero_agrees_with_floats(D, xi):
    value = abs(mask_value(D, (xi.x, xi.y)))
    if mask_is_zero(D, xi):
        assert value < 1e-9
    else:
        assert value > 1e-7


@given(three_sets)
@settings(max_examples=80, deadline=None)
def test_three_digit_matches_grid_scan(D):
    z = zeros_three_digit(D)
    if z.finite is not True:
        return
    for p in range(2, 13):
        on_grid = {pt for pt in z.points if p % pt.denominator == 0}
        assert on_grid == set(zeros_in_Ep(D, p).points)
    for pt in z.points:
        assert mask_is_zero(D, pt)
        assert pt == pt.reduce_mod_1()


def test_product_law():
    rng = random.Random(3)
    cases = [(D1, D2), (SIERPINSKI, DigitSet(((0, 0), (2, 0)))), (DigitSet(((0, 0), (1, 1))), D2)]
    for A, B in cases:
        C = minkowski_sum(A, B)
        for _ in range(1000):
            q = rng.choice([2, 3, 4, 6, 9, 12, 5, 7])
            xi = P(F(rng.randrange(-2 * q, 2 * q), q), F(rng.randrange(-2 * q, 2 * q), q))
            assert mask_is_zero(C, xi) == (mask_is_zero(A, xi) or mask_is_zero(B, xi))


@given(digit_sets, st.integers(1, 10**6), st.integers(0, 10**6), st.integers(1, 10**6))
def test_no_zero_inside_safe_radius(D, a, b, den):
    r0 = safe_radius(D)
    xi = P(F(a, den), F(b, den))
    if r0 != math.inf and xi.norm_sq() >= r0 * r0:
        xi = xi * (r0 / (2 * (abs(xi.x) + abs(xi.y))))
    assert not mask_is_zero(D, xi)


def test_four_digit_examples():
    z = zeros_four_digit(TETRA)
    assert z.finite is True
    assert set(z.points) == {P(0, F(1, 2)), P(F(1, 2), 0), P(F(1, 2), F(1, 2))}
    assert check_hypothesis(TETRA, 2).verdict is HypothesisVerdict.HOLDS
    square = DigitSet(((0, 0), (1, 0), (0, 1), (1, 1)))
    assert zeros_four_digit(square).finite is False
    assert check_hypothesis(square, 2).verdict is HypothesisVerdict.FAILS_OUTSIDE
    with pytest.raises(DigitSetError, match="requires exactly four digits"):
        zeros_four_digit(SIERPINSKI)


def test_two_digit_zero_set_is_a_line():
    # the zeros of 1 + e(x1 + x2) form the line x1 + x2 = 1/2 (mod 1)
    D = DigitSet(((0, 0), (1, 1)))
    assert check_hypothesis(D, 2).verdict is HypothesisVerdict.FAILS_OUTSIDE
    assert mask_is_zero(D, P(F(1, 5), F(3, 10)))


@given(four_sets)
@settings(max_examples=80, deadline=None)
def test_four_digit_matches_grid_scan(D):
    z = zeros_four_digit(D)
    if z.finite is not True:
        return
    for p in range(2, 11):
        on_grid = {pt for pt in z.points if p % pt.denominator == 0}
        assert on_grid == set(zeros_in_Ep(D, p).points)
    for pt in z.points:
        assert mask_is_zero(D, pt)


@given(four_sets, st.sampled_from([2, 4, 6, 8]), st.integers(-8, 8), st.integers(-8, 8))
@settings(max_examples=150, deadline=None)
def test_four_digit_finite_set_is_complete(D, q, a, b):
    z = zeros_four_digit(D)
    xi = P(F(a, q), F(b, q))
    if z.finite is True and mask_is_zero(D, xi):
        assert xi.reduce_mod_1() in z.points
