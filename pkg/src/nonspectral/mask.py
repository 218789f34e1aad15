"""Digit sets and exact zero sets of their mask polynomials.

The mask of a digit set ``D`` is ``m_D(x) = (1/#D) sum_d exp(2 pi i <d, x>)``.
At a rational point with common denominator ``q`` every term is a q-th root
of unity, so ``m_D(x) == 0`` is decided by cyclotomic divisibility.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DigitSetError
from .exact import RationalPoint, roots_of_unity_sum_is_zero, sqrt_upper

# rational upper bound on pi (355/113 = 3.14159292... > pi)
PI_UPPER = Fraction(355, 113)

ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


@dataclass(frozen=True)
class DigitSet:
    """A finite set of distinct integer vectors, kept in the order given.

    ``factors`` is populated by :func:`minkowski_sum`; when present the mask
    factors as the product of the factors' masks, which lets zero sets of
    large sums be decided from their small summands.
    """

    digits: tuple[tuple[int, int], ...]
    factors: tuple["DigitSet", ...] = field(default=(), compare=False)

    def __post_init__(self):
        digits = tuple((int(x), int(y)) for x, y in self.digits)
        if not digits:
            raise DigitSetError("digit set must be nonempty")
        if len(set(digits)) != len(digits):
            raise DigitSetError("digits must be pairwise distinct")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "DigitSet":
        return cls(tuple(tuple(p) for p in pairs))

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __contains__(self, d) -> bool:
        return tuple(d) in self.digits


SIERPINSKI = DigitSet(((0, 0), (1, 0), (0, 1)))


class HypothesisVerdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS_EMPTY = "fails-empty"
    FAILS_OUTSIDE = "fails-outside"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ZeroSetReport:
    """Zeros of ``m_D`` in ``[0,1)^2``.

    ``finite`` is ``None`` when the method only inspected finitely many
    candidate points (the grid scan) and so says nothing about the rest.
    """

    points: tuple[RationalPoint, ...]
    finite: bool | None
    method: str

    def __len__(self):
        return len(self.points)

    def __contains__(self, pt) -> bool:
        return pt in self.points


@dataclass(frozen=True)
class HypothesisCheck:
    verdict: HypothesisVerdict
    zeros: ZeroSetReport


def _mask_zero_scaled(
    digits: Sequence[tuple[int, int]], X: int, Y: int, q: int, primes: Sequence[int] | None = None
) -> bool:
    # the point is (X/q, Y/q); q need not be the reduced denominator
    return roots_of_unity_sum_is_zero(
        (dx * X + dy * Y for dx, dy in digits), q, prime_factors_of_q=primes
    )


def mask_is_zero(D: DigitSet, xi: RationalPoint) -> bool:
    """Exact test of ``m_D(xi) == 0``."""
    q = xi.denominator
    return _mask_zero_scaled(D.digits, int(xi.x * q), int(xi.y * q), q)


def mask_value(D: DigitSet, xi: Sequence[float]) -> complex:
    """Floating-point ``m_D(xi)``; diagnostics only, never used for decisions."""
    import cmath

    s = sum(cmath.exp(2j * math.pi * (dx * float(xi[0]) + dy * float(xi[1]))) for dx, dy in D)
    return s / len(D)


def ep_grid(p: int, *, punctured: bool = False) -> list[RationalPoint]:
    """Points ``(i/p, j/p)``, ``0 <= i, j < p``, in lexicographic order."""
    pts = [RationalPoint.from_residue(i, j, p) for i in range(p) for j in range(p)]
    return pts[1:] if punctured else pts


def zeros_in_Ep(D: DigitSet, p: int) -> ZeroSetReport:
    """All zeros of ``m_D`` among the p^2 grid points ``(i/p, j/p)``."""
    if p < 2:
        raise ValueError("p must be >= 2")
    pts = tuple(pt for pt in ep_grid(p) if mask_is_zero(D, pt))
    return ZeroSetReport(pts, None, "ep-scan")


def _solve_congruence(A: tuple[tuple[int, int], tuple[int, int]], rhs: tuple[Fraction, Fraction]):
    """All ``x in [0,1)^2`` with ``A x = rhs (mod Z^2)``; A nonsingular.

    The solutions are one particular solution plus the group ``A^-1 Z^2 / Z^2``
    of order ``|det A|``, generated by the columns of ``A^-1``.
    """
    (a11, a12), (a21, a22) = A
    det = a11 * a22 - a12 * a21

    def inv(r1, r2) -> RationalPoint:
        return RationalPoint(Fraction(a22 * r1 - a12 * r2, det), Fraction(-a21 * r1 + a11 * r2, det))

    gens = (inv(1, 0), inv(0, 1))
    group = {RationalPoint.zero()}
    frontier = [RationalPoint.zero()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = (x + g).reduce_mod_1()
            if y not in group:
                group.add(y)
                frontier.append(y)
    x0 = inv(rhs[0], rhs[1])
    return {(x0 + h).reduce_mod_1() for h in group}


def _rank_one_solvable(
    a1: tuple[int, int], a2: tuple[int, int], targets: Iterable[tuple[Fraction, Fraction]]
) -> bool:
    """For parallel nonzero a1, a2: is ``(<a1,x>, <a2,x>) = target (mod 1)`` solvable for some target?"""
    g = math.gcd(*a1)
    v = (a1[0] // g, a1[1] // g)
    beta = a2[0] // v[0] if v[0] else a2[1] // v[1]
    # t = <v, x> ranges over all of R; only t mod 1 matters
    for b1, b2 in targets:
        for k in range(g):
            t = (b1 + k) / g
            if (beta * t - b2).denominator == 1:
                return True
    return False


def _rank_one_has_zero(a1: tuple[int, int], a2: tuple[int, int]) -> bool:
    return _rank_one_solvable(a1, a2, ((ONE_THIRD, TWO_THIRDS), (TWO_THIRDS, ONE_THIRD)))


def _diff(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    return (u[0] - v[0], u[1] - v[1])


def zeros_three_digit(D: DigitSet) -> ZeroSetReport:
    """Exact zero set in ``[0,1)^2`` of a three-element digit set.

    ``1 + z1 + z2 = 0`` with unimodular ``z1, z2`` forces ``{z1, z2}`` to be the
    two primitive cube roots of unity, so the zeros solve
    ``A x = (1/3, 2/3)`` or ``(2/3, 1/3)`` modulo ``Z^2`` where the rows of A are
    ``d1 - d0`` and ``d2 - d0``.
    """
    if len(D) != 3:
        raise DigitSetError("requires exactly three digits")
    d0, d1, d2 = D.digits
    a1, a2 = _diff(d1, d0), _diff(d2, d0)
    det = a1[0] * a2[1] - a1[1] * a2[0]
    if det == 0:
        if _rank_one_has_zero(a1, a2):
            return ZeroSetReport((), False, "three-digit-exact")
        return ZeroSetReport((), True, "three-digit-exact")
    sols = _solve_congruence((a1, a2), (ONE_THIRD, TWO_THIRDS))
    sols |= _solve_congruence((a1, a2), (TWO_THIRDS, ONE_THIRD))
    return ZeroSetReport(tuple(sorted(sols)), True, "three-digit-exact")


def zeros_four_digit(D: DigitSet) -> ZeroSetReport:
    """Exact zero set in ``[0,1)^2`` of a four-element digit set.

    Four unit vectors sum to zero only as two antipodal pairs, so each zero
    solves ``<a, x> = <b, x> = 1/2 (mod 1)`` for one of the three pairings,
    with ``a``, ``b`` the differences within the pairs.  A pairing with
    parallel differences contributes a line or nothing.
    """
    if len(D) != 4:
        raise DigitSetError("requires exactly four digits")
    d0 = D.digits[0]
    half = Fraction(1, 2)
    sols: set[RationalPoint] = set()
    for i, j, k in ((1, 2, 3), (2, 1, 3), (3, 1, 2)):
        a, b = _diff(D.digits[i], d0), _diff(D.digits[k], D.digits[j])
        if a[0] * b[1] - a[1] * b[0] == 0:
            if _rank_one_solvable(a, b, ((half, half),)):
                return ZeroSetReport((), False, "four-digit-exact")
            continue
        sols |= _solve_congruence((a, b), (half, half))
    return ZeroSetReport(tuple(sorted(sols)), True, "four-digit-exact")


def exact_zero_set(D: DigitSet) -> ZeroSetReport | None:
    """The full zero set in ``[0,1)^2`` when it is decidable here, else ``None``.

    Decidable: one digit (no zeros), two digits (a family of lines), three
    or four digits, and Minkowski sums whose factors are all decidable.
    """
    if D.factors:
        parts = [exact_zero_set(f) for f in D.factors]
        if any(part is None for part in parts):
            return None
        if any(part.finite is False for part in parts):
            return ZeroSetReport((), False, "factor-union")
        pts = sorted({pt for part in parts for pt in part.points})
        return ZeroSetReport(tuple(pts), True, "factor-union")
    if len(D) == 1:
        return ZeroSetReport((), True, "single-digit")
    if len(D) == 2:
        # 1 + e(<d1-d0, x>) = 0 on the lines <d1-d0, x> = 1/2 mod 1
        return ZeroSetReport((), False, "two-digit")
    if len(D) == 3:
        return zeros_three_digit(D)
    if len(D) == 4:
        return zeros_four_digit(D)
    return None


def check_hypothesis(D: DigitSet, p: int) -> HypothesisCheck:
    """Is the zero set of ``m_D`` in ``[0,1)^2`` nonempty and inside the punctured p-grid?

    Definitive whenever :func:`exact_zero_set` is; otherwise ``UNKNOWN`` with
    the grid-restricted zeros attached.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    full = exact_zero_set(D)
    if full is None:
        # m_D(0) = 1, so the grid scan can never exhibit a zero at the origin
        return HypothesisCheck(HypothesisVerdict.UNKNOWN, zeros_in_Ep(D, p))
    if full.finite is False:
        return HypothesisCheck(HypothesisVerdict.FAILS_OUTSIDE, full)
    if not full.points:
        return HypothesisCheck(HypothesisVerdict.FAILS_EMPTY, full)
    inside = all(p % pt.denominator == 0 and not pt.is_zero() for pt in full.points)
    verdict = HypothesisVerdict.HOLDS if inside else HypothesisVerdict.FAILS_OUTSIDE
    return HypothesisCheck(verdict, full)


def minkowski_sum(D1: DigitSet, D2: DigitSet) -> DigitSet:
    """``{d1 + d2}``; all sums must be distinct so that ``m_{D1+D2} = m_D1 * m_D2``."""
    sums = [(x1 + x2, y1 + y2) for x1, y1 in D1 for x2, y2 in D2]
    if len(set(sums)) != len(sums):
        raise DigitSetError("sum collision: product identity fails")
    factors = (D1.factors or (D1,)) + (D2.factors or (D2,))
    return DigitSet(tuple(sums), factors)


def digit_norm_sum_upper(D: DigitSet) -> Fraction:
    return sum((sqrt_upper(x * x + y * y) for x, y in D), Fraction(0))


def safe_radius(D: DigitSet) -> Fraction | float:
    """Radius of a zero-free ball about the origin, as an exact rational.

    From ``|m_D(x) - 1| <= (2 pi / #D) * sum ||d|| * ||x||``; pi and the digit
    norms are over-approximated so the result is a valid lower bound.
    Returns ``math.inf`` when every digit is 0 (the mask is identically 1).
    """
    s = digit_norm_sum_upper(D)
    if s == 0:
        return math.inf
    return Fraction(len(D)) / (2 * PI_UPPER * s)
