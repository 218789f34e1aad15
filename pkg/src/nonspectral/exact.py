"""Exact scalars, planar vectors, 2x2 matrices and cyclotomic machinery.

Everything here is arbitrary-precision: frequencies are pairs of
:class:`fractions.Fraction`, matrices carry Python ints (or Fractions once
inverted).  No decision procedure in the package touches floating point.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import SingularMatrixError

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of ``|n|`` in increasing order (trial division)."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no prime factorisation")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def radical(n: int) -> int:
    return math.prod(prime_factors(n))


def sqrt_upper(x: Rational, scale: int = 10**6) -> Fraction:
    """A rational ``r >= sqrt(x)`` within ``1/scale`` of the true root (exact when x is a square)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative input")
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    target = num * den * scale * scale
    s = math.isqrt(target)
    if s * s != target:
        s += 1
    return Fraction(s, den * scale)


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class RationalPoint:
    """Exact point of Q^2.  Ordering is lexicographic on (x, y)."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def zero(cls) -> "RationalPoint":
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def from_residue(cls, u: int, v: int, p: int) -> "RationalPoint":
        return cls(Fraction(u, p), Fraction(v, p))

    def __add__(self, other: "RationalPoint") -> "RationalPoint":
        return RationalPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "RationalPoint") -> "RationalPoint":
        return RationalPoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "RationalPoint":
        return RationalPoint(-self.x, -self.y)

    def __mul__(self, k: Rational) -> "RationalPoint":
        return RationalPoint(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y

    @property
    def denominator(self) -> int:
        """Least common denominator of the two coordinates."""
        return math.lcm(self.x.denominator, self.y.denominator)

    def is_integral(self) -> bool:
        return self.denominator == 1

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def norm_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def reduce_mod_1(self) -> "RationalPoint":
        return RationalPoint(self.x - math.floor(self.x), self.y - math.floor(self.y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def reduce_mod_1(v: RationalPoint) -> RationalPoint:
    return v.reduce_mod_1()


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix2:
    """Integer matrix ``[[a, b], [d, c]]`` (the entry naming used throughout the package)."""

    a: int
    b: int
    d: int
    c: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix2":
        (a, b), (d, c) = rows
        for e in (a, b, d, c):
            if isinstance(e, bool) or int(e) != e:
                raise TypeError(f"matrix entries must be integers, got {e!r}")
        return cls(int(a), int(b), int(d), int(c))

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.d, self.c))

    @property
    def det(self) -> int:
        return self.a * self.c - self.b * self.d

    @property
    def trace(self) -> int:
        return self.a + self.c

    def transpose(self) -> "IntMatrix2":
        return IntMatrix2(self.a, self.d, self.b, self.c)

    def adjugate(self) -> "IntMatrix2":
        return IntMatrix2(self.c, -self.b, -self.d, self.a)

    def scale(self, n: int) -> "IntMatrix2":
        return IntMatrix2(n * self.a, n * self.b, n * self.d, n * self.c)

    def mod(self, p: int) -> "IntMatrix2":
        return IntMatrix2(self.a % p, self.b % p, self.d % p, self.c % p)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.d,
            self.a * other.b + self.b * other.c,
            self.d * other.a + self.c * other.d,
            self.d * other.b + self.c * other.c,
        )

    def apply(self, v: RationalPoint) -> RationalPoint:
        return RationalPoint(self.a * v.x + self.b * v.y, self.d * v.x + self.c * v.y)

    def to_rational(self) -> "RatMatrix2":
        return RatMatrix2(*(Fraction(e) for e in (self.a, self.b, self.d, self.c)))

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.d}, {self.c}]]"


@dataclass(frozen=True)
class RatMatrix2:
    """Rational 2x2 matrix with the same ``[[a, b], [d, c]]`` layout."""

    a: Fraction
    b: Fraction
    d: Fraction
    c: Fraction

    @classmethod
    def identity(cls) -> "RatMatrix2":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    @property
    def rows(self):
        return ((self.a, self.b), (self.d, self.c))

    @property
    def det(self) -> Fraction:
        return self.a * self.c - self.b * self.d

    def __matmul__(self, other: "RatMatrix2") -> "RatMatrix2":
        return RatMatrix2(
            self.a * other.a + self.b * other.d,
            self.a * other.b + self.b * other.c,
            self.d * other.a + self.c * other.d,
            self.d * other.b + self.c * other.c,
        )

    def apply(self, v: RationalPoint) -> RationalPoint:
        return RationalPoint(self.a * v.x + self.b * v.y, self.d * v.x + self.c * v.y)

    def frobenius_sq(self) -> Fraction:
        return self.a**2 + self.b**2 + self.d**2 + self.c**2

    def __eq__(self, other):
        if isinstance(other, (RatMatrix2, IntMatrix2)):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)


def mat_apply(m: IntMatrix2, v: RationalPoint) -> RationalPoint:
    return m.apply(v)


def mat_inv_apply(m: IntMatrix2, v: RationalPoint) -> RationalPoint:
    """Solve ``m x = v`` exactly through the adjugate."""
    det = m.det
    if det == 0:
        raise SingularMatrixError("singular")
    w = m.adjugate().apply(v)
    return RationalPoint(w.x / det, w.y / det)


def mat_inverse(m: IntMatrix2) -> RatMatrix2:
    det = m.det
    if det == 0:
        raise SingularMatrixError("singular")
    adj = m.adjugate()
    return RatMatrix2(*(Fraction(e, det) for e in (adj.a, adj.b, adj.d, adj.c)))


def mat_pow(m: IntMatrix2 | RatMatrix2, k: int) -> RatMatrix2:
    """``m**k`` as an exact rational matrix; negative ``k`` inverts first."""
    base = m.to_rational() if isinstance(m, IntMatrix2) else m
    if k < 0:
        if isinstance(m, IntMatrix2):
            base = mat_inverse(m)
        else:
            det = base.det
            if det == 0:
                raise SingularMatrixError("singular")
            base = RatMatrix2(base.c / det, -base.b / det, -base.d / det, base.a / det)
        k = -k
    result = RatMatrix2.identity()
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def frobenius_sq(m: IntMatrix2 | RatMatrix2) -> Fraction:
    return Fraction(m.a**2 + m.b**2 + m.d**2 + m.c**2)


def operator_norm_bound(m: IntMatrix2 | RatMatrix2) -> Fraction:
    """Rational upper bound on the spectral norm, via the Frobenius norm.

    Decision procedures compare :func:`frobenius_sq` values instead, which
    avoids the square root entirely.
    """
    return sqrt_upper(frobenius_sq(m))


# ---------------------------------------------------------------------------
# integer polynomials and cyclotomics
# ---------------------------------------------------------------------------

class IntPolynomial:
    """Dense integer polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-x for x in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Quotient and remainder; ``divisor`` must have leading coefficient +-1."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = divisor.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            coef = rem[k] * lead
            if coef:
                quot[k - dd] = coef
                for i, dc in enumerate(divisor.coeffs):
                    rem[k - dd + i] -= coef * dc
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def __mod__(self, divisor: "IntPolynomial") -> "IntPolynomial":
        return self.divmod(divisor)[1]


@lru_cache(maxsize=None)
def cyclotomic_poly(q: int) -> IntPolynomial:
    """Phi_q by exact division of ``x^q - 1`` by Phi_d over the proper divisors d of q."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    num = IntPolynomial.monomial(q) - IntPolynomial([1])
    for d in range(1, q):
        if q % d == 0:
            num, rem = num.divmod(cyclotomic_poly(d))
            assert rem.is_zero()
    return num


def _vanishes_squarefree(terms: dict[int, int], primes: tuple[int, ...]) -> bool:
    """True iff ``sum c zeta_r**e == 0`` for squarefree ``r = prod(primes)``.

    Peels off the largest prime p: with ``m = r / p``, the powers of zeta_p span
    Q(zeta_r) over Q(zeta_m) with the single relation ``1 + zeta_p + ... = 0``,
    so the sum vanishes iff the p residue classes of ``e mod p`` carry equal
    coefficients in Q(zeta_m).  Sparse throughout, so huge primes are cheap.
    """
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        return True
    if not primes:
        return sum(terms.values()) == 0
    p, rest = primes[-1], primes[:-1]
    m = math.prod(rest)
    classes: dict[int, dict[int, int]] = defaultdict(dict)
    for e, c in terms.items():
        cls = classes[e % p]
        cls[e % m] = cls.get(e % m, 0) + c
    if len(classes) < p:
        # an empty class forces every class to vanish on its own
        return all(_vanishes_squarefree(cls, rest) for cls in classes.values())
    base = classes[0]
    for i in range(1, p):
        diff = dict(classes[i])
        for k, c in base.items():
            diff[k] = diff.get(k, 0) - c
        if not _vanishes_squarefree(diff, rest):
            return False
    return True


def roots_of_unity_sum_is_zero(
    exponents: Iterable[int],
    q: int,
    *,
    prime_factors_of_q: Sequence[int] | None = None,
) -> bool:
    """Decide ``sum zeta_q**e == 0`` exactly (``zeta_q = exp(2 pi i / q)``).

    The sum vanishes iff Phi_q divides ``sum_e c_e x^e``.  With ``r`` the radical
    of ``q`` and ``s = q / r`` we have ``Phi_q(x) = Phi_r(x^s)``, and
    ``1, x, ..., x^(s-1)`` is a basis of Q(zeta_q) over Q(zeta_r); so the test
    splits by ``e mod s`` into independent tests over Q(zeta_r).
    ``prime_factors_of_q`` skips factoring ``q`` when the caller knows it.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    counts = Counter(e % q for e in exponents)
    if not counts:
        return True
    if q == 1:
        return False
    primes = prime_factors_of_q if prime_factors_of_q is not None else prime_factors(q)
    r = math.prod(set(primes))
    if q % r:
        raise ValueError("supplied primes do not divide q")
    s = q // r
    groups: dict[int, dict[int, int]] = defaultdict(dict)
    for e, c in counts.items():
        groups[e % s][e // s] = c
    for terms in groups.values():
        # a lone positive monomial is never divisible by Phi_r
        if len(terms) == 1:
            return False
    ordered = tuple(sorted(set(primes)))
    return all(_vanishes_squarefree(terms, ordered) for terms in groups.values())
