"""Arithmetic over F_p for 2x2 matrices and monic quadratics.

Orders are found by bounded iteration: the moduli of interest are tiny, and
iterating keeps every answer trivially auditable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotPrimeError, SingularMatrixError
from .exact import IntMatrix2, prime_factors


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == (n,)


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")


def euler_phi(m: int) -> int:
    """Euler's totient; ``euler_phi(1) == 1``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return 1
    out = m
    for q in prime_factors(m):
        out -= out // q
    return out


def gl2_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


@dataclass(frozen=True)
class FpMatrix2:
    """Matrix ``[[a, b], [d, c]]`` over F_p, entries reduced to ``0..p-1``."""

    a: int
    b: int
    d: int
    c: int
    p: int

    def __post_init__(self):
        for name in "abdc":
            object.__setattr__(self, name, getattr(self, name) % self.p)

    @classmethod
    def from_int(cls, m: IntMatrix2, p: int) -> "FpMatrix2":
        return cls(m.a, m.b, m.d, m.c, p)

    @classmethod
    def identity(cls, p: int) -> "FpMatrix2":
        return cls(1, 0, 0, 1, p)

    @property
    def rows(self):
        return ((self.a, self.b), (self.d, self.c))

    @property
    def det(self) -> int:
        return (self.a * self.c - self.b * self.d) % self.p

    def is_invertible(self) -> bool:
        return math.gcd(self.det, self.p) == 1

    def __matmul__(self, other: "FpMatrix2") -> "FpMatrix2":
        return FpMatrix2(
            self.a * other.a + self.b * other.d,
            self.a * other.b + self.b * other.c,
            self.d * other.a + self.c * other.d,
            self.d * other.b + self.c * other.c,
            self.p,
        )

    def apply(self, u: int, v: int) -> tuple[int, int]:
        p = self.p
        return ((self.a * u + self.b * v) % p, (self.d * u + self.c * v) % p)

    def lift(self) -> IntMatrix2:
        """Integer matrix with entries in ``0..p-1``."""
        return IntMatrix2(self.a, self.b, self.d, self.c)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.d}, {self.c}]] mod {self.p}"


def matrix_order(M: FpMatrix2) -> int:
    """Least ``s >= 1`` with ``M**s == I``."""
    if not M.is_invertible():
        raise SingularMatrixError("matrix is not invertible mod p")
    ident = FpMatrix2.identity(M.p)
    power = M
    for s in range(1, gl2_order(M.p) + 1):
        if power == ident:
            return s
        power = power @ M
    raise AssertionError("order exceeded |GL(2, F_p)|")  # unreachable for invertible M


@dataclass(frozen=True)
class FpPoly2:
    """Monic quadratic ``x^2 - a1 x - a0`` over F_p."""

    a0: int
    a1: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a0", self.a0 % self.p)
        object.__setattr__(self, "a1", self.a1 % self.p)

    @classmethod
    def from_coeffs(cls, c0: int, c1: int, p: int) -> "FpPoly2":
        """Build ``x^2 + c1 x + c0``."""
        return cls(-c0, -c1, p)

    def __call__(self, x: int) -> int:
        return (x * x - self.a1 * x - self.a0) % self.p

    def coeffs(self) -> tuple[int, int, int]:
        """``(c0, c1, 1)`` with ``f = c0 + c1 x + x^2``, residues in ``0..p-1``."""
        return ((-self.a0) % self.p, (-self.a1) % self.p, 1)

    def __str__(self):
        c0, c1, _ = self.coeffs()
        return f"x^2 + {c1}x + {c0} (mod {self.p})"


def poly_order(f: FpPoly2) -> int:
    """Least q with ``f | x^q - 1``: the multiplicative order of x in ``F_p[x]/(f)``."""
    if f(0) == 0:
        raise ValueError("order is only defined when f(0) != 0")
    p = f.p
    # element c0 + c1*x; multiplying by x uses x^2 = a1 x + a0
    c0, c1 = 0, 1
    for q in range(1, p * p):
        if (c0, c1) == (1, 0):
            return q
        c0, c1 = (c1 * f.a0) % p, (c0 + c1 * f.a1) % p
    raise AssertionError("order exceeded p^2 - 1")


def is_irreducible(f: FpPoly2) -> bool:
    return all(f(x) != 0 for x in range(f.p))


def is_primitive(f: FpPoly2) -> bool:
    return is_irreducible(f) and poly_order(f) == f.p**2 - 1


def find_primitive_quadratics(p: int) -> list[FpPoly2]:
    """Exhaustive scan of the monic quadratics over F_p (p prime)."""
    require_prime(p)
    return [FpPoly2(a0, a1, p) for a0 in range(1, p) for a1 in range(p) if is_primitive(FpPoly2(a0, a1, p))]


def companion_matrix(f: FpPoly2) -> FpMatrix2:
    """``[[0, a0], [1, a1]]`` for ``f = x^2 - a1 x - a0``."""
    return FpMatrix2(0, f.a0, 1, f.a1, f.p)
