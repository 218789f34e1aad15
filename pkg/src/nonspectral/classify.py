"""Orbits of M* on the punctured p-grid and the two-class dichotomy.

Throughout, ``mstar`` denotes the matrix that *acts* on frequencies, i.e.
the transpose of the matrix ``M`` defining the measure.  :func:`classify`
takes ``M`` and transposes it; the orbit primitives take ``mstar`` directly.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import CoprimalityError, HypothesisError, NotExpandingError, SingularMatrixError
from .exact import IntMatrix2, RationalPoint
from .finite_field import FpMatrix2, require_prime
from .mask import DigitSet, HypothesisVerdict, check_hypothesis

AnyMatrix = IntMatrix2 | FpMatrix2


@dataclass(frozen=True, order=True)
class ResidueVector:
    """``(u, v)`` mod p, standing for the grid point ``(u/p, v/p)``."""

    u: int
    v: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "u", self.u % self.p)
        object.__setattr__(self, "v", self.v % self.p)

    @classmethod
    def from_point(cls, pt: RationalPoint, p: int) -> "ResidueVector":
        u, v = pt.x * p, pt.y * p
        if u.denominator != 1 or v.denominator != 1:
            raise ValueError(f"{pt} is not a point of the {p}-grid")
        return cls(int(u), int(v), p)

    def to_point(self) -> RationalPoint:
        return RationalPoint.from_residue(self.u, self.v, self.p)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def __str__(self):
        return f"({self.u}, {self.v})/{self.p}"


def punctured_grid(p: int) -> frozenset[ResidueVector]:
    return frozenset(ResidueVector(u, v, p) for u in range(p) for v in range(p) if u or v)


class MatrixClass(str, enum.Enum):
    CLASS1 = "class1"
    CLASS2 = "class2"


@dataclass(frozen=True)
class NStarVerdict:
    kind: str  # "exact" | "upper-bound"
    value: int
    source: str


@dataclass(frozen=True)
class Classification:
    klass: MatrixClass
    orbit_union: frozenset[ResidueVector]
    p_tilde: int
    nstar: NStarVerdict
    p: int
    m: IntMatrix2 | None = None
    zeros: tuple[ResidueVector, ...] = ()

    @property
    def mstar(self) -> IntMatrix2 | None:
        return None if self.m is None else self.m.transpose()


def _det(m: AnyMatrix) -> int:
    return m.a * m.c - m.b * m.d


def _check_coprime(mstar: AnyMatrix, p: int) -> None:
    if math.gcd(_det(mstar), p) != 1:
        raise CoprimalityError("determinant shares factor with p")


def step_map(mstar: AnyMatrix, p: int, v: ResidueVector) -> ResidueVector:
    """``mstar @ v`` mod p; a permutation of the nonzero residues when ``gcd(det, p) = 1``."""
    _check_coprime(mstar, p)
    return _step(mstar, p, v)


def _step(m: AnyMatrix, p: int, v: ResidueVector) -> ResidueVector:
    return ResidueVector(m.a * v.u + m.b * v.v, m.d * v.u + m.c * v.v, p)


def orbit_union(
    mstar: AnyMatrix, Z: Iterable[ResidueVector], p: int, *, cap: int | None = None
) -> frozenset[ResidueVector]:
    """Union of ``mstar^j Z`` for ``1 <= j <= cap`` (default ``p^2 - 1``).

    Stops early once the image set returns to ``Z``: the map is a bijection,
    so every later image repeats one already seen.
    """
    _check_coprime(mstar, p)
    start = frozenset(Z)
    if any(z.is_zero() for z in start):
        raise ValueError("orbit seeds must be nonzero residues")
    cap = p * p - 1 if cap is None else cap
    seen: set[ResidueVector] = set()
    current = start
    for _ in range(cap):
        current = frozenset(_step(mstar, p, z) for z in current)
        seen |= current
        if current == start:
            break
    return frozenset(seen)


def p_tilde(p: int) -> int:
    """Class-1 cardinality bound: ``p^2/2`` (p even), ``(p^2-1)/2`` (odd p > 3), 3 (p = 3)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if p % 2 == 0:
        return p * p // 2
    if p == 3:
        return 3
    return (p * p - 1) // 2


def is_expanding(M: IntMatrix2) -> bool:
    """Both eigenvalues strictly outside the unit circle.

    Equivalent to the reversed characteristic polynomial ``det z^2 - tr z + 1``
    having both roots strictly inside; for a real quadratic ``a2 z^2 + a1 z + a0``
    with ``a2 > 0`` that is ``|a0| < a2`` and ``a2 +- a1 + a0 > 0``.
    """
    det, tr = M.det, M.trace
    a2, a1, a0 = det, -tr, 1
    if a2 < 0:
        a2, a1, a0 = -a2, -a1, -a0
    return abs(a0) < a2 and a2 + a1 + a0 > 0 and a2 - a1 + a0 > 0


def gl2_enumerate(p: int) -> list[FpMatrix2]:
    """All invertible 2x2 matrices over F_p, lexicographic in ``(a, b, d, c)``."""
    require_prime(p)
    out = []
    for a in range(p):
        for b in range(p):
            for d in range(p):
                for c in range(p):
                    if (a * c - b * d) % p:
                        out.append(FpMatrix2(a, b, d, c, p))
    return out


def lift_expanding(A: AnyMatrix, p: int) -> IntMatrix2:
    """An expanding integer M with ``M* = A (mod p)`` and ``gcd(det M, p) = 1``.

    Lifts the entries to ``0..p-1`` and scales by the least ``N = 1 (mod p)``
    that makes the result expanding; ``N = 1 (mod p)`` leaves every orbit
    on the p-grid untouched.
    """
    base = IntMatrix2(A.a % p, A.b % p, A.d % p, A.c % p)
    if math.gcd(base.det, p) != 1:
        raise SingularMatrixError("matrix is not invertible mod p")
    n = 1
    while not is_expanding(base.scale(n)):
        n += p
    return base.scale(n).transpose()


def residue_zeros(D: DigitSet, p: int) -> tuple[ResidueVector, ...]:
    """Verified zero set of ``m_D`` as residues, raising unless the hypothesis holds."""
    check = check_hypothesis(D, p)
    if check.verdict is not HypothesisVerdict.HOLDS:
        if check.verdict is HypothesisVerdict.UNKNOWN:
            raise HypothesisError(
                "cannot verify that the zero set lies in the punctured grid for this digit set"
            )
        raise HypothesisError(f"zero-set hypothesis {check.verdict.value}")
    return tuple(ResidueVector.from_point(pt, p) for pt in check.zeros.points)


def nstar_verdict(klass: MatrixClass, p: int) -> NStarVerdict:
    if klass is MatrixClass.CLASS2:
        return NStarVerdict("exact", p * p, "class2-full-orbit")
    if p in (2, 3):
        return NStarVerdict("exact", p, "class1-small-p")
    return NStarVerdict("upper-bound", p_tilde(p), "class1-cardinality-bound")


def classify_residue(
    mstar: AnyMatrix, zeros: Iterable[ResidueVector], p: int
) -> tuple[MatrixClass, frozenset[ResidueVector]]:
    """Class of the acting matrix given the zero residues; no expandingness check."""
    orbit = orbit_union(mstar, zeros, p)
    klass = MatrixClass.CLASS2 if orbit == punctured_grid(p) else MatrixClass.CLASS1
    return klass, orbit


def classify(M: IntMatrix2, D: DigitSet, p: int) -> Classification:
    """Place M in class 1 or class 2 for (D, p) and report the n* verdict."""
    if p < 2:
        raise ValueError("p must be >= 2")
    mstar = M.transpose()
    _check_coprime(mstar, p)
    if not is_expanding(M):
        raise NotExpandingError("matrix is not expanding")
    zeros = residue_zeros(D, p)
    klass, orbit = classify_residue(mstar, zeros, p)
    return Classification(klass, orbit, p_tilde(p), nstar_verdict(klass, p), p, M, zeros)
