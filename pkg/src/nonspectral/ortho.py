"""Membership in the zero set of the Fourier transform, and orthogonal frequency sets.

A frequency ``lam`` lies in the zero set of ``mu_hat`` iff ``m_D`` vanishes at
``(M*)^(-j) lam`` for some ``j >= 1``.  The search is made finite by a
safe-radius certificate: once an iterate is small enough that every later
iterate stays in a ball where ``m_D`` has no zero, no witness can follow.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .classify import (
    MatrixClass,
    ResidueVector,
    classify,
    is_expanding,
)
from .clique import max_clique
from .errors import ConstructionError, NotExpandingError
from .exact import IntMatrix2, RationalPoint, RatMatrix2, mat_inverse, prime_factors
from .finite_field import euler_phi
from .mask import DigitSet, _mask_zero_scaled, ep_grid, safe_radius, zeros_in_Ep

K0_LIMIT = 10_000


@dataclass(frozen=True)
class MembershipTrace:
    member: bool
    witness_j: int | None
    iterations: int
    termination: str  # "witness-found" | "safe-radius"
    final_norm_sq: Fraction
    threshold_sq: Fraction | float
    iteration_bound: int


@dataclass(frozen=True)
class OrthoSet:
    frequencies: tuple[RationalPoint, ...]
    certified: bool
    failures: tuple[tuple[RationalPoint, RationalPoint], ...] = ()

    def __len__(self):
        return len(self.frequencies)


@dataclass(frozen=True)
class OracleCertificate:
    """Constants behind the termination argument for one ``(M, D)``.

    ``k0`` is the least power with ``||(M*)^-k0||_F < 1``, ``contraction_sq``
    that Frobenius norm squared, ``window_sq`` the largest squared Frobenius
    norm of ``(M*)^-r`` over ``0 <= r < k0``, and ``threshold_sq`` equals
    ``r0^2 / window_sq``.
    """

    k0: int
    contraction_sq: Fraction
    window_sq: Fraction
    safe_radius: Fraction | float
    threshold_sq: Fraction | float


class _Oracle:
    def __init__(self, M: IntMatrix2, D: DigitSet):
        if not is_expanding(M):
            raise NotExpandingError("no termination guarantee: matrix is not expanding")
        self.M = M
        self.D = D
        mstar = M.transpose()
        self.adj = mstar.adjugate()
        self.det = mstar.det
        self.det_primes = frozenset(prime_factors(self.det))
        self.cert = self._certificate(mstar, D)

    @staticmethod
    def _certificate(mstar: IntMatrix2, D: DigitSet) -> OracleCertificate:
        inv = mat_inverse(mstar)
        power = RatMatrix2.identity()
        window = [power.frobenius_sq()]
        for k in range(1, K0_LIMIT + 1):
            power = power @ inv
            f = power.frobenius_sq()
            if f < 1:
                break
            window.append(f)
        else:
            raise NotExpandingError("inverse powers fail to contract")
        r0 = safe_radius(D)
        c_sq = max(window)
        thr = math.inf if r0 == math.inf else r0 * r0 / c_sq
        return OracleCertificate(k, f, c_sq, r0, thr)

    def iteration_bound(self, lam: RationalPoint) -> int:
        cert = self.cert
        if cert.threshold_sq == math.inf:
            return 1
        n_sq = lam.norm_sq()
        m = 1
        decay = cert.contraction_sq
        while decay * n_sq >= cert.threshold_sq:
            decay *= cert.contraction_sq
            m += 1
        return m * cert.k0

    def member(self, lam: RationalPoint) -> MembershipTrace:
        den = lam.denominator
        X, Y = int(lam.x * den), int(lam.y * den)
        primes = tuple(sorted(self.det_primes | set(prime_factors(den) if den > 1 else ())))
        adj, det = self.adj, self.det
        thr = self.cert.threshold_sq
        bound = self.iteration_bound(lam)
        digits = self.D.digits
        j = 0
        while True:
            j += 1
            # (X, Y) / den  <-  adj(M*) (X, Y) / (den * det)  ==  (M*)^-1 (X, Y) / den
            X, Y = adj.a * X + adj.b * Y, adj.d * X + adj.c * Y
            den *= det
            if den < 0:
                X, Y, den = -X, -Y, -den
            norm_sq = Fraction(X * X + Y * Y, den * den)
            if _mask_zero_scaled(digits, X, Y, den, primes):
                return MembershipTrace(True, j, j, "witness-found", norm_sq, thr, bound)
            if norm_sq < thr:
                return MembershipTrace(False, None, j, "safe-radius", norm_sq, thr, bound)
            if j > bound:
                raise AssertionError("membership search exceeded its certified iteration bound")


@lru_cache(maxsize=256)
def _oracle(M: IntMatrix2, D: DigitSet) -> _Oracle:
    return _Oracle(M, D)


def oracle_certificate(M: IntMatrix2, D: DigitSet) -> OracleCertificate:
    return _oracle(M, D).cert


def iteration_bound(M: IntMatrix2, D: DigitSet, lam: RationalPoint) -> int:
    """Upper bound on the iterations :func:`zero_set_member` can take for ``lam``."""
    return _oracle(M, D).iteration_bound(lam)


def zero_set_member(M: IntMatrix2, D: DigitSet, lam: RationalPoint) -> MembershipTrace:
    """Decide exactly whether ``mu_hat_{M,D}(lam) == 0``."""
    return _oracle(M, D).member(lam)


def is_orthogonal_set(M: IntMatrix2, D: DigitSet, freqs: Sequence[RationalPoint]) -> OrthoSet:
    """Certify that every nonzero difference of ``freqs`` lies in the zero set.

    Both ``a - b`` and ``b - a`` are checked with the oracle; no symmetry of
    the zero set is assumed.
    """
    pts = tuple(freqs)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate frequencies")
    failures = []
    for a, b in itertools.permutations(pts, 2):
        if not zero_set_member(M, D, a - b).member:
            failures.append((a, b))
    return OrthoSet(pts, not failures, tuple(failures))


def lambda_scale(M: IntMatrix2, p: int) -> int:
    """``det(M) ** (phi(p) * (p^2 - 1))``, which is 1 mod p."""
    return M.det ** (euler_phi(p) * (p * p - 1))


def construct_lambda(M: IntMatrix2, D: DigitSet, p: int) -> OrthoSet:
    """The p^2 frequencies ``det(M)^(phi(p)(p^2-1)) * (i/p, j/p)``, certified.

    Valid for class-2 matrices, where the result is a maximum orthogonal set.
    """
    cls = classify(M, D, p)
    if cls.klass is not MatrixClass.CLASS2:
        raise ConstructionError("construction requires class 2")
    scale = lambda_scale(M, p)
    return is_orthogonal_set(M, D, [pt * scale for pt in ep_grid(p)])


def small_lambda_points(M: IntMatrix2, D: DigitSet, p: int) -> list[RationalPoint]:
    if p not in (2, 3):
        raise ValueError("the small construction needs p in {2, 3}")
    zeros = zeros_in_Ep(D, p).points
    if not zeros:
        raise ConstructionError("zero set on the p-grid is empty")
    # no canonical choice of zero; take the lexicographically smallest
    s1 = M.transpose().apply(min(zeros))
    return [RationalPoint.zero(), s1] if p == 2 else [RationalPoint.zero(), s1, -s1]


def construct_small_lambda(M: IntMatrix2, D: DigitSet, p: int) -> OrthoSet:
    """``{0, M* lam}`` (p = 2) or ``{0, M* lam, -M* lam}`` (p = 3) for a grid zero ``lam``."""
    return is_orthogonal_set(M, D, small_lambda_points(M, D, p))


@dataclass(frozen=True)
class DiffsetReport:
    p: int
    m: int
    all_pass: bool
    subsets_checked: int
    counterexample: tuple[ResidueVector, ...] | None


def diffset_cover_check(p: int, m: int, *, chunk: int = 250_000) -> DiffsetReport:
    """Check every m-subset A of the p-grid for ``A - A == whole grid (mod 1)``.

    Subsets are bitmask-encoded and processed in numpy batches; the first
    failing subset in lexicographic order is returned as the counterexample.
    """
    n = p * p
    if not 2 <= m <= n:
        raise ValueError("need 2 <= m <= p^2")
    if n > 64:
        raise ValueError("p^2 > 64 is beyond the bitmask encoding")
    u = np.arange(n) // p
    v = np.arange(n) % p
    diff = ((u[:, None] - u[None, :]) % p) * p + (v[:, None] - v[None, :]) % p
    bit = np.left_shift(np.uint64(1), diff.astype(np.uint64))
    both = bit | bit.T  # A - A is symmetric under negation
    full = np.uint64((1 << n) - 1) if n < 64 else np.uint64(2**64 - 1)
    combos = itertools.combinations(range(n), m)
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    checked = 0
    while True:
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, chunk)), dtype=np.int16
        )
        if flat.size == 0:
            break
        arr = flat.reshape(-1, m)
        cover = np.full(len(arr), np.uint64(1))  # the zero difference
        for a, b in pairs:
            cover |= both[arr[:, a], arr[:, b]]
        bad = np.flatnonzero(cover != full)
        if bad.size:
            row = arr[bad[0]]
            ce = tuple(ResidueVector(int(i) // p, int(i) % p, p) for i in row)
            return DiffsetReport(p, m, False, checked + int(bad[0]) + 1, ce)
        checked += len(arr)
    return DiffsetReport(p, m, True, checked, None)


@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: OrthoSet
    candidates: int


def max_clique_orthogonal(
    M: IntMatrix2, D: DigitSet, candidates: Iterable[RationalPoint], *, cap: int = 64
) -> CliqueResult:
    """Largest mutually orthogonal subset of ``candidates`` (exact, by branch and bound).

    This probes n* from below only: the answer is maximal among the
    candidates, not over all frequencies.
    """
    pts = list(candidates)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate candidates")
    if len(pts) > cap:
        raise ValueError(f"{len(pts)} candidates exceed the cap of {cap}; reduce the candidate set")
    pts.sort()
    adj: list[set[int]] = [set() for _ in pts]
    for i, j in itertools.combinations(range(len(pts)), 2):
        d = pts[i] - pts[j]
        if zero_set_member(M, D, d).member and zero_set_member(M, D, -d).member:
            adj[i].add(j)
            adj[j].add(i)
    chosen = max_clique(adj) if pts else []
    witness = is_orthogonal_set(M, D, [pts[i] for i in chosen])
    return CliqueResult(len(chosen), witness, len(pts))


def lifted_grid_candidates(M: IntMatrix2, p: int) -> list[RationalPoint]:
    """``{0}`` together with ``M* v`` for every nonzero grid point ``v``."""
    mstar = M.transpose()
    return [RationalPoint.zero()] + [mstar.apply(v) for v in ep_grid(p, punctured=True)]


def default_candidates(M: IntMatrix2, D: DigitSet, p: int) -> list[RationalPoint]:
    """The scaled-grid construction plus, for p in {2, 3}, the small construction."""
    scale = lambda_scale(M, p)
    pts = {pt * scale for pt in ep_grid(p)}
    if p in (2, 3) and zeros_in_Ep(D, p).points:
        pts.update(small_lambda_points(M, D, p))
    return sorted(pts)


def orthogonal_count_bound(Z_prime_size: int) -> int:
    """At most ``#Z' + 1`` mutually orthogonal exponentials for an invariant finite Z'."""
    return Z_prime_size + 1
