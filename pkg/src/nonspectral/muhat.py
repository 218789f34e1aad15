"""Floating-point evaluation of the truncated infinite product for ``mu_hat``.

Only used for plotting and numeric cross-checks; every decision elsewhere is
exact.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .errors import NotExpandingError
from .exact import IntMatrix2
from .mask import DigitSet, PI_UPPER, digit_norm_sum_upper
from .ortho import oracle_certificate
from .classify import is_expanding

GRID_CAP = 10**6


def mask_values(D: DigitSet, pts: np.ndarray) -> np.ndarray:
    digits = np.asarray(D.digits, dtype=float)  # (k, 2)
    phase = pts @ digits.T  # (n, k)
    return np.exp(2j * np.pi * phase).mean(axis=1)


def muhat(M: IntMatrix2, D: DigitSet, pts: np.ndarray, J: int) -> np.ndarray:
    """``prod_{j=1..J} m_D((M*)^-j xi)`` at each row of ``pts`` (shape ``(n, 2)``)."""
    if not is_expanding(M):
        raise NotExpandingError("matrix is not expanding")
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    inv_t = np.linalg.inv(np.array(M.transpose().rows, dtype=float)).T
    out = np.ones(len(pts), dtype=complex)
    xi = pts
    for _ in range(J):
        xi = xi @ inv_t  # row-vector form of (M*)^-1 xi
        out *= mask_values(D, xi)
    return out


@dataclass(frozen=True)
class Truncation:
    J: int
    per_factor_bound: float


def auto_truncation(M: IntMatrix2, D: DigitSet, max_norm: float, tol: float = 1e-13) -> Truncation:
    """Smallest J such that every omitted factor differs from 1 by less than ``tol``.

    Uses ``||(M*)^-j|| <= C * rho^floor(j / k0)`` from the oracle certificate and
    ``|m_D(x) - 1| <= (2 pi / #D) sum ||d|| ||x||``.
    """
    cert = oracle_certificate(M, D)
    lip = 2 * float(PI_UPPER) / len(D) * float(digit_norm_sum_upper(D))
    if lip == 0 or max_norm == 0:
        return Truncation(1, 0.0)
    c = math.sqrt(float(cert.window_sq))
    rho = math.sqrt(float(cert.contraction_sq))
    J = 1
    while True:
        # bound for the first omitted factor j = J + 1; later ones are smaller
        bound = lip * c * rho ** ((J + 1) // cert.k0) * max_norm
        if bound < tol:
            return Truncation(J, bound)
        J += 1


@dataclass(frozen=True)
class GridSpec:
    x0: float
    x1: float
    nx: int
    y0: float
    y1: float
    ny: int

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """``"x0:x1:nx,y0:y1:ny"``."""
        try:
            xs, ys = text.split(",")
            x0, x1, nx = xs.split(":")
            y0, y1, ny = ys.split(":")
            spec = cls(float(x0), float(x1), int(nx), float(y0), float(y1), int(ny))
        except ValueError as exc:
            raise ValueError(f"bad grid spec {text!r}; expected x0:x1:nx,y0:y1:ny") from exc
        if spec.nx < 1 or spec.ny < 1:
            raise ValueError("grid needs at least one point per axis")
        if spec.nx * spec.ny > GRID_CAP:
            raise ValueError(f"grid of {spec.nx * spec.ny} points exceeds the cap of {GRID_CAP}")
        return spec

    def points(self) -> np.ndarray:
        gx = np.linspace(self.x0, self.x1, self.nx)
        gy = np.linspace(self.y0, self.y1, self.ny)
        X, Y = np.meshgrid(gx, gy, indexing="ij")
        return np.column_stack([X.ravel(), Y.ravel()])


def write_csv(fh: TextIO, pts: np.ndarray, values: np.ndarray) -> None:
    w = csv.writer(fh)
    w.writerow(["xi1", "xi2", "re", "im", "abs"])
    for (x, y), z in zip(pts, values):
        z = complex(z)
        w.writerow([repr(float(x)), repr(float(y)), repr(z.real), repr(z.imag), repr(abs(z))])
