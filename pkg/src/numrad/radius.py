"""Numerical radius w(A) = max |<Ax, x>| over unit vectors x.

``w(A)`` is the maximum over angles of the top eigenvalue of the rotated
Hermitian part ``H(theta) = (e^{i theta} A + e^{-i theta} A*) / 2``.  Since
``H(theta + pi) = -H(theta)``, scanning ``[0, pi)`` with
``max(lambda_max, -lambda_min)`` covers the full circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotNonnegative
from .fg import FgPair
from .linalg import _backend, _require_square, as_matrix, as_vector, herm_eig

__all__ = [
    "RadiusResult",
    "brute_force_radius",
    "check_mixed_schwarz",
    "numerical_radius",
    "numerical_radius_nonneg",
    "rotated_hermitian_part",
]

GRID_POINTS = 720
THETA_TOL = 1e-9
N_STARTS = 3
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RadiusResult:
    value: float
    argmax_theta: float  # lambda_max(H(argmax_theta)) == value
    grid_points: int
    refined_tol: float

    def __float__(self) -> float:
        return self.value


def rotated_hermitian_part(A, theta: float) -> np.ndarray:
    A = as_matrix(A)
    _require_square(A)
    e = complex(math.cos(theta), math.sin(theta))
    return (e * A + e.conjugate() * A.conj().T) / 2


def _stacked_extremes(A: np.ndarray, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """lambda_min and lambda_max of H(theta) for every theta."""
    e = np.exp(1j * thetas)[:, None, None]
    H = (e * A + e.conj() * A.conj().T) / 2
    if _backend.get() == "jacobi":
        ev = np.array([herm_eig(h).eigenvalues for h in H])
    else:
        ev = np.linalg.eigvalsh(H)
    return ev[:, 0], ev[:, -1]


def _fold(lo: float, hi: float, theta: float) -> tuple[float, float]:
    if -lo > hi:
        return -lo, (theta + math.pi) % (2 * math.pi)
    return hi, theta % (2 * math.pi)


def _golden_max(fn, a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section search for a maximum of ``fn`` on [a, b]."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


def _best_separated(values: np.ndarray, k: int) -> list[int]:
    """Indices of the k largest values, no two adjacent on the periodic grid."""
    m = len(values)
    chosen: list[int] = []
    for idx in np.argsort(-values, kind="stable"):
        idx = int(idx)
        if all(min(abs(idx - c), m - abs(idx - c)) > 1 for c in chosen):
            chosen.append(idx)
            if len(chosen) == k:
                break
    return chosen


def numerical_radius(
    A,
    tol: float = 1e-8,
    grid_points: int = GRID_POINTS,
    theta_tol: float = THETA_TOL,
    n_starts: int = N_STARTS,
) -> RadiusResult:
    """Numerical radius by a coarse angle grid plus golden-section polishing.

    The grid covers ``[0, pi)``; the best ``n_starts`` non-adjacent grid
    points are each refined within one grid step on either side until the
    angle bracket is below ``theta_tol``.
    """
    A = as_matrix(A)
    _require_square(A)
    if A.shape[0] == 1:
        a = complex(A[0, 0])
        theta = (-math.atan2(a.imag, a.real)) % (2 * math.pi)
        return RadiusResult(abs(a), theta, 1, tol)

    step = math.pi / grid_points
    thetas = np.arange(grid_points) * step
    lo, hi = _stacked_extremes(A, thetas)
    g = np.maximum(hi, -lo)

    def fold_at(theta: float) -> float:
        ev = _stacked_extremes(A, np.array([theta]))
        return max(float(ev[1][0]), -float(ev[0][0]))

    best_idx = int(np.argmax(g))
    best_val, best_theta = _fold(float(lo[best_idx]), float(hi[best_idx]), float(thetas[best_idx]))
    for idx in _best_separated(g, n_starts):
        center = float(thetas[idx])
        theta, val = _golden_max(fold_at, center - step, center + step, theta_tol)
        if val > best_val:
            l2, h2 = _stacked_extremes(A, np.array([theta]))
            best_val, best_theta = _fold(float(l2[0]), float(h2[0]), theta)
    return RadiusResult(float(best_val), float(best_theta), grid_points, tol)


def brute_force_radius(A, n_angles: int = 100_000, chunk: int = 10_000) -> float:
    """Dense-grid numerical radius, no refinement.  Used as a test oracle."""
    A = as_matrix(A)
    _require_square(A)
    thetas = np.arange(n_angles) * (math.pi / n_angles)
    best = 0.0
    for start in range(0, n_angles, chunk):
        th = thetas[start : start + chunk]
        e = np.exp(1j * th)[:, None, None]
        ev = np.linalg.eigvalsh((e * A + e.conj() * A.conj().T) / 2)
        best = max(best, float(np.max(ev[:, -1])), float(-np.min(ev[:, 0])))
    return best


def numerical_radius_nonneg(A, tol: float = 1e-12) -> float:
    """w(A) = lambda_max((A + A^T) / 2) for an entrywise nonnegative real matrix."""
    A = as_matrix(A)
    _require_square(A)
    if np.any(np.abs(A.imag) > tol) or np.any(A.real < -tol):
        raise NotNonnegative("matrix must be real with nonnegative entries")
    R = np.maximum(A.real, 0.0)
    return float(herm_eig((R + R.T) / 2).eigenvalues[-1])


def check_mixed_schwarz(A, x, y, fg: FgPair) -> tuple[float, float, bool]:
    """Evaluate |<Ax, y>| <= ||f(|A|) x|| ||g(|A*|) y||.

    Returns ``(lhs, rhs, holds)``; ``holds`` allows a ``1e-9 (1 + rhs)`` slack.
    """
    A = as_matrix(A)
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape[0] != A.shape[1] or y.shape[0] != A.shape[0]:
        raise DimensionMismatch(
            f"A is {A.shape}, x has length {x.shape[0]}, y has length {y.shape[0]}"
        )
    lhs = abs(np.vdot(y, A @ x))
    rhs = float(np.linalg.norm(fg.f_abs(A) @ x) * np.linalg.norm(fg.g_abs(A.conj().T) @ y))
    return float(lhs), rhs, bool(lhs <= rhs + 1e-9 * (1.0 + rhs))
