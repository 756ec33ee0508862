"""Dense complex matrix kernels.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; ``as_matrix``
is the validation gate every public entry point goes through.  The
Hermitian eigensolver is the one spectral kernel: operator norms, moduli
``|A| = (A*A)^{1/2}`` and the PSD functional calculus all go through it.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeEigenvalue,
    NoConvergence,
    NotHermitian,
    NumradError,
    PhiDomainError,
)

__all__ = [
    "HermEigDecomposition",
    "abs_op",
    "add",
    "adjoint",
    "as_matrix",
    "as_vector",
    "eig_backend",
    "embed_block",
    "herm_eig",
    "hermitian_part",
    "identity",
    "jacobi_eigh",
    "lambda_max",
    "modulus_eig",
    "mul",
    "op_norm",
    "psd_apply",
    "scale",
    "spectral_radius",
    "sub",
]

HERMITIAN_TOL = 1e-9
EIG_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 30
PSD_CLIP = 1e-12

_backend: contextvars.ContextVar[str] = contextvars.ContextVar("eig_backend", default="lapack")


@contextlib.contextmanager
def eig_backend(name: str) -> Iterator[None]:
    """Select the Hermitian eigensolver (``"lapack"`` or ``"jacobi"``) for a block of code."""
    if name not in ("lapack", "jacobi"):
        raise ValueError(f"unknown eigensolver backend {name!r}")
    token = _backend.set(name)
    try:
        yield
    finally:
        _backend.reset(token)


def as_matrix(A, name: str = "matrix") -> np.ndarray:
    """Validate ``A`` as a finite 2-D complex matrix and return it as complex128."""
    M = np.asarray(A)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D array, got shape {M.shape}")
    M = M.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(M)):
        raise NumradError(f"{name} contains NaN or infinite entries")
    return M


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim == 2 and 1 in v.shape:
        v = v.ravel()
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"{name} must be a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NumradError(f"{name} contains NaN or infinite entries")
    return v


def _require_square(A: np.ndarray, name: str = "matrix") -> None:
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")


# -- arithmetic ---------------------------------------------------------------


def adjoint(A) -> np.ndarray:
    return as_matrix(A).conj().T


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def add(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot add {A.shape} and {B.shape}")
    return A + B


def sub(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot subtract {B.shape} from {A.shape}")
    return A - B


def scale(c: complex, A) -> np.ndarray:
    return complex(c) * as_matrix(A)


def mul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def hermitian_part(A) -> np.ndarray:
    """(A + A*) / 2."""
    A = as_matrix(A)
    return (A + A.conj().T) / 2


def embed_block(M) -> np.ndarray:
    """Assemble a :class:`numrad.blocks.BlockMatrix` into one dense matrix."""
    return M.embed()


# -- Hermitian eigensolver ----------------------------------------------------


@dataclass(frozen=True)
class HermEigDecomposition:
    eigenvalues: np.ndarray  # real, ascending
    vectors: np.ndarray  # unitary, columns are eigenvectors

    def reconstruct(self) -> np.ndarray:
        V = self.vectors
        return (V * self.eigenvalues) @ V.conj().T


def _check_hermitian(H: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    _require_square(H, "Hermitian matrix")
    asym = np.linalg.norm(H - H.conj().T)
    if asym > tol * (1.0 + np.linalg.norm(H)):
        raise NotHermitian(f"matrix is not Hermitian: ||H - H*||_F = {asym:.3e}")


def jacobi_eigh(
    H: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each rotation first removes the phase of ``H[p, q]`` and then applies a
    real plane rotation.  Sweeps stop once the off-diagonal Frobenius norm
    is at most ``tol * ||H||_F``.

    Returns ``(eigenvalues, vectors)`` sorted ascending.
    """
    A = np.array(H, dtype=np.complex128)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale_ = np.linalg.norm(A)
    if n == 1 or scale_ == 0.0:
        return np.real(np.diag(A)).copy(), V
    target = tol * scale_
    G = np.empty((2, 2), dtype=np.complex128)
    for _ in range(max_sweeps + 1):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            lam = np.real(np.diag(A))
            order = np.argsort(lam, kind="stable")
            return lam[order], V[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                app, aqq = A[p, p].real, A[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                G[0, 0] = c
                G[0, 1] = s
                G[1, 0] = -s * phase.conjugate()
                G[1, 1] = c * phase.conjugate()
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                V[:, idx] = V[:, idx] @ G
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (off = {off:.3e})")


def herm_eig(H, tol: float = EIG_TOL, method: str | None = None) -> HermEigDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method`` is ``"lapack"`` or ``"jacobi"``; ``None`` uses the backend
    selected with :func:`eig_backend` (LAPACK unless overridden).
    """
    H = as_matrix(H)
    _check_hermitian(H)
    H = (H + H.conj().T) / 2
    method = method or _backend.get()
    if method == "jacobi":
        lam, V = jacobi_eigh(H, tol=min(JACOBI_TOL, tol))
    elif method == "lapack":
        try:
            lam, V = np.linalg.eigh(H)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
    else:
        raise ValueError(f"unknown eigensolver backend {method!r}")
    return HermEigDecomposition(np.asarray(lam, dtype=float), V)


def _herm_eigvals(H: np.ndarray) -> np.ndarray:
    if _backend.get() == "jacobi":
        return herm_eig(H).eigenvalues
    H = (H + H.conj().T) / 2
    return np.linalg.eigvalsh(H)


def lambda_max(H) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    H = as_matrix(H)
    _check_hermitian(H)
    return float(_herm_eigvals(H)[-1])


def op_norm(A) -> float:
    """Operator (spectral) norm, sqrt of the top eigenvalue of A*A."""
    A = as_matrix(A)
    G = A.conj().T @ A if A.shape[0] >= A.shape[1] else A @ A.conj().T
    return math.sqrt(max(float(_herm_eigvals(G)[-1]), 0.0))


# -- functional calculus ------------------------------------------------------


def _apply_scalar(phi: Callable[[float], float], lam: np.ndarray) -> np.ndarray:
    out = np.empty(lam.shape, dtype=float)
    for k, x in enumerate(lam):
        try:
            val = phi(float(x))
        except (ArithmeticError, ValueError) as exc:
            raise PhiDomainError(f"phi failed at eigenvalue {x!r}: {exc}") from exc
        if isinstance(val, complex):
            if val.imag != 0:
                raise PhiDomainError(f"phi returned a complex value at eigenvalue {x!r}")
            val = val.real
        if not math.isfinite(val):
            raise PhiDomainError(f"phi returned {val!r} at eigenvalue {x!r}")
        out[k] = val
    return out


def clipped_spectrum(P, clip: float = PSD_CLIP) -> HermEigDecomposition:
    """Eigendecomposition of a PSD matrix with roundoff negatives set to zero."""
    dec = herm_eig(P)
    lam = dec.eigenvalues
    lam_max = max(float(lam[-1]), 0.0)
    floor = -clip * (1.0 + lam_max)
    if lam[0] < floor:
        raise NegativeEigenvalue(
            f"eigenvalue {lam[0]:.3e} is below the PSD clipping floor {floor:.3e}"
        )
    return HermEigDecomposition(np.maximum(lam, 0.0), dec.vectors)


def psd_apply(P, phi: Callable[[float], float], clip: float = PSD_CLIP) -> np.ndarray:
    """phi(P) = V diag(phi(lambda)) V* for a PSD matrix P.

    Eigenvalues in ``[-clip * (1 + lambda_max), 0)`` are treated as zero.
    """
    dec = clipped_spectrum(P, clip)
    vals = _apply_scalar(phi, dec.eigenvalues)
    V = dec.vectors
    out = (V * vals) @ V.conj().T
    return (out + out.conj().T) / 2


def modulus_eig(A) -> HermEigDecomposition:
    """Eigendecomposition of |A| = (A*A)^{1/2}: singular values and right singular vectors.

    With the LAPACK backend the spectrum comes from an SVD, which keeps
    small singular values accurate to ``eps * ||A||``; squaring through
    ``A*A`` would only resolve them to ``sqrt(eps) * ||A||``.
    """
    A = as_matrix(A)
    n = A.shape[1]
    if _backend.get() == "jacobi":
        dec = clipped_spectrum(A.conj().T @ A)
        return HermEigDecomposition(np.sqrt(dec.eigenvalues), dec.vectors)
    try:
        _, s, Vh = np.linalg.svd(A, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    sigma = np.zeros(n)
    sigma[: s.size] = s
    return HermEigDecomposition(sigma[::-1].copy(), Vh.conj().T[:, ::-1].copy())


def abs_op(A) -> np.ndarray:
    """The modulus |A| = (A*A)^{1/2}; cols x cols for an m x n input."""
    dec = modulus_eig(A)
    out = dec.reconstruct()
    return (out + out.conj().T) / 2


# -- spectral radius ----------------------------------------------------------


def spectral_radius(A, tol: float = 1e-10, max_squarings: int = 40) -> float:
    """Spectral radius by Gelfand's formula under repeated squaring.

    The iterate is renormalized after every squaring and the logarithm of
    the discarded scale is carried separately, so ``A^(2^k)`` never
    overflows or underflows.
    """
    A = as_matrix(A)
    _require_square(A)
    s = max(1.0, float(np.linalg.norm(A)))
    B = A / s
    nrm = float(np.linalg.norm(B))
    if nrm == 0.0:
        return 0.0
    log_norm = math.log(nrm)  # log ||(A/s)^(2^k)||_F
    B = B / nrm
    rho = s * math.exp(log_norm)
    for k in range(1, max_squarings + 1):
        B = B @ B
        nrm = float(np.linalg.norm(B))
        if nrm == 0.0:
            return 0.0
        log_norm = 2.0 * log_norm + math.log(nrm)
        B = B / nrm
        new_rho = s * math.exp(log_norm / 2.0**k)
        if abs(new_rho - rho) <= tol * (1.0 + rho):
            return new_rho
        rho = new_rho
    raise NoConvergence(
        f"spectral radius estimate did not stabilize after {max_squarings} squarings"
    )
