"""Upper and lower bounds for numerical radii of operator matrices.

Three compressions map an operator matrix ``[A_ij]`` to a small
nonnegative scalar matrix whose numerical radius dominates ``w([A_ij])``:

* ``hou_du_compression``: ``[||A_ij||]``;
* ``aok_compression``: the same with ``w(A_ii)`` on the diagonal;
* ``fg_hat_compression``: upper triangular, ``w(A_ii)`` on the diagonal and
  ``a_ij = ||f^2(|A_ij|) + g^2(|A_ji*|)||^{1/2} ||f^2(|A_ji|) + g^2(|A_ij*|)||^{1/2}``
  above it.

For the power pair at ``t = 1/2`` these are ordered
``w(A) <= w(fg_hat) <= w(aok) <= w(hou_du)``.  The scalar bounds below
(products, commutators, spectral radius of sums of products) are
specialisations of the same compression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import matrixio
from .blocks import BlockMatrix
from .errors import (
    DimensionMismatch,
    EmptyList,
    NegativeEigenvalue,
    NotHermitian,
    NotNonnegative,
    NotPSD,
    NotUnitary,
    NotUpperTriangular,
)
from .fg import FgPair, power_pair
from .linalg import (
    _check_hermitian,
    _require_square,
    as_matrix,
    clipped_spectrum,
    lambda_max,
    op_norm,
    abs_op,
)
from .radius import numerical_radius, numerical_radius_nonneg

__all__ = [
    "BoundReport",
    "Verdict",
    "aok_compression",
    "bound_2x2",
    "bound_chain",
    "commutator_bound",
    "compression_radius",
    "fg_hat_compression",
    "hou_du_compression",
    "kittaneh_commutator_bound",
    "legacy_spectral_sum_bound",
    "mixed_norm",
    "offdiag_bound",
    "paul_2x2_bound",
    "positive_equality",
    "product_bound",
    "product_sum_bound",
    "selfadjoint_sandwich",
    "spectral_sum_bound",
    "symmetrize_half",
    "unitary_commutator_bound",
    "unitary_commutator_bound_min",
]

HALF = power_pair(0.5)


def _psd_norm(P: np.ndarray) -> float:
    # symmetrize before the norm: roundoff breaks exact Hermitian symmetry
    return max(lambda_max((P + P.conj().T) / 2), 0.0)


def mixed_norm(X, Y, fg: FgPair = HALF) -> float:
    """||f^2(|X|) + g^2(|Y*|)||; needs cols(X) == rows(Y)."""
    X, Y = as_matrix(X), as_matrix(Y)
    if X.shape[1] != Y.shape[0]:
        raise DimensionMismatch(f"|X| is {X.shape[1]}-dimensional but |Y*| is {Y.shape[0]}-dimensional")
    return _psd_norm(fg.f2_abs(X) + fg.g2_abs(Y.conj().T))


def _pair_entry(X, Y, fg: FgPair) -> float:
    """sqrt(mixed_norm(X, Y)) * sqrt(mixed_norm(Y, X))."""
    return math.sqrt(mixed_norm(X, Y, fg)) * math.sqrt(mixed_norm(Y, X, fg))


def _pair_for(t: float) -> FgPair:
    return HALF if t == 0.5 else power_pair(t)


# -- compressions -------------------------------------------------------------


def hou_du_compression(M: BlockMatrix) -> np.ndarray:
    n = M.n
    return np.array([[op_norm(M[i, j]) for j in range(n)] for i in range(n)])


def aok_compression(M: BlockMatrix) -> np.ndarray:
    T = hou_du_compression(M)
    for i in range(M.n):
        T[i, i] = numerical_radius(M[i, i]).value
    return T


def fg_hat_compression(M: BlockMatrix, fg: FgPair = HALF) -> np.ndarray:
    n = M.n
    T = np.zeros((n, n))
    for i in range(n):
        T[i, i] = numerical_radius(M[i, i]).value
        for j in range(i + 1, n):
            T[i, j] = _pair_entry(M[i, j], M[j, i], fg)
    return T


def symmetrize_half(T) -> np.ndarray:
    """(T + T^T) / 2 for a nonnegative upper-triangular real matrix."""
    T = as_matrix(T)
    _require_square(T)
    if np.any(np.abs(T.imag) > 1e-12) or np.any(T.real < -1e-12):
        raise NotNonnegative("T must be real with nonnegative entries")
    R = T.real
    if np.any(np.tril(R, -1) != 0):
        raise NotUpperTriangular("T must be upper triangular")
    return (R + R.T) / 2


def compression_radius(T) -> float:
    """Numerical radius of a nonnegative compression matrix."""
    return numerical_radius_nonneg(T)


# -- 2 x 2 operator matrices --------------------------------------------------


def _same_square(*mats) -> list[np.ndarray]:
    out = [as_matrix(m) for m in mats]
    shape = out[0].shape
    for m in out:
        _require_square(m)
        if m.shape != shape:
            raise DimensionMismatch(f"operands must share one square shape, got {[x.shape for x in out]}")
    return out


def bound_2x2(A, B, C, D, fg: FgPair = HALF) -> float:
    """Closed-form upper bound for w([[A, B], [C, D]])."""
    A, B, C, D = _same_square(A, B, C, D)
    wa, wd = numerical_radius(A).value, numerical_radius(D).value
    a = _pair_entry(B, C, fg)
    return (wa + wd + math.sqrt((wa - wd) ** 2 + a * a)) / 2


def paul_2x2_bound(A, B, C, D) -> float:
    """The older 2 x 2 bound with (||B|| + ||C||)^2 under the root."""
    A, B, C, D = _same_square(A, B, C, D)
    wa, wd = numerical_radius(A).value, numerical_radius(D).value
    s = op_norm(B) + op_norm(C)
    return (wa + wd + math.sqrt((wa - wd) ** 2 + s * s)) / 2


def offdiag_bound(B, C) -> float:
    """(1/2) || |B| + |C*| ||^{1/2} || |C| + |B*| ||^{1/2} >= w([[0, B], [C, 0]])."""
    B, C = _same_square(B, C)
    return 0.5 * _pair_entry(B, C, HALF)


def selfadjoint_sandwich(B, C) -> tuple[float, float]:
    """Lower and upper bounds for w([[0, B], [C, 0]]) with B, C Hermitian."""
    B, C = _same_square(B, C)
    _check_hermitian(B)
    _check_hermitian(C)
    lower = 0.5 * max(op_norm(B + C), op_norm(B - C))
    upper = 0.5 * _psd_norm(abs_op(B) + abs_op(C))
    return lower, upper


def positive_equality(B, C) -> float:
    """(1/2) ||B + C||, which equals w([[0, B], [C, 0]]) for PSD B, C."""
    B, C = _same_square(B, C)
    for name, P in (("B", B), ("C", C)):
        try:
            clipped_spectrum(P)
        except (NotHermitian, NegativeEigenvalue) as exc:
            raise NotPSD(f"{name} is not positive semidefinite: {exc}") from exc
    return 0.5 * _psd_norm(B + C)


# -- products and commutators -------------------------------------------------


def product_sum_bound(A, B, C, D, t: float = 0.5) -> float:
    """Upper bound for w(AB + CD) and w(AB - CD)."""
    A, B, C, D = _same_square(A, B, C, D)
    fg = _pair_for(t)
    ab = mixed_norm(A, B, fg) * mixed_norm(B, A, fg)
    cd = mixed_norm(C, D, fg) * mixed_norm(D, C, fg)
    return 0.25 * (ab + cd)


def commutator_bound(A, B, t: float = 0.5) -> float:
    A, B = _same_square(A, B)
    fg = _pair_for(t)
    return 0.5 * mixed_norm(A, B, fg) * mixed_norm(B, A, fg)


def kittaneh_commutator_bound(A, B) -> float:
    """(1/2) || |A|^2 + |A*|^2 + |B|^2 + |B*|^2 ||."""
    A, B = _same_square(A, B)
    Ah, Bh = A.conj().T, B.conj().T
    return 0.5 * _psd_norm(Ah @ A + A @ Ah + Bh @ B + B @ Bh)


def product_bound(A, B, t: float = 0.5) -> float:
    A, B = _same_square(A, B)
    fg = _pair_for(t)
    return 0.25 * mixed_norm(A, B, fg) * mixed_norm(B, A, fg)


def _check_unitary(U: np.ndarray, tol: float = 1e-9) -> None:
    err = np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0]))
    if err > tol:
        raise NotUnitary(f"||U*U - I||_F = {err:.3e} exceeds {tol:g}")


def unitary_commutator_bound(A, U, t: float = 0.5) -> float:
    """(1/2) || |A|^{2t} + I || || |A*|^{2(1-t)} + I || >= w(AU +- U*A).

    With the convention x**0 = 1 the endpoints reduce to
    ``|| |A*|^2 + I ||`` (t = 0) and ``|| |A|^2 + I ||`` (t = 1).
    """
    A, U = _same_square(A, U)
    _check_unitary(U)
    fg = _pair_for(t)
    eye = np.eye(A.shape[0])
    return 0.5 * _psd_norm(fg.f2_abs(A) + eye) * _psd_norm(fg.g2_abs(A.conj().T) + eye)


def unitary_commutator_bound_min(A, U) -> float:
    """min(|| |A|^2 + I ||, || |A*|^2 + I ||)."""
    return min(unitary_commutator_bound(A, U, 0.0), unitary_commutator_bound(A, U, 1.0))


# -- spectral radius of sums of products --------------------------------------


def _check_pairs(pairs) -> list[tuple[np.ndarray, np.ndarray]]:
    pairs = [(as_matrix(a), as_matrix(b)) for a, b in pairs]
    if not pairs:
        raise EmptyList("need at least one (A_i, B_i) pair")
    _same_square(*[m for p in pairs for m in p])
    return pairs


def spectral_sum_bound(pairs: Sequence[tuple]) -> tuple[float, float]:
    """Upper bounds for r(sum_i A_i B_i).

    Returns ``(w_bound, row_bound)``: the numerical radius of the upper
    triangular matrix with ``w(B_i A_i)`` on the diagonal and
    ``a_ij = || |B_i A_j| + |A_i* B_j*| ||^{1/2} || |B_j A_i| + |A_j* B_i*| ||^{1/2}``
    above it, and the cheaper row-sum bound
    ``max_i w(B_i A_i) + (1/2) sum_{j>i} a_ij + (1/2) sum_{j<i} a_ji``.
    """
    pairs = _check_pairs(pairs)
    n = len(pairs)
    dim = pairs[0][0].shape[0]
    M = BlockMatrix(
        [dim] * n, [[pairs[i][1] @ pairs[j][0] for j in range(n)] for i in range(n)]
    )
    T = fg_hat_compression(M, HALF)
    w_bound = compression_radius(T)
    rows = [T[i, i] + 0.5 * T[i, i + 1 :].sum() + 0.5 * T[:i, i].sum() for i in range(n)]
    return w_bound, float(max(rows))


def legacy_spectral_sum_bound(pairs: Sequence[tuple]) -> float:
    """max_i w(B_i A_i) + (1/2) sum_{j != i} (||B_i A_j|| + ||B_j A_i||)."""
    pairs = _check_pairs(pairs)
    best = 0.0
    for i, (Ai, Bi) in enumerate(pairs):
        val = numerical_radius(Bi @ Ai).value
        for j, (Aj, Bj) in enumerate(pairs):
            if j != i:
                val += 0.5 * (op_norm(Bi @ Aj) + op_norm(Bj @ Ai))
        best = max(best, val)
    return best


# -- bound chain report -------------------------------------------------------

HOLDS, VIOLATED, NOT_APPLICABLE = "holds", "violated", "not_applicable"


@dataclass(frozen=True)
class Verdict:
    smaller: str
    larger: str
    proven: bool
    status: str
    slack: float | None  # value(larger) - value(smaller)

    @property
    def key(self) -> str:
        return f"{self.smaller}<={self.larger}"


def judge(slack: float, tol: float) -> str:
    """Classify ``slack = larger - smaller`` for an ordering claim.

    A shortfall beyond ``tol`` must also exceed ``10 * tol`` before it is
    reported as a violation.
    """
    return VIOLATED if slack < -tol and slack < -10 * tol else HOLDS


@dataclass
class BoundReport:
    exact_w: float | None
    bound_values: dict[str, float]
    verdicts: dict[str, Verdict]
    tolerance: float
    t: float
    witness: dict | None = field(default=None)

    @property
    def ok(self) -> bool:
        """True unless a proven ordering is violated."""
        return not any(v.proven and v.status == VIOLATED for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "exact_w": self.exact_w,
            "t": self.t,
            "tolerance": self.tolerance,
            "bounds": dict(self.bound_values),
            "verdicts": {
                k: {
                    "smaller": v.smaller,
                    "larger": v.larger,
                    "proven": v.proven,
                    "status": v.status,
                    "slack": v.slack,
                }
                for k, v in self.verdicts.items()
            },
            "ok": self.ok,
            "witness": self.witness,
        }


def bound_chain(M: BlockMatrix, t: float = 0.5, tol: float = 1e-8, exact: bool = True) -> BoundReport:
    """Exact numerical radius of ``M`` next to every compression bound.

    Bound ids: ``new_t`` (power pair at ``t``), ``new_half`` (t = 1/2),
    ``aok`` and ``hou_du``.  Orderings that hold by theorem are marked
    ``proven``; ``new_t <= aok`` for ``t != 1/2`` is recorded but never
    counts as a failure.  ``exact=False`` skips the dense numerical radius
    and marks verdicts against it ``not_applicable``.
    """
    fg_t = _pair_for(t)
    values = {
        "new_t": compression_radius(fg_hat_compression(M, fg_t)),
        "new_half": compression_radius(fg_hat_compression(M, HALF)),
        "aok": compression_radius(aok_compression(M)),
        "hou_du": compression_radius(hou_du_compression(M)),
    }
    exact_w = numerical_radius(M.embed(), tol=tol).value if exact else None
    if exact_w is not None:
        values = {"exact": exact_w, **values}

    pairs = [
        ("exact", "new_half", True),
        ("new_half", "aok", True),
        ("aok", "hou_du", True),
        ("exact", "new_t", True),
        ("new_t", "aok", t == 0.5),
    ]
    verdicts = {}
    for lo, hi, proven in pairs:
        if lo not in values or hi not in values:
            v = Verdict(lo, hi, proven, NOT_APPLICABLE, None)
        else:
            slack = values[hi] - values[lo]
            v = Verdict(lo, hi, proven, judge(slack, tol), slack)
        verdicts[v.key] = v
    report = BoundReport(exact_w, values, verdicts, tol, float(t))
    if not report.ok:
        report.witness = matrixio.block_to_obj(M)
    return report
