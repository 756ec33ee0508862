"""Random ensembles and bulk certification of the numerical radius inequalities.

Every trial draws from its own generator seeded by ``(seed, index,
property)``, so trials are independent of evaluation order and any
failing trial can be replayed from those three numbers.
"""

from __future__ import annotations

import math
import os
import statistics
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bounds as bd
from . import matrixio
from .blocks import BlockMatrix
from .errors import BadConfig, BadParameter
from .fg import power_pair
from .linalg import lambda_max, op_norm, spectral_radius
from .radius import brute_force_radius, check_mixed_schwarz, numerical_radius

__all__ = [
    "EnsembleConfig",
    "FuzzReport",
    "IncomparabilityResult",
    "PROPERTIES",
    "DEFAULT_PROPERTIES",
    "draw",
    "fuzz_invariants",
    "replay",
    "sample",
    "search_incomparability",
    "square_zero",
    "tightness_stats",
    "verify_incomparability_witness",
]

KINDS = ("ginibre", "hermitian", "psd", "unitary", "nilpotent", "nonnegative")
T_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
PROFILES = {"ci": 500, "deep": 10_000}


@dataclass(frozen=True)
class EnsembleConfig:
    kind: str = "ginibre"
    dim: int = 3
    block_grid: tuple[int, tuple[int, ...]] | None = None
    seed: int = 42
    count: int = 100

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadConfig(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        if int(self.dim) < 1:
            raise BadConfig(f"dim must be >= 1, got {self.dim}")
        if int(self.count) < 1:
            raise BadConfig(f"count must be >= 1, got {self.count}")
        if not (0 <= int(self.seed) < 2**64):
            raise BadConfig("seed must be a 64-bit unsigned integer")
        if self.block_grid is not None:
            n, dims = self.block_grid
            dims = tuple(int(d) for d in dims)
            if n < 1 or len(dims) != n or any(d < 1 for d in dims):
                raise BadConfig(f"block_grid {self.block_grid!r} is not conformant")
            object.__setattr__(self, "block_grid", (int(n), dims))


def _stream(seed: int, index: int, tag: str = "") -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index), zlib.crc32(tag.encode())]))


def ginibre(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2)


def draw(kind: str, dim: int, rng: np.random.Generator) -> np.ndarray:
    """One ``dim x dim`` matrix from the named ensemble."""
    if kind == "nonnegative":
        return np.abs(rng.standard_normal((dim, dim))).astype(np.complex128)
    G = ginibre(rng, dim)
    if kind == "ginibre":
        return G
    if kind == "hermitian":
        return (G + G.conj().T) / 2
    if kind == "psd":
        return G.conj().T @ G
    if kind == "unitary":
        Q, R = np.linalg.qr(G)
        d = np.diag(R)
        return Q * (d / np.abs(d))
    if kind == "nilpotent":
        return np.triu(G, 1)
    raise BadConfig(f"unknown ensemble kind {kind!r}")


def square_zero(rng: np.random.Generator, dim: int) -> np.ndarray:
    """A random matrix with A @ A == 0: a unitary conjugate of [[0, G], [0, 0]]."""
    k = dim // 2
    N = np.zeros((dim, dim), dtype=np.complex128)
    N[:k, k:] = ginibre(rng, k, dim - k)
    U = draw("unitary", dim, rng)
    return U @ N @ U.conj().T


def sample(cfg: EnsembleConfig, index: int) -> np.ndarray | BlockMatrix:
    """Deterministic function of ``(cfg.seed, index)``."""
    if not (0 <= index < cfg.count):
        raise BadConfig(f"index {index} outside [0, {cfg.count})")
    rng = _stream(cfg.seed, index)
    if cfg.block_grid is None:
        return draw(cfg.kind, cfg.dim, rng)
    _, dims = cfg.block_grid
    return BlockMatrix.from_dense(draw(cfg.kind, sum(dims), rng), dims)


# -- properties ---------------------------------------------------------------


@dataclass
class Trial:
    slack: float  # bound - exact (or -|difference| for equalities)
    passed: bool
    witness: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Property:
    id: str
    check: Callable[[np.random.Generator, EnsembleConfig], Trial]
    proven: bool = True
    tol: float = 1e-6
    doc: str = ""


def _ineq(slack: float, tol: float, **witness) -> Trial:
    return Trial(float(slack), bool(slack >= -tol), witness)


def _w(A) -> float:
    return numerical_radius(A).value


def _random_grid(rng: np.random.Generator, cfg: EnsembleConfig) -> tuple[int, ...]:
    if cfg.block_grid is not None:
        return cfg.block_grid[1]
    n = int(rng.integers(2, 5))
    return tuple(int(d) for d in rng.integers(1, 4, size=n))


def _random_block(rng, cfg) -> BlockMatrix:
    dims = _random_grid(rng, cfg)
    return BlockMatrix.from_dense(draw(cfg.kind, sum(dims), rng), dims)


def _p_oracle(rng, cfg):
    A = draw(cfg.kind, cfg.dim, rng)
    w = _w(A)
    brute = brute_force_radius(A, n_angles=10_000)
    # a grid maximum can only under-estimate w
    diff = w - brute
    return Trial(-abs(diff), -1e-9 <= diff <= 1e-6, {"A": A})


def _p_norm_sandwich(rng, cfg):
    A = draw(cfg.kind, cfg.dim, rng)
    w, nrm = _w(A), op_norm(A)
    return _ineq(min(w - nrm / 2, nrm - w), 1e-8, A=A)


def _p_power(rng, cfg):
    A = draw(cfg.kind, cfg.dim, rng)
    w = _w(A)
    slack = min(w**2 - _w(A @ A), w**3 - _w(A @ A @ A))
    return _ineq(slack, 1e-6, A=A)


def _p_normal(rng, cfg):
    H = draw("hermitian", cfg.dim, rng)
    U = draw("unitary", cfg.dim, rng)
    diff = max(abs(_w(H) - op_norm(H)), abs(_w(U) - op_norm(U)))
    return _ineq(-diff, 1e-6, H=H, U=U)


def _p_unitary_invariance(rng, cfg):
    A = draw(cfg.kind, cfg.dim, rng)
    U = draw("unitary", cfg.dim, rng)
    return _ineq(-abs(_w(U.conj().T @ A @ U) - _w(A)), 1e-7, A=A, U=U)


def _p_mixed_schwarz(rng, cfg):
    A = draw(cfg.kind, cfg.dim, rng)
    x, y = ginibre(rng, cfg.dim, 1)[:, 0], ginibre(rng, cfg.dim, 1)[:, 0]
    t = float(rng.choice(T_GRID))
    lhs, rhs, holds = check_mixed_schwarz(A, x, y, power_pair(t))
    return Trial((rhs - lhs) / (1.0 + rhs), holds, {"A": A, "x": x[:, None], "y": y[:, None], "t": t})


def _p_chain(rng, cfg):
    M = _random_block(rng, cfg)
    rep = bd.bound_chain(M, 0.5)
    slack = min(v.slack for v in rep.verdicts.values() if v.proven)
    return _ineq(slack, 1e-6, M=M)


def _p_new_t(rng, cfg):
    M = _random_block(rng, cfg)
    t = float(rng.choice(T_GRID))
    bound = bd.compression_radius(bd.fg_hat_compression(M, power_pair(t)))
    return _ineq(bound - _w(M.embed()), 1e-6, M=M, t=t)


def _p_entry_domination(rng, cfg):
    M = _random_block(rng, cfg)
    T = bd.fg_hat_compression(M)
    slack = min(
        (op_norm(M[i, j]) + op_norm(M[j, i]) - T[i, j] for i in range(M.n) for j in range(i + 1, M.n)),
        default=0.0,
    )
    return _ineq(slack, 1e-9, M=M)


def _p_monotone_transfer(rng, cfg):
    n = cfg.dim
    S = np.abs(rng.standard_normal((n, n)))
    T = S + np.abs(rng.standard_normal((n, n))) * rng.integers(0, 2, size=(n, n))
    slack = lambda_max((T + T.T) / 2) - lambda_max((S + S.T) / 2)
    return _ineq(slack, 1e-9, S=S, T=T)


def _p_symmetrize(rng, cfg):
    T = np.triu(np.abs(rng.standard_normal((cfg.dim, cfg.dim))))
    diff = _w(T) - lambda_max(bd.symmetrize_half(T))
    return _ineq(-abs(diff), 1e-7, T=T)


def _p_square_zero(rng, cfg):
    A = square_zero(rng, max(cfg.dim, 2))
    return _ineq(-abs(_w(A) - op_norm(A) / 2), 1e-7, A=A)


def _p_bound_2x2(rng, cfg):
    A, B, C, D = (draw(cfg.kind, cfg.dim, rng) for _ in range(4))
    t = float(rng.choice(T_GRID))
    fg = power_pair(t)
    bound = bd.bound_2x2(A, B, C, D, fg)
    exact = _w(np.block([[A, B], [C, D]]))
    M = BlockMatrix([cfg.dim] * 2, [[A, B], [C, D]])
    closed = abs(bound - bd.compression_radius(bd.fg_hat_compression(M, fg)))
    slack = bound - exact
    if t == 0.5:
        slack = min(slack, bd.paul_2x2_bound(A, B, C, D) - bound)
    return Trial(slack, slack >= -1e-6 and closed <= 1e-10, {"A": A, "B": B, "C": C, "D": D, "t": t})


def _p_offdiag(rng, cfg):
    B, C = draw(cfg.kind, cfg.dim, rng), draw(cfg.kind, cfg.dim, rng)
    Z = np.zeros_like(B)
    return _ineq(bd.offdiag_bound(B, C) - _w(np.block([[Z, B], [C, Z]])), 1e-7, B=B, C=C)


def _p_sandwich(rng, cfg):
    B, C = draw("hermitian", cfg.dim, rng), draw("hermitian", cfg.dim, rng)
    Z = np.zeros_like(B)
    lower, upper = bd.selfadjoint_sandwich(B, C)
    w = _w(np.block([[Z, B], [C, Z]]))
    return _ineq(min(w - lower, upper - w), 1e-7, B=B, C=C)


def _p_positive(rng, cfg):
    B, C = draw("psd", cfg.dim, rng), draw("psd", cfg.dim, rng)
    Z = np.zeros_like(B)
    diff = bd.positive_equality(B, C) - _w(np.block([[Z, B], [C, Z]]))
    return _ineq(-abs(diff), 1e-6, B=B, C=C)


def _p_product_sum(rng, cfg):
    A, B, C, D = (draw(cfg.kind, cfg.dim, rng) for _ in range(4))
    t = float(rng.choice((0.0, 0.5, 1.0)))
    bound = bd.product_sum_bound(A, B, C, D, t)
    exact = max(_w(A @ B + C @ D), _w(A @ B - C @ D))
    return _ineq(bound - exact, 1e-6, A=A, B=B, C=C, D=D, t=t)


def _p_commutator(rng, cfg):
    A, B = draw(cfg.kind, cfg.dim, rng), draw(cfg.kind, cfg.dim, rng)
    t = float(rng.choice(T_GRID))
    exact = max(_w(A @ B + B @ A), _w(A @ B - B @ A))
    slack = min(bd.commutator_bound(A, B, t), bd.kittaneh_commutator_bound(A, B)) - exact
    return _ineq(slack, 1e-6, A=A, B=B, t=t)


def _p_product(rng, cfg):
    A, B = draw(cfg.kind, cfg.dim, rng), draw(cfg.kind, cfg.dim, rng)
    t = float(rng.choice(T_GRID))
    return _ineq(bd.product_bound(A, B, t) - _w(A @ B), 1e-6, A=A, B=B, t=t)


def _p_unitary(rng, cfg):
    A, U = draw(cfg.kind, cfg.dim, rng), draw("unitary", cfg.dim, rng)
    exact = max(_w(A @ U + U.conj().T @ A), _w(A @ U - U.conj().T @ A))
    slack = min(bd.unitary_commutator_bound(A, U, t) for t in T_GRID) - exact
    return _ineq(slack, 1e-6, A=A, U=U)


def _p_spectral_chain(rng, cfg):
    n = int(rng.integers(1, 5))
    pairs = [(draw(cfg.kind, cfg.dim, rng), draw(cfg.kind, cfg.dim, rng)) for _ in range(n)]
    r = spectral_radius(sum(A @ B for A, B in pairs))
    w_bound, row_bound = bd.spectral_sum_bound(pairs)
    legacy = bd.legacy_spectral_sum_bound(pairs)
    slack = min(w_bound - r, row_bound - w_bound, legacy - row_bound)
    return _ineq(slack, 1e-6, **{f"{s}{i}": m for i, p in enumerate(pairs) for s, m in zip("AB", p)})


def _p_inverted_chain(rng, cfg):
    M = _random_block(rng, cfg)
    rep = bd.bound_chain(M, 0.5)
    return _ineq(rep.bound_values["exact"] - rep.bound_values["hou_du"], 1e-6, M=M)


PROPERTIES: dict[str, Property] = {
    p.id: p
    for p in [
        Property("oracle", _p_oracle, doc="refined w agrees with a dense angle grid"),
        Property("norm_sandwich", _p_norm_sandwich, doc="||A||/2 <= w(A) <= ||A||"),
        Property("power_inequality", _p_power, doc="w(A^n) <= w(A)^n for n = 2, 3"),
        Property("normal_equality", _p_normal, doc="w = ||.|| for Hermitian and unitary matrices"),
        Property("unitary_invariance", _p_unitary_invariance, doc="w(U*AU) = w(A)"),
        Property("mixed_schwarz", _p_mixed_schwarz, tol=1e-9, doc="|<Ax,y>| <= ||f(|A|)x|| ||g(|A*|)y||"),
        Property("chain", _p_chain, doc="w <= new_half <= aok <= hou_du"),
        Property("new_t", _p_new_t, doc="w <= w(fg_hat) for power pairs on the t grid"),
        Property("entry_domination", _p_entry_domination, tol=1e-9, doc="a_ij <= ||A_ij|| + ||A_ji||"),
        Property("monotone_transfer", _p_monotone_transfer, tol=1e-9, doc="0 <= S <= T entrywise => w(S) <= w(T)"),
        Property("symmetrize_identity", _p_symmetrize, tol=1e-7, doc="w(T) = lambda_max((T + T^T)/2)"),
        Property("square_zero", _p_square_zero, tol=1e-7, doc="A^2 = 0 => w(A) = ||A||/2"),
        Property("bound_2x2", _p_bound_2x2, doc="2x2 closed form dominates w and the older 2x2 bound"),
        Property("offdiag", _p_offdiag, tol=1e-7, doc="off-diagonal 2x2 bound dominates w"),
        Property("selfadjoint_sandwich", _p_sandwich, tol=1e-7, doc="||B +- C||/2 <= w <= || |B| + |C| ||/2"),
        Property("positive_equality", _p_positive, doc="w([[0,B],[C,0]]) = ||B + C||/2 for PSD B, C"),
        Property("product_sum", _p_product_sum, doc="w(AB +- CD) bound"),
        Property("commutator", _p_commutator, doc="w(AB +- BA) under both commutator bounds"),
        Property("product", _p_product, doc="w(AB) bound"),
        Property("unitary_commutator", _p_unitary, doc="w(AU +- U*A) bound on the t grid"),
        Property("spectral_chain", _p_spectral_chain, doc="r <= w_bound <= row_bound <= legacy"),
        Property("inverted_chain", _p_inverted_chain, doc="deliberately false: hou_du <= w (harness self-test)"),
    ]
}
DEFAULT_PROPERTIES = tuple(p for p in PROPERTIES if p != "inverted_chain")


def _witness_obj(witness: dict) -> dict:
    out = {}
    for k, v in witness.items():
        if isinstance(v, BlockMatrix):
            out[k] = matrixio.block_to_obj(v)
        elif isinstance(v, np.ndarray):
            out[k] = matrixio.matrix_to_obj(np.atleast_2d(v))
        else:
            out[k] = v
    return out


def replay(cfg: EnsembleConfig, prop_id: str, index: int) -> Trial:
    """Re-run one trial exactly as :func:`fuzz_invariants` ran it."""
    if prop_id not in PROPERTIES:
        raise BadConfig(f"unknown property {prop_id!r}")
    return PROPERTIES[prop_id].check(_stream(cfg.seed, index, prop_id), cfg)


# -- fuzzing ------------------------------------------------------------------


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        raw = os.environ.get("NUMRAD_THREADS", "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise BadConfig(f"NUMRAD_THREADS must be an integer, got {raw!r}") from None
    if threads < 0:
        raise BadConfig("thread count must be >= 0")
    return threads or (os.cpu_count() or 1)


def _gap_stats(values: Sequence[float]) -> dict[str, float]:
    if not values:
        return {"min": None, "median": None, "mean": None, "max": None}
    return {
        "min": float(min(values)),
        "median": float(statistics.median(values)),
        "mean": float(math.fsum(values) / len(values)),
        "max": float(max(values)),
    }


@dataclass
class FuzzReport:
    trials: int
    counts: dict[str, dict[str, int]]
    violations: list[dict]
    tightness: dict[str, dict[str, float]]
    proven: dict[str, bool]
    config: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """No proven property failed."""
        return not any(self.counts[p]["fail"] and self.proven[p] for p in self.counts)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "trials": self.trials,
            "counts": self.counts,
            "proven": self.proven,
            "tightness": self.tightness,
            "violations": self.violations,
            "ok": self.ok,
        }


def fuzz_invariants(
    cfg: EnsembleConfig, property_set: Iterable[str] = DEFAULT_PROPERTIES, threads: int | None = None
) -> FuzzReport:
    """Run ``cfg.count`` trials of every selected property.

    Trials run on a thread pool; results are gathered in task order so the
    report does not depend on scheduling.
    """
    props = list(dict.fromkeys(property_set))
    if not props:
        raise BadConfig("property_set must not be empty")
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise BadConfig(f"unknown properties: {unknown}")

    tasks = [(p, i) for p in props for i in range(cfg.count)]

    def run(task):
        p, i = task
        return replay(cfg, p, i)

    n_threads = thread_count(threads)
    if n_threads == 1:
        results = list(map(run, tasks))
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(run, tasks))

    counts = {p: {"pass": 0, "fail": 0} for p in props}
    slacks: dict[str, list[float]] = {p: [] for p in props}
    violations = []
    for (p, i), trial in zip(tasks, results):
        slacks[p].append(trial.slack)
        if trial.passed:
            counts[p]["pass"] += 1
        else:
            counts[p]["fail"] += 1
            violations.append(
                {
                    "property": p,
                    "seed": cfg.seed,
                    "index": i,
                    "slack": trial.slack,
                    "witness": _witness_obj(trial.witness),
                }
            )
    return FuzzReport(
        trials=cfg.count,
        counts=counts,
        violations=violations,
        tightness={p: _gap_stats(slacks[p]) for p in props},
        proven={p: PROPERTIES[p].proven for p in props},
        config={
            "kind": cfg.kind,
            "dim": cfg.dim,
            "block_grid": None if cfg.block_grid is None else [cfg.block_grid[0], list(cfg.block_grid[1])],
            "seed": cfg.seed,
            "count": cfg.count,
        },
    )


# -- commutator bound incomparability -----------------------------------------

MARGIN = 1e-6


@dataclass
class IncomparabilityResult:
    p11_lt_p12: dict | None  # commutator_bound strictly below kittaneh_commutator_bound
    p12_lt_p11: dict | None
    scanned: int

    def status(self, direction: str) -> str:
        return "found" if getattr(self, direction) is not None else "NotFound"

    def to_dict(self) -> dict:
        return {
            "scanned": self.scanned,
            "p11_lt_p12": self.p11_lt_p12 if self.p11_lt_p12 is not None else "NotFound",
            "p12_lt_p11": self.p12_lt_p11 if self.p12_lt_p11 is not None else "NotFound",
        }


def _witness(A, B, p11, p12, **extra) -> dict:
    return {
        "A": matrixio.matrix_to_obj(A),
        "B": matrixio.matrix_to_obj(B),
        "p11": p11,
        "p12": p12,
        "margin": abs(p11 - p12),
        **extra,
    }


def search_incomparability(
    cfg: EnsembleConfig,
    dims: Sequence[int] = (2, 3, 4),
    candidates: Iterable[tuple[np.ndarray, np.ndarray]] = (),
    margin: float = MARGIN,
) -> IncomparabilityResult:
    """Look for (A, B) separating the two commutator bounds in each direction.

    Explicit ``candidates`` are examined first, then ``cfg.count`` random
    pairs from ``cfg.kind`` with dimension cycling through ``dims``.  The
    scan stops once both directions are witnessed.
    """
    found: dict[str, dict | None] = {"p11_lt_p12": None, "p12_lt_p11": None}
    scanned = 0

    def consider(A, B, **extra) -> bool:
        p11 = bd.commutator_bound(A, B, 0.5)
        p12 = bd.kittaneh_commutator_bound(A, B)
        if found["p11_lt_p12"] is None and p12 - p11 > margin:
            found["p11_lt_p12"] = _witness(A, B, p11, p12, **extra)
        if found["p12_lt_p11"] is None and p11 - p12 > margin:
            found["p12_lt_p11"] = _witness(A, B, p11, p12, **extra)
        return all(v is not None for v in found.values())

    done = False
    for k, (A, B) in enumerate(candidates):
        scanned += 1
        if consider(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex), source="candidate", index=k):
            done = True
            break
    for i in range(cfg.count if not done else 0):
        rng = _stream(cfg.seed, i, "incomparability")
        d = int(dims[i % len(dims)])
        A, B = draw(cfg.kind, d, rng), draw(cfg.kind, d, rng)
        scanned += 1
        if consider(A, B, source="random", seed=cfg.seed, index=i, dim=d):
            break
    return IncomparabilityResult(found["p11_lt_p12"], found["p12_lt_p11"], scanned)


def _svd_moduli(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    U, s, Vh = np.linalg.svd(X, full_matrices=False)
    return (Vh.conj().T * s) @ Vh, (U * s) @ U.conj().T


def verify_incomparability_witness(witness: dict, margin: float = MARGIN) -> bool:
    """Recompute both bounds via SVD moduli and confirm the witnessed direction.

    Also checks that both bounds dominate w(AB + BA) and w(AB - BA).
    """
    A = matrixio.matrix_from_obj(witness["A"])
    B = matrixio.matrix_from_obj(witness["B"])
    absA, absAs = _svd_moduli(A)
    absB, absBs = _svd_moduli(B)
    norm2 = lambda X: float(np.linalg.norm(X, 2))  # noqa: E731
    p11 = 0.5 * norm2(absA + absBs) * norm2(absB + absAs)
    p12 = 0.5 * norm2(absA @ absA + absAs @ absAs + absB @ absB + absBs @ absBs)
    exact = max(brute_force_radius(A @ B + B @ A), brute_force_radius(A @ B - B @ A))
    direction_ok = (p12 - p11 > margin) if witness["p11"] < witness["p12"] else (p11 - p12 > margin)
    return bool(direction_ok and exact <= min(p11, p12) + 1e-6)


# -- tightness sweeps ---------------------------------------------------------

BOUND_IDS = ("new_t", "new_half", "aok", "hou_du")
CSV_COLUMNS = ("dim", "t", "bound_id", "min_gap", "median_gap", "mean_gap", "max_gap", "trials")


def tightness_stats(cfg: EnsembleConfig, t_grid: Sequence[float] = T_GRID, block_dim: int = 2) -> list[dict]:
    """Gap statistics of (bound - w) for every compression bound and t.

    Instances are ``cfg.count`` block matrices from ``cfg.kind``; the grid
    is ``cfg.block_grid`` or, if unset, ``cfg.dim`` blocks of size
    ``block_dim``.  The ``dim`` column reports the grid order.
    """
    t_grid = [float(t) for t in t_grid]
    if not t_grid or any(not (0.0 <= t <= 1.0) for t in t_grid):
        raise BadParameter(f"t_grid must be a nonempty subset of [0, 1], got {t_grid}")
    grid = cfg.block_grid or (cfg.dim, (block_dim,) * cfg.dim)
    cfg = EnsembleConfig(cfg.kind, cfg.dim, grid, cfg.seed, cfg.count)
    gaps: dict[tuple[float, str], list[float]] = {(t, b): [] for t in t_grid for b in BOUND_IDS}
    for i in range(cfg.count):
        M = sample(cfg, i)
        exact = _w(M.embed())
        shared = {
            "new_half": bd.compression_radius(bd.fg_hat_compression(M)),
            "aok": bd.compression_radius(bd.aok_compression(M)),
            "hou_du": bd.compression_radius(bd.hou_du_compression(M)),
        }
        for t in t_grid:
            new_t = shared["new_half"] if t == 0.5 else bd.compression_radius(bd.fg_hat_compression(M, power_pair(t)))
            for b, v in (("new_t", new_t), *shared.items()):
                gaps[(t, b)].append(v - exact)
    rows = []
    for t in t_grid:
        for b in BOUND_IDS:
            s = _gap_stats(gaps[(t, b)])
            rows.append(
                {
                    "dim": grid[0],
                    "t": t,
                    "bound_id": b,
                    "min_gap": s["min"],
                    "median_gap": s["median"],
                    "mean_gap": s["mean"],
                    "max_gap": s["max"],
                    "trials": cfg.count,
                }
            )
    return rows


def chain_is_monotone(rows: Sequence[dict], tol: float = 1e-6) -> bool:
    """Check new_half <= aok <= hou_du on every gap column, per (dim, t)."""
    by_key: dict[tuple, dict[str, dict]] = {}
    for r in rows:
        by_key.setdefault((r["dim"], r["t"]), {})[r["bound_id"]] = r
    for group in by_key.values():
        for col in ("min_gap", "median_gap", "mean_gap", "max_gap"):
            a, b, c = (group[k][col] for k in ("new_half", "aok", "hou_du"))
            if not (a <= b + tol and b <= c + tol):
                return False
    return True
