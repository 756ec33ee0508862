"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed even
without ``-s``).
"""

import json
import time

import numpy as np
import pytest

from numrad import bounds as bd
from numrad import harness
from numrad.blocks import BlockMatrix
from numrad.cli import main
from numrad.fg import power_pair
from numrad.harness import KINDS, EnsembleConfig, draw, square_zero
from numrad.linalg import op_norm
from numrad.radius import brute_force_radius, check_mixed_schwarz, numerical_radius

from conftest import spectral_norm


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {title} ({detail})")
        assert ok, detail

    return emit


def stream(tag, i):
    return harness._stream(20240601, i, tag)


def w(A):
    return numerical_radius(A).value


def test_1_oracle_validity(verdict):
    worst, sandwich_bad = 0.0, 0
    start = time.perf_counter()
    for i in range(100):
        rng = stream("oracle", i)
        A = draw(KINDS[i % len(KINDS)], 2 + i % 7, rng)
        value = w(A)
        worst = max(worst, abs(value - brute_force_radius(A, n_angles=100_000)))
        nrm = spectral_norm(A)
        if not (nrm / 2 - 1e-9 <= value <= nrm + 1e-9):
            sandwich_bad += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and sandwich_bad == 0 and elapsed < 60
    verdict(1, "w vs 1e5-angle grid", ok, f"max |diff| {worst:.2e}, sandwich failures {sandwich_bad}, {elapsed:.1f}s")


def _svd_rhs(A, x, y, t):
    # ||f(|A|) x|| ||g(|A*|) y|| with f = s^t, g = s^(1-t), from a full SVD
    U, s, Vh = np.linalg.svd(A)
    V = Vh.conj().T
    fx = V @ (s**t * (Vh @ x))
    gy = U @ (s ** (1 - t) * (U.conj().T @ y))
    return np.linalg.norm(fx) * np.linalg.norm(gy)


def test_2_mixed_schwarz(verdict):
    failures, oracle_failures = 0, 0
    for i in range(1000):
        rng = stream("schwarz", i)
        n = 1 + i % 6
        A = draw(KINDS[i % len(KINDS)], n, rng)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        t = float(rng.uniform()) if i % 5 else float((0.0, 1.0)[i % 2])
        lhs, rhs, holds = check_mixed_schwarz(A, x, y, power_pair(t))
        failures += not holds
        oracle = _svd_rhs(A, x, y, t)
        oracle_failures += abs(np.vdot(y, A @ x)) > oracle + 1e-9 * (1 + oracle)
        oracle_failures += abs(rhs - oracle) > 1e-9 * (1 + oracle)
    ok = failures == 0 and oracle_failures == 0
    verdict(2, "mixed Schwarz on 1000 instances", ok, f"{failures} violations, {oracle_failures} oracle mismatches")


def test_3_proven_chain(verdict):
    worst, count = np.inf, 0
    for i in range(500):
        rng = stream("chain", i)
        n = 2 + i % 3
        dims = tuple(int(d) for d in rng.integers(1, 4, size=n))
        kind = KINDS[i % len(KINDS)]
        M = BlockMatrix.from_dense(draw(kind, sum(dims), rng), dims)
        rep = bd.bound_chain(M, 0.5)
        for key in ("exact<=new_half", "new_half<=aok", "aok<=hou_du"):
            worst = min(worst, rep.verdicts[key].slack)
        count += 1
    verdict(3, f"w <= new_half <= aok <= hou_du on {count} block matrices", worst >= -1e-6, f"min slack {worst:.2e}")


def test_4_equality_cases(verdict):
    rng = stream("equality", 0)
    psd_err = 0.0
    for _ in range(100):
        d = int(rng.integers(1, 5))
        B, C = draw("psd", d, rng), draw("psd", d, rng)
        Z = np.zeros((d, d))
        psd_err = max(psd_err, abs(spectral_norm(B + C) / 2 - w(np.block([[Z, B], [C, Z]]))))
    tri_err = 0.0
    for _ in range(100):
        d = int(rng.integers(1, 7))
        T = np.triu(np.abs(rng.standard_normal((d, d))))
        tri_err = max(tri_err, abs(w(T) - np.linalg.eigvalsh((T + T.T) / 2)[-1]))
    nil_err = 0.0
    for i in range(100):
        A = square_zero(rng, 2 + i % 7)
        nil_err = max(nil_err, abs(w(A) - op_norm(A) / 2))
    # nilpotent diagonal blocks: the compression chain sees w = ||A||/2 as well
    N = np.array([[0, 1], [0, 0]])
    rep = bd.bound_chain(BlockMatrix([2, 2], [[N, None], [None, N]]))
    nil_err = max(nil_err, abs(rep.exact_w - 0.5), abs(rep.bound_values["aok"] - 0.5))
    ok = psd_err <= 1e-6 and tri_err <= 1e-7 and nil_err <= 1e-7
    verdict(4, "equality cases", ok, f"psd {psd_err:.1e}, triangular {tri_err:.1e}, nilpotent {nil_err:.1e}")


def test_5_scalar_bounds(verdict):
    worst = {k: np.inf for k in ("product_sum", "commutator", "product", "unitary", "offdiag", "sandwich")}
    for i in range(500):
        rng = stream("scalar", i)
        kind = KINDS[i % len(KINDS)]
        d = 1 + i % 4
        A, B, C, D = (draw(kind, d, rng) for _ in range(4))
        U = draw("unitary", d, rng)
        t = float(rng.uniform())
        exact = max(w(A @ B + C @ D), w(A @ B - C @ D))
        worst["product_sum"] = min(worst["product_sum"], bd.product_sum_bound(A, B, C, D, t) - exact)
        exact = max(w(A @ B + B @ A), w(A @ B - B @ A))
        worst["commutator"] = min(worst["commutator"], bd.commutator_bound(A, B, t) - exact)
        worst["product"] = min(worst["product"], bd.product_bound(A, B, t) - w(A @ B))
        exact = max(w(A @ U + U.conj().T @ A), w(A @ U - U.conj().T @ A))
        worst["unitary"] = min(worst["unitary"], bd.unitary_commutator_bound(A, U, t) - exact)
        Z = np.zeros((d, d))
        worst["offdiag"] = min(worst["offdiag"], bd.offdiag_bound(B, C) - w(np.block([[Z, B], [C, Z]])))
        H, K = draw("hermitian", d, rng), draw("hermitian", d, rng)
        lower, upper = bd.selfadjoint_sandwich(H, K)
        wh = w(np.block([[Z, H], [K, Z]]))
        worst["sandwich"] = min(worst["sandwich"], wh - lower, upper - wh)
    ok = all(v >= -1e-6 for v in worst.values())
    verdict(5, "scalar bounds, 500 instances each", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_6_spectral_chain(verdict):
    worst = np.inf
    for i in range(500):
        rng = stream("spectral", i)
        n, d = 1 + i % 4, int(rng.integers(1, 5))
        kind = KINDS[i % len(KINDS)]
        pairs = [(draw(kind, d, rng), draw(kind, d, rng)) for _ in range(n)]
        r = float(np.max(np.abs(np.linalg.eigvals(sum(A @ B for A, B in pairs)))))
        w_bound, row_bound = bd.spectral_sum_bound(pairs)
        legacy = bd.legacy_spectral_sum_bound(pairs)
        worst = min(worst, w_bound - r, row_bound - w_bound, legacy - row_bound)
    verdict(6, "r <= w_bound <= row_bound <= legacy on 500 pair lists", worst >= -1e-6, f"min slack {worst:.2e}")


def test_7_incomparability(verdict):
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    cfg = EnsembleConfig("ginibre", 4, seed=42, count=10_000)
    res = harness.search_incomparability(cfg, dims=(2, 3, 4), candidates=[(A, A.T)])
    hand = res.p12_lt_p11
    hand_ok = hand is not None and hand["source"] == "candidate" and hand["margin"] >= 0.9
    hand_ok = hand_ok and harness.verify_incomparability_witness(hand)
    other = res.p11_lt_p12
    if other is None:
        other_ok, note = True, "p11<p12 NotFound"
    else:
        other_ok = other["margin"] >= 1e-6 and harness.verify_incomparability_witness(other)
        note = f"p11<p12 found at index {other['index']}, margin {other['margin']:.3f}, verified {other_ok}"
    margin = hand["margin"] if hand else float("nan")
    verdict(7, "commutator bounds are incomparable", hand_ok and other_ok, f"hand margin {margin:.3f}; {note}")


def test_8_fuzz_determinism(verdict, tmp_path, monkeypatch):
    outs = []
    for run, threads in enumerate(("1", "1", "8")):
        monkeypatch.setenv("NUMRAD_THREADS", threads)
        path = tmp_path / f"report{run}.json"
        code = main(["fuzz", "--seed", "42", "--out", str(path)])
        outs.append((code, path.read_bytes()))
    same = outs[0][1] == outs[1][1] == outs[2][1]
    report = json.loads(outs[0][1])
    codes = [c for c, _ in outs]
    ok = same and codes == [0, 0, 0] and report["ok"]
    verdict(8, "fuzz --seed 42 byte-identical (threads 1, 1, 8)", ok, f"exit codes {codes}, {report['trials']} trials per property")
