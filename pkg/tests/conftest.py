import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp


@pytest.fixture
def rng():
    return np.random.default_rng(20231015)


def ginibre(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def haar_unitary(rng, n):
    Q, R = np.linalg.qr(ginibre(rng, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def svd_moduli(X):
    """|X| and |X*| from an SVD; independent of the eigensolver under test."""
    U, s, Vh = np.linalg.svd(X, full_matrices=False)
    return (Vh.conj().T * s) @ Vh, (U * s) @ U.conj().T


def spectral_norm(X):
    return float(np.linalg.norm(X, 2))


_entry = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def complex_square(draw, min_dim=1, max_dim=5):
    n = draw(st.integers(min_dim, max_dim))
    re = draw(hnp.arrays(np.float64, (n, n), elements=_entry))
    im = draw(hnp.arrays(np.float64, (n, n), elements=_entry))
    return re + 1j * im
