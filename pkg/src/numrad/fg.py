"""Scalar function pairs (f, g) with f(x) g(x) = x, applied to matrix moduli."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BadParameter, FgPairError
from .linalg import modulus_eig

__all__ = ["FgPair", "power_pair"]

PRODUCT_TOL = 1e-9


@dataclass(frozen=True)
class FgPair:
    """Nonnegative functions on [0, inf) whose product is the identity.

    The product rule is not checked at construction (the function class is
    infinite); it is checked on every spectrum the pair is applied to.
    """

    f: Callable[[float], float]
    g: Callable[[float], float]
    label: str = "custom"
    t: float | None = field(default=None, compare=False)

    def validate(self, points) -> None:
        for x in np.asarray(points, dtype=float).ravel():
            x = float(x)
            fx, gx = float(self.f(x)), float(self.g(x))
            if not (math.isfinite(fx) and math.isfinite(gx)):
                raise FgPairError(f"{self.label}: non-finite value at {x!r}")
            if fx < 0 or gx < 0:
                raise FgPairError(f"{self.label}: negative value at {x!r} (f={fx!r}, g={gx!r})")
            if abs(fx * gx - x) > PRODUCT_TOL * (1.0 + x):
                raise FgPairError(f"{self.label}: f(x) g(x) = {fx * gx!r} != x = {x!r}")

    def _of_modulus(self, A, fn: Callable[[float], float], squared: bool) -> np.ndarray:
        dec = modulus_eig(A)
        sing = dec.eigenvalues
        self.validate(sing)
        vals = np.array([fn(float(s)) for s in sing], dtype=float)
        if squared:
            vals = vals * vals
        V = dec.vectors
        out = (V * vals) @ V.conj().T
        return (out + out.conj().T) / 2

    def f_abs(self, A) -> np.ndarray:
        """f(|A|)."""
        return self._of_modulus(A, self.f, squared=False)

    def g_abs(self, A) -> np.ndarray:
        """g(|A|)."""
        return self._of_modulus(A, self.g, squared=False)

    def f2_abs(self, A) -> np.ndarray:
        """f^2(|A|)."""
        return self._of_modulus(A, self.f, squared=True)

    def g2_abs(self, A) -> np.ndarray:
        """g^2(|A|)."""
        return self._of_modulus(A, self.g, squared=True)


def power_pair(t: float) -> FgPair:
    """f(x) = x**t, g(x) = x**(1 - t) for t in [0, 1], with 0**0 = 1."""
    t = float(t)
    if not (0.0 <= t <= 1.0) or math.isnan(t):
        raise BadParameter(f"t must lie in [0, 1], got {t!r}")
    return FgPair(lambda x: x**t, lambda x: x ** (1.0 - t), label=f"power(t={t!r})", t=t)
