"""Cached Gauss-Jacobi rules on [0, 1] with weight y^beta."""

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi


@lru_cache(maxsize=64)
def jacobi01(n: int, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights with sum w f(y) ~ int_0^1 f(y) y^beta dy."""
    if beta == 0.0:
        x, w = np.polynomial.legendre.leggauss(n)
    else:
        x, w = roots_jacobi(n, 0.0, beta)
    y = 0.5 * (x + 1.0)
    w = w * 2.0 ** (-1.0 - beta)
    y.setflags(write=False)
    w.setflags(write=False)
    return y, w
