"""The 3x3 kernel matrix showing that F(nu) <= G(1 - 2 r0) fails in general."""

from __future__ import annotations

import numpy as np

from ..linalg import determinant, is_psd

__all__ = ["ZOU_NU", "ZOU_POINTS", "zou_matrix", "zou_counterexample"]

ZOU_NU = 0.42
ZOU_POINTS = (1.7006, 0.0, 0.8047)


def zou_matrix(nu: float = ZOU_NU, points=ZOU_POINTS) -> np.ndarray:
    """``cosh((1-2nu) d_ij) / (2nu + (1-2nu) cosh(d_ij))`` with ``d_ij = x_i - x_j``."""
    x = np.asarray(points, dtype=np.float64)
    d = x[:, None] - x[None, :]
    beta = 1.0 - 2.0 * nu
    return np.cosh(beta * d) / (2.0 * nu + beta * np.cosh(d))


def zou_counterexample(tol: float = 1e-8) -> tuple[np.ndarray, float, bool]:
    """Return the kernel matrix, its determinant and whether it is PSD (it is not)."""
    Z = zou_matrix()
    return Z, determinant(Z), is_psd(Z, tol)
