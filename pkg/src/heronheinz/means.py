"""Heron and Heinz means, scalar and matrix.

The matrix expressions return matrices; norms are applied by the caller.
A :class:`MeanTriple` may hold a single ``(A, X, B)`` or a stack of them
(arrays of shape ``(L, n, n)``), in which case every expression here returns
a stack and the exponent may be a scalar or a length-``L`` array.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NotPSDError, RangeError
from .linalg import SymEig, as_matrix, eig_power, random_spd, gaussian, sym_eig

__all__ = [
    "MeanTriple",
    "heron_scalar",
    "heinz_scalar",
    "kantorovich_factor",
    "heinz_matrix_sum",
    "heinz_matrix_diff",
    "heron_matrix",
    "loewner_matrix",
]

LOEWNER_TIE = 1e-12


def _positive(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise RangeError("means are defined for positive a, b only")
    return a, b


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def heron_scalar(a, b, nu):
    """Heron mean ``(1 - nu) sqrt(ab) + nu (a + b) / 2``; vectorises over arrays."""
    a, b = _positive(a, b)
    nu = np.asarray(nu, dtype=np.float64)
    return _out((1.0 - nu) * np.sqrt(a * b) + nu * (a + b) / 2.0)


def heinz_scalar(a, b, nu):
    """Heinz mean ``(a^(1-nu) b^nu + a^nu b^(1-nu)) / 2``; vectorises over arrays."""
    a, b = _positive(a, b)
    nu = np.asarray(nu, dtype=np.float64)
    return _out((a ** (1.0 - nu) * b**nu + a**nu * b ** (1.0 - nu)) / 2.0)


def kantorovich_factor(a, b):
    """``(a + b) / (2 sqrt(ab))``, at least 1 with equality iff ``a == b``."""
    a, b = _positive(a, b)
    return _out((a + b) / (2.0 * np.sqrt(a * b)))


def _random_arrays(n: int, seed, m: float, M: float):
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    sA, sB, sX = ss.generate_state(3, np.uint64)
    X = gaussian(np.random.Generator(np.random.PCG64(int(sX))), n * n).reshape(n, n)
    return random_spd(n, m, M, int(sA)), random_spd(n, m, M, int(sB)), X


@dataclass(frozen=True, eq=False)
class MeanTriple:
    """Symmetric positive definite ``A``, ``B`` and an arbitrary ``X`` of one size.

    Construction validates the data and factors ``A`` and ``B`` once; all
    powers are taken from those factors.
    """

    A: np.ndarray
    B: np.ndarray
    X: np.ndarray
    eig_A: SymEig = field(init=False, repr=False)
    eig_B: SymEig = field(init=False, repr=False)

    def __post_init__(self):
        A = as_matrix(self.A, square=True, batch=True, name="A")
        B = as_matrix(self.B, square=True, batch=True, name="B")
        X = as_matrix(self.X, square=True, batch=True, name="X")
        if not (A.shape == B.shape == X.shape) or A.ndim > 3:
            raise DimensionError(
                f"A, B, X must share one n x n shape (optionally stacked): {A.shape}, {B.shape}, {X.shape}"
            )
        eA, eB = sym_eig(A), sym_eig(B)
        for name, e in (("A", eA), ("B", eB)):
            if np.any(e.eigenvalues[..., 0] <= 0):
                raise NotPSDError(f"{name} must be positive definite")
        object.__setattr__(self, "A", 0.5 * (A + np.swapaxes(A, -1, -2)))
        object.__setattr__(self, "B", 0.5 * (B + np.swapaxes(B, -1, -2)))
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "eig_A", eA)
        object.__setattr__(self, "eig_B", eB)

    @classmethod
    def random(cls, n: int, seed: int, m: float = 0.1, M: float = 10.0) -> "MeanTriple":
        """Random triple: SPD ``A``, ``B`` with spectra in ``[m, M]`` and Gaussian ``X``.

        Three 64-bit seeds for ``A``, ``B`` and ``X`` are derived from ``seed``.
        """
        return cls(*_random_arrays(n, seed, m, M))

    @classmethod
    def random_stack(cls, n: int, seeds, m: float = 0.1, M: float = 10.0) -> "MeanTriple":
        """Stack of :meth:`random` triples, one per seed, validated in a single batch."""
        parts = [_random_arrays(n, s, m, M) for s in seeds]
        return cls(*(np.stack(a) for a in zip(*parts)))

    @classmethod
    def stack(cls, triples) -> "MeanTriple":
        triples = list(triples)
        return cls(
            np.stack([t.A for t in triples]),
            np.stack([t.B for t in triples]),
            np.stack([t.X for t in triples]),
        )

    @property
    def n(self) -> int:
        return self.A.shape[-1]

    @property
    def batched(self) -> bool:
        return self.A.ndim == 3

    def __len__(self) -> int:
        return self.A.shape[0] if self.batched else 1

    def take(self, idx) -> "MeanTriple":
        """Sub-stack at ``idx`` sharing the already computed factors."""
        if not self.batched:
            raise DimensionError("take() needs a stacked triple")
        idx = np.asarray(idx)
        out = object.__new__(MeanTriple)
        for name in ("A", "B", "X"):
            object.__setattr__(out, name, getattr(self, name)[idx])
        for name in ("eig_A", "eig_B"):
            e = getattr(self, name)
            object.__setattr__(out, name, SymEig(e.eigenvalues[idx], e.vectors[idx]))
        return out

    def power_A(self, t) -> np.ndarray:
        return eig_power(self.eig_A, t, what="A")

    def power_B(self, t) -> np.ndarray:
        return eig_power(self.eig_B, t, what="B")


def _heinz_terms(t: MeanTriple, nu):
    nu = np.asarray(nu, dtype=np.float64)
    left = t.power_A(nu) @ t.X @ t.power_B(1.0 - nu)
    right = t.power_A(1.0 - nu) @ t.X @ t.power_B(nu)
    return left, right


def heinz_matrix_sum(t: MeanTriple, nu) -> np.ndarray:
    """``A^nu X B^(1-nu) + A^(1-nu) X B^nu`` (no factor 1/2)."""
    left, right = _heinz_terms(t, nu)
    return left + right


def heinz_matrix_diff(t: MeanTriple, nu) -> np.ndarray:
    """``A^nu X B^(1-nu) - A^(1-nu) X B^nu``."""
    left, right = _heinz_terms(t, nu)
    return left - right


def heron_matrix(t: MeanTriple, alpha) -> np.ndarray:
    """``(1 - alpha) A^(1/2) X B^(1/2) + alpha (AX + XB) / 2``."""
    alpha = np.asarray(alpha, dtype=np.float64)[..., None, None]
    geo = t.power_A(0.5) @ t.X @ t.power_B(0.5)
    arith = (t.A @ t.X + t.X @ t.B) / 2.0
    return (1.0 - alpha) * geo + alpha * arith


def loewner_matrix(mu, r: float) -> np.ndarray:
    """Divided differences of ``x -> x**r`` at the points ``mu``.

    Entry ``(i, j)`` is ``(mu_i^r - mu_j^r) / (mu_i - mu_j)``; pairs closer
    than ``1e-12 * max(mu)`` take the derivative ``r mu_i^(r-1)``.
    """
    mu = np.asarray(mu, dtype=np.float64).ravel()
    if mu.size == 0 or np.any(~(mu > 0)) or not np.all(np.isfinite(mu)):
        raise RangeError("Loewner points must be finite and positive")
    if not 0.0 <= r <= 1.0:
        raise RangeError(f"Loewner exponent must lie in [0, 1], got {r}")
    num = mu[:, None] ** r - mu[None, :] ** r
    den = mu[:, None] - mu[None, :]
    tie = np.abs(den) <= LOEWNER_TIE * mu.max()
    mid = 0.5 * (mu[:, None] + mu[None, :])
    deriv = r * mid ** (r - 1.0)
    Y = np.where(tie, deriv, num / np.where(tie, 1.0, den))
    return 0.5 * (Y + Y.T)
