"""Small dense real linear algebra built on numpy arrays.

Matrices are plain ``float64`` numpy arrays. The decompositions
(:func:`sym_eig`, :func:`svd`, :func:`singular_values`) and
:func:`matrix_power` also accept stacks of shape ``(..., n, n)`` and work on
every matrix of the stack at once; Jacobi rotations are applied to the whole
stack with per-matrix angles, and matrices that have already converged are
rotated by the exact identity so a stacked call returns the same bits as a
loop of single calls.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    NotPSDError,
    RangeError,
    SingularError,
    SymmetryError,
)

__all__ = [
    "SymEig",
    "SingularSpectrum",
    "as_matrix",
    "add",
    "scale",
    "matmul",
    "transpose",
    "identity",
    "sym_eig",
    "svd",
    "singular_values",
    "eig_power",
    "matrix_power",
    "schur_product",
    "determinant",
    "gaussian",
    "random_orthogonal",
    "random_spd",
    "is_psd",
    "symmetry_defect",
]

EIG_SWEEPS = 100
SVD_SWEEPS = 100
EIG_OFF_TOL = 1e-13
SVD_ORTH_TOL = 1e-15
SVD_NEGLIGIBLE = 1e-15
SYMMETRY_TOL = 1e-10
PSD_CLAMP = 1e-12


@dataclass(frozen=True)
class SymEig:
    """Spectral factors ``A = vectors @ diag(eigenvalues) @ vectors.T``.

    Eigenvalues are ascending along the last axis; eigenvectors are columns.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.eigenvalues[..., None, :]) @ np.swapaxes(self.vectors, -1, -2)


@dataclass(frozen=True)
class SingularSpectrum:
    """Singular values (descending) with left and right singular vectors."""

    values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.values[..., None, :]) @ np.swapaxes(self.right, -1, -2)


def as_matrix(X, *, square: bool = False, batch: bool = False, name: str = "matrix") -> np.ndarray:
    """Validate ``X`` as a finite real matrix (or stack of matrices when ``batch``)."""
    A = np.asarray(X, dtype=np.float64)
    if A.ndim < 2 or (not batch and A.ndim != 2):
        raise DimensionError(f"{name} must be 2-D, got shape {A.shape}")
    if A.shape[-1] < 1 or A.shape[-2] < 1:
        raise DimensionError(f"{name} must have at least one row and column")
    if square and A.shape[-1] != A.shape[-2]:
        raise DimensionError(f"{name} must be square, got shape {A.shape[-2:]}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} has non-finite entries")
    return A


def _same_shape(A, B):
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch: {A.shape} vs {B.shape}")
    return A, B


def add(A, B) -> np.ndarray:
    A, B = _same_shape(A, B)
    return A + B


def scale(c: float, A) -> np.ndarray:
    return float(c) * as_matrix(A)


def matmul(A, B) -> np.ndarray:
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def transpose(A) -> np.ndarray:
    return as_matrix(A).T.copy()


def identity(n: int) -> np.ndarray:
    return np.eye(n)


def symmetry_defect(A: np.ndarray) -> np.ndarray:
    """``||A - A^T||_F / max(1, ||A||_F)`` per matrix of the stack."""
    d = np.sqrt(np.sum((A - np.swapaxes(A, -1, -2)) ** 2, axis=(-2, -1)))
    return d / np.maximum(1.0, np.sqrt(np.sum(A * A, axis=(-2, -1))))


def _require_symmetric(A: np.ndarray, name: str = "matrix") -> np.ndarray:
    if np.any(symmetry_defect(A) > SYMMETRY_TOL):
        raise SymmetryError(f"{name} is not symmetric within {SYMMETRY_TOL:g}")
    return 0.5 * (A + np.swapaxes(A, -1, -2))


def _rotate_columns(M, p, q, c, s):
    mp = M[..., :, p].copy()
    mq = M[..., :, q]
    M[..., :, p] = c[..., None] * mp - s[..., None] * mq
    M[..., :, q] = s[..., None] * mp + c[..., None] * mq


def _jacobi_angle(app, aqq, apq, active):
    # Rotation zeroing apq of [[app, apq], [apq, aqq]]; identity where inactive.
    safe = np.where(active, apq, 1.0)
    with np.errstate(over="ignore"):
        # |theta| = inf only when apq is negligible; then t = 0
        theta = (aqq - app) / (2.0 * safe)
        sign = np.where(theta >= 0.0, 1.0, -1.0)
        t = sign / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    return t, c, t * c


def sym_eig(A) -> SymEig:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all ``(p, q)`` pairs in row order until the off-diagonal
    Frobenius mass drops below ``1e-13 * ||A||_F``.

    Raises
    ------
    SymmetryError
        If ``||A - A^T||_F > 1e-10 * max(1, ||A||_F)``.
    ConvergenceError
        If 100 sweeps do not reach the threshold.
    """
    A = as_matrix(A, square=True, batch=True)
    a = _require_symmetric(A).copy()
    n = a.shape[-1]
    batch = a.shape[:-2]
    V = np.broadcast_to(np.eye(n), a.shape).copy()
    scale_f = np.sqrt(np.sum(a * a, axis=(-2, -1)))
    offmask = ~np.eye(n, dtype=bool)

    def unconverged():
        off = np.sqrt(np.sum(np.where(offmask, a * a, 0.0), axis=(-2, -1)))
        return off >= EIG_OFF_TOL * scale_f

    todo = unconverged() & (scale_f > 0)
    sweeps = 0
    while np.any(todo):
        if sweeps >= EIG_SWEEPS:
            raise ConvergenceError(f"Jacobi eigensolver did not converge in {EIG_SWEEPS} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[..., p, q].copy()
                active = todo & (apq != 0.0)
                if not np.any(active):
                    continue
                app = a[..., p, p].copy()
                aqq = a[..., q, q].copy()
                t, c, s = _jacobi_angle(app, aqq, apq, active)
                _rotate_columns(a, p, q, c, s)
                a_rows = np.swapaxes(a, -1, -2)
                _rotate_columns(a_rows, p, q, c, s)
                _rotate_columns(V, p, q, c, s)
                a[..., p, p] = np.where(active, app - t * apq, app)
                a[..., q, q] = np.where(active, aqq + t * apq, aqq)
                a[..., p, q] = np.where(active, 0.0, apq)
                a[..., q, p] = a[..., p, q]
        sweeps += 1
        todo = todo & unconverged()

    w = np.diagonal(a, axis1=-2, axis2=-1).copy()
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    V = np.take_along_axis(V, order[..., None, :], axis=-1)
    if not batch:
        w, V = w.reshape(n), V.reshape(n, n)
    return SymEig(w, V)


def _one_sided_jacobi(G: np.ndarray, want_vectors: bool):
    """Orthogonalise the columns of a tall stack ``G`` in place."""
    n = G.shape[-1]
    V = np.broadcast_to(np.eye(n), G.shape[:-2] + (n, n)).copy() if want_vectors else None
    todo = np.ones(G.shape[:-2], dtype=bool)
    # columns below this squared norm are roundoff; rotating them never settles
    floor = (SVD_NEGLIGIBLE**2) * np.sum(G * G, axis=(-2, -1))
    for _ in range(SVD_SWEEPS):
        rotated = np.zeros(G.shape[:-2], dtype=bool)
        for i in range(n - 1):
            gi = G[..., :, i]
            alpha = np.sum(gi * gi, axis=-1)
            for j in range(i + 1, n):
                gi = G[..., :, i]
                gj = G[..., :, j]
                beta = np.sum(gj * gj, axis=-1)
                gamma = np.sum(gi * gj, axis=-1)
                active = todo & (np.abs(gamma) > SVD_ORTH_TOL * np.sqrt(alpha * beta))
                active &= (alpha > floor) & (beta > floor)
                if not np.any(active):
                    continue
                rotated |= active
                _, c, s = _jacobi_angle(alpha, beta, gamma, active)
                _rotate_columns(G, i, j, c, s)
                if V is not None:
                    _rotate_columns(V, i, j, c, s)
                gi = G[..., :, i]
                alpha = np.sum(gi * gi, axis=-1)
        todo = rotated
        if not np.any(todo):
            return V
    raise ConvergenceError(f"one-sided Jacobi SVD did not converge in {SVD_SWEEPS} sweeps")


def singular_values(X) -> np.ndarray:
    """Descending singular values, ``min(rows, cols)`` of them per matrix."""
    G = as_matrix(X, batch=True)
    if G.shape[-2] < G.shape[-1]:
        G = np.swapaxes(G, -1, -2)
    G = G.copy()
    _one_sided_jacobi(G, want_vectors=False)
    s = np.sqrt(np.sum(G * G, axis=-2))
    return -np.sort(-s, axis=-1)


def _complete_columns(U: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Replace the columns of ``U`` not flagged in ``keep`` by an orthonormal completion."""
    m, k = U.shape
    basis = [U[:, j] for j in range(k) if keep[j]]
    out = U.copy()
    candidates = iter(np.eye(m))
    for j in range(k):
        if keep[j]:
            continue
        for e in candidates:
            v = e.copy()
            for _ in range(2):
                for b in basis:
                    v -= (b @ v) * b
            nv = np.linalg.norm(v)
            if nv > 1e-8:
                v /= nv
                basis.append(v)
                out[:, j] = v
                break
    return out


def svd(X) -> SingularSpectrum:
    """Thin SVD by one-sided Jacobi on the columns of ``X``.

    ``left`` and ``right`` have ``min(rows, cols)`` orthonormal columns. Tiny
    singular values keep their computed value; only the corresponding left
    vectors are rebuilt, since normalising a near-zero column is unstable.
    """
    A = as_matrix(X)
    flip = A.shape[0] < A.shape[1]
    G = (A.T if flip else A).copy()
    V = _one_sided_jacobi(G, want_vectors=True)
    s = np.sqrt(np.sum(G * G, axis=0))
    order = np.argsort(-s, kind="stable")
    s, G, V = s[order], G[:, order], V[:, order]
    keep = s > 1e-13 * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    U = np.zeros_like(G)
    U[:, keep] = G[:, keep] / s[keep]
    if not np.all(keep):
        U = _complete_columns(U, keep)
    if flip:
        U, V = V, U
    return SingularSpectrum(s, U, V)


def eig_power(e: SymEig, t, *, what: str = "matrix") -> np.ndarray:
    """``Q diag(lambda**t) Q^T`` for an already-factored PSD matrix.

    ``t`` may be a scalar or an array broadcasting against the stack shape.
    Eigenvalues down to ``-1e-12 * lambda_max`` are clamped to zero for
    ``t >= 0``; negative powers require ``lambda_min > 1e-12 * lambda_max``.
    """
    w = e.eigenvalues
    t = np.asarray(t, dtype=np.float64)
    lmax = np.max(w, axis=-1)
    lmin = np.min(w, axis=-1)
    floor = PSD_CLAMP * np.maximum(lmax, 0.0)
    if np.any(lmin < -floor):
        raise NotPSDError(f"{what} has a negative eigenvalue beyond tolerance")
    if np.any((t < 0) & (lmin <= floor)):
        raise SingularError(f"negative power of a singular {what}")
    tt = t[..., None]
    wp = np.where(tt < 0, w, np.maximum(w, 0.0))
    with np.errstate(divide="ignore"):
        d = np.where(tt == 0, 1.0, wp**tt)
    return (e.vectors * d[..., None, :]) @ np.swapaxes(e.vectors, -1, -2)


def matrix_power(A, t) -> np.ndarray:
    """Real power of a symmetric PSD matrix via its spectral factors."""
    P = eig_power(sym_eig(A), t)
    return 0.5 * (P + np.swapaxes(P, -1, -2))


def schur_product(Y, Z) -> np.ndarray:
    Y, Z = _same_shape(Y, Z)
    return Y * Z


def determinant(A) -> float:
    """Determinant by LU factorisation with partial pivoting."""
    U = as_matrix(A, square=True).copy()
    n = U.shape[0]
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(U[k:, k])))
        if U[p, k] == 0.0:
            return 0.0
        if p != k:
            U[[k, p]] = U[[p, k]]
            det = -det
        det *= U[k, k]
        U[k + 1 :, k:] -= np.outer(U[k + 1 :, k] / U[k, k], U[k, k:])
    return float(det)


def gaussian(rng: np.random.Generator, size: int) -> np.ndarray:
    """Standard normal draws by the Box-Muller transform of uniform pairs."""
    pairs = (size + 1) // 2
    u = rng.random((pairs, 2))
    radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:size]


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Orthogonal factor of a Gaussian matrix, via modified Gram-Schmidt.

    Two orthogonalisation passes per column; signs follow a positive-diagonal
    R, which makes the factor Haar distributed.
    """
    G = gaussian(rng, n * n).reshape(n, n)
    Q = np.zeros((n, n))
    for j in range(n):
        v = G[:, j].copy()
        for _ in range(2):
            for i in range(j):
                v -= (Q[:, i] @ v) * Q[:, i]
        Q[:, j] = v / np.linalg.norm(v)
    return Q


def random_spd(n: int, m: float, M: float, seed: int) -> np.ndarray:
    """Seeded symmetric positive definite matrix with spectrum drawn from ``[m, M]``.

    The generator is numpy's PCG64 seeded with ``seed``; it first feeds the
    Gaussian matrix behind the orthogonal factor, then ``n`` uniform
    eigenvalues.
    """
    if not (np.isfinite(m) and np.isfinite(M)) or m <= 0 or M < m:
        raise RangeError(f"need 0 < m <= M, got m={m}, M={M}")
    if n < 1:
        raise RangeError(f"dimension must be positive, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    Q = random_orthogonal(n, rng)
    lam = m + (M - m) * rng.random(n)
    A = (Q * lam) @ Q.T
    return 0.5 * (A + A.T)


def is_psd(Y, tol: float = 1e-10):
    """True iff ``lambda_min(Y) >= -tol * max(1, lambda_max(Y))``.

    Works on stacks too, returning a boolean array.
    """
    w = sym_eig(Y).eigenvalues
    ok = w[..., 0] >= -tol * np.maximum(1.0, w[..., -1])
    return bool(ok) if np.ndim(ok) == 0 else ok
