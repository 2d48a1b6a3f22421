"""Chains for the difference functional ``K(nu) = |||A^nu X B^(1-nu) - A^(1-nu) X B^nu|||``."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError, NotPSDError, RangeError
from ..linalg import as_matrix, eig_power, is_psd, singular_values, sym_eig
from ..means import MeanTriple
from ..norms import NormKind, ui_norm
from .core import ChainBatch, CheckResult, Evaluator, r0, tolerance
from .heron import nu_quarter_domain, single, unit_nu_domain

__all__ = [
    "check_t2",
    "check_t2_integral",
    "check_heinz_diff_classical",
    "check_gen_diff",
    "check_power_diff",
    "check_reverse_heinz",
    "check_convexity_extension",
    "check_corollary_sum",
    "check_t3",
    "check_t4",
    "check_schur_norm_bound",
]


def t2_chain(ev: Evaluator, nu: float) -> ChainBatch:
    return ChainBatch(("K(nu)", "2(1-2r0)K(1/4)"), np.stack([ev.K(nu), 2 * (1 - 2 * r0(nu)) * ev.K(0.25)], axis=-1))


def check_t2(t: MeanTriple, k: NormKind, nu: float) -> CheckResult:
    """``K(nu) <= 2(1-2r0) K(1/4)`` on ``[1/4, 3/4]``."""
    nu_quarter_domain(nu)
    return single("check_t2", t2_chain(Evaluator(t, [k]), nu), t, k, nu=nu)


def t2_integral_chain(ev: Evaluator) -> ChainBatch:
    q = ev.K(0.25)
    return ChainBatch(("int K", "K(1/4)/4", "K(1)/8"), np.stack([ev.int_K(), q / 4, ev.K(1.0) / 8], axis=-1))


def check_t2_integral(t: MeanTriple, k: NormKind) -> CheckResult:
    """``int_{1/4}^{3/4} K <= K(1/4)/4 <= K(1)/8``."""
    return single("check_t2_integral", t2_integral_chain(Evaluator(t, [k])), t, k)


def classical_chain(ev: Evaluator, nu: float) -> ChainBatch:
    return ChainBatch(("K(nu)", "|2nu-1| |||AX-XB|||"), np.stack([ev.K(nu), abs(2 * nu - 1) * ev.commutator()], axis=-1))


def check_heinz_diff_classical(t: MeanTriple, k: NormKind, nu: float) -> CheckResult:
    """``K(nu) <= |2nu-1| |||AX - XB|||`` for ``nu`` in ``[0, 1]``."""
    unit_nu_domain(nu)
    return single("check_heinz_diff_classical", classical_chain(Evaluator(t, [k]), nu), t, k, nu=nu)


def gen_diff_domain(alpha: float, nu: float) -> None:
    if not (alpha >= 1 and np.isfinite(alpha)):
        raise RangeError(f"alpha={alpha} must be finite and >= 1", param="alpha")
    if not (1 - alpha) / 2 <= nu <= (1 + alpha) / 2:
        raise RangeError(f"nu={nu} must lie in [(1-alpha)/2, (1+alpha)/2] for alpha={alpha}", param="nu")


def gen_diff_chain(ev: Evaluator, alpha: float, nu: float) -> ChainBatch:
    t = ev.triple
    diff = ev._memo(("A^aX-XB^a", float(alpha)), lambda: ev.norms(t.power_A(alpha) @ t.X - t.X @ t.power_B(alpha)))
    rhs = abs(2 * nu - 1) * ev.op_norm_power(1.0 - alpha) * diff
    return ChainBatch(
        ("alpha K(nu)", "|2nu-1| max(||A^(1-alpha)||,||B^(1-alpha)||) |||A^alpha X - X B^alpha|||"),
        np.stack([alpha * ev.K(nu), rhs], axis=-1),
    )


def check_gen_diff(t: MeanTriple, k: NormKind, alpha: float, nu: float) -> CheckResult:
    """Difference-Heinz bound through ``A^alpha X - X B^alpha`` for ``alpha >= 1``."""
    gen_diff_domain(alpha, nu)
    return single("check_gen_diff", gen_diff_chain(Evaluator(t, [k]), alpha, nu), t, k, alpha=alpha, nu=nu)


def power_domain(r: float) -> None:
    if not 0 < r <= 1:
        raise RangeError(f"r={r} must lie in (0, 1]", param="r")


class Dilation:
    """Block form ``C = A (+) B`` with ``Y = [[0, X], [0, 0]]``.

    Then ``C^r Y - Y C^r`` carries ``A^r X - X B^r`` in its corner, which turns
    the two-matrix statement into a one-matrix one.
    """

    def __init__(self, t: MeanTriple):
        A, B, X = t.A, t.B, t.X
        n = t.n
        lead = A.shape[:-2]
        zero = np.zeros(lead + (n, n))
        self.C = np.block([[A, zero], [zero, B]])
        self.Y = np.block([[zero, X], [zero, zero]])
        self.eig = sym_eig(self.C)

    def power(self, r: float) -> np.ndarray:
        return eig_power(self.eig, r, what="A (+) B")


def _dilation(ev: Evaluator) -> Dilation:
    return ev._memo(("dilation",), lambda: Dilation(ev.triple))


def power_diff_chain(ev: Evaluator, r: float) -> ChainBatch:
    d = _dilation(ev)
    Cr = d.power(r)
    lhs = ev.norms(Cr @ d.Y - d.Y @ Cr)
    base = ev._memo(("CY-YC",), lambda: ev.norms(d.C @ d.Y - d.Y @ d.C))
    op = ev._memo(("op-dil", float(r)), lambda: singular_values(d.power(r - 1.0))[..., :1])
    return ChainBatch(("|||A^r X - X B^r|||", "r max(||A^(r-1)||,||B^(r-1)||) |||AX-XB|||"), np.stack([lhs, r * op * base], axis=-1))


def check_power_diff(t: MeanTriple, k: NormKind, r: float) -> CheckResult:
    """``|||A^r X - X B^r||| <= r max(||A^(r-1)||, ||B^(r-1)||) |||AX - XB|||`` for ``0 < r <= 1``."""
    power_domain(r)
    return single("check_power_diff", power_diff_chain(Evaluator(t, [k]), r), t, k, r=r)


def reverse_domain(nu: float) -> None:
    if 0.0 <= nu <= 1.0 or not np.isfinite(nu):
        raise RangeError(f"nu={nu} must be finite and outside [0, 1]", param="nu")


def reverse_chain(ev: Evaluator, nu: float) -> ChainBatch:
    return ChainBatch(("|2nu-1| |||AX-XB|||", "K(nu)"), np.stack([abs(2 * nu - 1) * ev.commutator(), ev.K(nu)], axis=-1))


def check_reverse_heinz(t: MeanTriple, k: NormKind, nu: float) -> CheckResult:
    """``|2nu-1| |||AX - XB||| <= K(nu)`` for ``nu`` outside ``[0, 1]``."""
    reverse_domain(nu)
    return single("check_reverse_heinz", reverse_chain(Evaluator(t, [k]), nu), t, k, nu=nu)


def convexity_domain(grid) -> None:
    g = np.asarray(grid, dtype=np.float64)
    if g.ndim != 1 or g.size < 2 or not np.all(np.isfinite(g)) or np.any(np.diff(g) <= 0):
        raise RangeError("grid must be a strictly increasing sequence of at least two finite points", param="grid")


def convexity_chain(ev: Evaluator, grid) -> ChainBatch:
    """Worst midpoint test ``K((a+b)/2) <= (K(a)+K(b))/2`` over consecutive grid pairs."""
    g = np.asarray(grid, dtype=np.float64)
    pairs = []
    for a, b in zip(g[:-1], g[1:]):
        pairs.append(np.stack([ev.K((a + b) / 2), (ev.K(a) + ev.K(b)) / 2], axis=-1))
    cand = np.stack(pairs)  # (pairs, L, K, 2)
    rel = (cand[..., 1] - cand[..., 0]) / tolerance(cand)
    worst = np.argmin(rel, axis=0)
    values = np.take_along_axis(cand, worst[None, ..., None], axis=0)[0]
    return ChainBatch(
        ("K((a+b)/2)", "(K(a)+K(b))/2"), values, extra={"a": g[:-1][worst], "b": g[1:][worst]}
    )


def check_convexity_extension(t: MeanTriple, k: NormKind, grid) -> CheckResult:
    """Midpoint convexity of ``K`` on every consecutive pair of ``grid``; reports the tightest pair."""
    convexity_domain(grid)
    return single("check_convexity_extension", convexity_chain(Evaluator(t, [k]), grid), t, k, grid=list(grid))


BRANCHES = ("nonneg", "le_minus_one")


def corollary_domain(nu: float, N: int, branch: str) -> None:
    if branch not in BRANCHES:
        raise RangeError(f"branch must be one of {BRANCHES}, got {branch!r}", param="branch")
    if int(N) != N or N < 1:
        raise RangeError(f"N={N} must be a positive integer", param="N")
    if branch == "nonneg" and not nu >= 0:
        raise RangeError(f"nu={nu} must be >= 0 on the nonneg branch", param="nu")
    if branch == "le_minus_one" and not nu <= -1:
        raise RangeError(f"nu={nu} must be <= -1 on the le_minus_one branch", param="nu")
    if not np.isfinite(nu):
        raise RangeError("nu must be finite", param="nu")


def branch_for(nu: float) -> str:
    if nu >= 0:
        return "nonneg"
    if nu <= -1:
        return "le_minus_one"
    raise RangeError(f"nu={nu} falls in (-1, 0), where neither branch applies", param="nu")


def corollary_chain(ev: Evaluator, nu: float, N: int, branch: str) -> ChainBatch:
    N = int(N)
    total = np.zeros_like(ev.K(0.0))
    if branch == "nonneg":
        for j in range(1, N + 1):
            total = total + 2.0**j * nu * ((ev.K(0.0) + ev.K(2.0 ** (1 - j))) / 2 - ev.K(2.0**-j))
        lhs = ev.K(0.0) + total
    else:
        for j in range(1, N + 1):
            total = total + 2.0**j * (1 + nu) * ((ev.K(1.0) + ev.K(1 - 2.0 ** (1 - j))) / 2 - ev.K(1 - 2.0**-j))
        lhs = ev.K(0.0) - total
    return ChainBatch(("K(0) + sum of dyadic Jensen gaps", "K(-nu)"), np.stack([lhs, ev.K(-nu)], axis=-1))


def check_corollary_sum(t: MeanTriple, k: NormKind, nu: float, N: int, branch: str) -> CheckResult:
    """Lower bounds for ``K(-nu)`` from dyadic Jensen gaps of ``K`` near 0 (or 1)."""
    corollary_domain(nu, N, branch)
    return single("check_corollary_sum", corollary_chain(Evaluator(t, [k]), nu, N, branch), t, k, nu=nu, N=N, branch=branch)


def jensen_gap_K(ev: Evaluator) -> np.ndarray:
    return ev.K(0.25) / 2 - ev.K(0.375)


def t3_chain(ev: Evaluator, nu: float) -> ChainBatch:
    a = r0(nu)
    lam = min(2 - 4 * a, 4 * a - 1)
    k_nu = ev.K(nu)
    return ChainBatch(
        ("K(nu)", "K(nu)+2lam_min(K(1/4)/2-K(3/8))", "2(1-2r0)K(1/4)"),
        np.stack([k_nu, k_nu + 2 * lam * jensen_gap_K(ev), 2 * (1 - 2 * a) * ev.K(0.25)], axis=-1),
    )


def check_t3(t: MeanTriple, k: NormKind, nu: float) -> CheckResult:
    """Jensen-gap refinement of :func:`check_t2`."""
    nu_quarter_domain(nu)
    return single("check_t3", t3_chain(Evaluator(t, [k]), nu), t, k, nu=nu)


def t4_chain(ev: Evaluator) -> ChainBatch:
    q = ev.K(0.25)
    return ChainBatch(
        ("int K", "K(1/4)/8+K(3/8)/4", "K(1/4)/4"),
        np.stack([ev.int_K(), q / 8 + ev.K(0.375) / 4, q / 4], axis=-1),
    )


def check_t4(t: MeanTriple, k: NormKind) -> CheckResult:
    """``int_{1/4}^{3/4} K <= K(1/4)/8 + K(3/8)/4 <= K(1/4)/4``."""
    return single("check_t4", t4_chain(Evaluator(t, [k])), t, k)


def schur_chain(Y: np.ndarray, Z: np.ndarray, kinds) -> ChainBatch:
    """``|||Y o Z||| <= max_i y_ii |||Z|||`` for stacks of PSD ``Y``."""
    lhs = np.stack([ui_norm(Y * Z, k) for k in kinds], axis=-1)
    rhs = np.stack([ui_norm(Z, k) for k in kinds], axis=-1)
    diag = np.max(np.diagonal(Y, axis1=-2, axis2=-1), axis=-1)[..., None]
    return ChainBatch(("|||Y o Z|||", "max y_ii |||Z|||"), np.stack([lhs, diag * rhs], axis=-1).reshape(-1, len(kinds), 2))


def check_schur_norm_bound(Y, Z, k: NormKind) -> CheckResult:
    """Schur multiplication by a PSD matrix is bounded by its largest diagonal entry."""
    Y = as_matrix(Y, square=True, name="Y")
    Z = as_matrix(Z, name="Z")
    if Y.shape != Z.shape:
        raise DimensionError(f"Y and Z must have equal shapes, got {Y.shape} and {Z.shape}")
    if not is_psd(Y, 1e-10):
        raise NotPSDError("Y must be positive semidefinite")
    return schur_chain(Y, Z, [k]).result(0, 0, "check_schur_norm_bound", {"norm": str(k), "dim": Y.shape[0]})
