"""Chains comparing the Heinz functional F with the Heron functional G."""

from __future__ import annotations

import numpy as np

from ..errors import RangeError, SpectrumBoundsError
from ..means import MeanTriple
from ..norms import NormKind
from .core import ChainBatch, CheckResult, Evaluator, r0, r2

__all__ = [
    "check_t1",
    "check_t1_integral",
    "check_t20",
    "check_kantorovich_s2",
    "check_conde",
    "check_integral_refinement",
    "nu_quarter_domain",
    "alpha_half_domain",
]

SPECTRUM_SLACK = 1e-9


def nu_quarter_domain(nu: float) -> None:
    if not 0.25 <= nu <= 0.75:
        raise RangeError(f"nu={nu} must lie in [1/4, 3/4]", param="nu")


def alpha_half_domain(alpha: float) -> None:
    if not (alpha >= 0.5 and np.isfinite(alpha)):
        raise RangeError(f"alpha={alpha} must be finite and >= 1/2", param="alpha")


def unit_nu_domain(nu: float) -> None:
    if not 0.0 <= nu <= 1.0:
        raise RangeError(f"nu={nu} must lie in [0, 1]", param="nu")


def single(name: str, chain: ChainBatch, t: MeanTriple, k: NormKind | None, **params) -> CheckResult:
    params = dict(params)
    if k is not None:
        params["norm"] = str(k)
    params["dim"] = t.n
    return chain.result(0, 0, name, params)


def t1_chain(ev: Evaluator, nu: float, alpha: float) -> ChainBatch:
    r = r0(nu)
    g = ev.G(alpha)
    mid = (4 * r - 1) * ev.F(0.5) + 2 * (1 - 2 * r) * g
    return ChainBatch(("F(nu)", "(4r0-1)F(1/2)+2(1-2r0)G(alpha)", "G(alpha)"), np.stack([ev.F(nu), mid, g], axis=-1))


def check_t1(t: MeanTriple, k: NormKind, nu: float, alpha: float) -> CheckResult:
    """``F(nu) <= (4r0-1) F(1/2) + 2(1-2r0) G(alpha) <= G(alpha)``."""
    nu_quarter_domain(nu)
    alpha_half_domain(alpha)
    return single("check_t1", t1_chain(Evaluator(t, [k]), nu, alpha), t, k, nu=nu, alpha=alpha)


def t1_integral_chain(ev: Evaluator, alpha: float) -> ChainBatch:
    f_half = ev.F(0.5)
    lhs = f_half + 2 * (2 * ev.int_F() - f_half)
    return ChainBatch(("F(1/2)+2(2*int F-F(1/2))", "G(alpha)"), np.stack([lhs, ev.G(alpha)], axis=-1))


def check_t1_integral(t: MeanTriple, k: NormKind, alpha: float) -> CheckResult:
    """``F(1/2) + 2 (2 int_{1/4}^{3/4} F - F(1/2)) <= G(alpha)``."""
    alpha_half_domain(alpha)
    return single("check_t1_integral", t1_integral_chain(Evaluator(t, [k]), alpha), t, k, alpha=alpha)


def t20_chain(ev: Evaluator, nu: float, alpha: float) -> ChainBatch:
    a, b = r0(nu), r2(nu)
    f_half, g = ev.F(0.5), ev.G(alpha)
    l1 = (4 * a - 1) * f_half + 2 * (1 - 2 * a) * g
    l2 = 2 * b * f_half + (1 - 2 * b) * g
    return ChainBatch(("(4r0-1)F(1/2)+2(1-2r0)G(alpha)", "2r2 F(1/2)+(1-2r2)G(alpha)"), np.stack([l1, l2], axis=-1))


def check_t20(t: MeanTriple, k: NormKind, nu: float, alpha: float) -> CheckResult:
    """The ``r0`` interpolation is dominated by the ``r2`` one."""
    nu_quarter_domain(nu)
    alpha_half_domain(alpha)
    return single("check_t20", t20_chain(Evaluator(t, [k]), nu, alpha), t, k, nu=nu, alpha=alpha)


def spectrum_bounds(t: MeanTriple, m: float, M: float) -> None:
    """Raise unless every eigenvalue of ``A`` and ``B`` lies in ``[m, M]``."""
    if not 0 < m <= M:
        raise RangeError(f"need 0 < m <= M, got m={m}, M={M}", param="spectrum_bounds")
    slack = SPECTRUM_SLACK * max(1.0, M)
    for name, e in (("A", t.eig_A), ("B", t.eig_B)):
        w = e.eigenvalues
        if np.any(w[..., 0] < m - slack) or np.any(w[..., -1] > M + slack):
            raise SpectrumBoundsError(f"spectrum of {name} is not inside [{m}, {M}]")


def kantorovich_chain(ev: Evaluator, nu: float, m: float, M: float) -> ChainBatch:
    # ev must carry exactly the Schatten-2 norm
    factor = (m + M) / (2.0 * np.sqrt(m * M))
    rhs = factor ** (1.0 - nu) * ev.G(nu)
    return ChainBatch(("||(A^nu X B^(1-nu)+A^(1-nu) X B^nu)/2||_2", "kappa^(1-nu)*G_2(nu)"), np.stack([ev.F(nu), rhs], axis=-1))


def check_kantorovich_s2(t: MeanTriple, nu: float, m: float, M: float) -> CheckResult:
    """Heinz-to-Heron comparison in the Frobenius norm with the Kantorovich factor.

    Raises :class:`SpectrumBoundsError` when ``[m, M]`` does not contain the
    spectra of ``A`` and ``B``.
    """
    unit_nu_domain(nu)
    spectrum_bounds(t, m, M)
    k = NormKind.schatten(2)
    return single("check_kantorovich_s2", kantorovich_chain(Evaluator(t, [k]), nu, m, M), t, k, nu=nu, m=m, M=M)


def jensen_gap_F(ev: Evaluator) -> np.ndarray:
    return (ev.F(0.25) + ev.F(0.5)) / 2 - ev.F(0.375)


def conde_chain(ev: Evaluator, nu: float, alpha: float) -> ChainBatch:
    a = r0(nu)
    lam = min(2 - 4 * a, 4 * a - 1)
    f_nu, g = ev.F(nu), ev.G(alpha)
    refined = f_nu + 2 * lam * jensen_gap_F(ev)
    bound = (4 * a - 1) * ev.F(0.5) + 2 * (1 - 2 * a) * g
    return ChainBatch(
        ("F(nu)", "F(nu)+2lam_min*gap", "(4r0-1)F(1/2)+2(1-2r0)G(alpha)", "G(alpha)"),
        np.stack([f_nu, refined, bound, g], axis=-1),
    )


def check_conde(t: MeanTriple, k: NormKind, nu: float, alpha: float) -> CheckResult:
    """Jensen-gap refinement of :func:`check_t1`."""
    nu_quarter_domain(nu)
    alpha_half_domain(alpha)
    return single("check_conde", conde_chain(Evaluator(t, [k]), nu, alpha), t, k, nu=nu, alpha=alpha)


def integral_refinement_chain(ev: Evaluator, alpha: float) -> ChainBatch:
    f_half = ev.F(0.5)
    lhs = f_half + jensen_gap_F(ev) + 2 * (2 * ev.int_F() - f_half)
    return ChainBatch(("F(1/2)+gap+2(2*int F-F(1/2))", "G(alpha)"), np.stack([lhs, ev.G(alpha)], axis=-1))


def check_integral_refinement(t: MeanTriple, k: NormKind, alpha: float) -> CheckResult:
    """Jensen-gap refinement of :func:`check_t1_integral`."""
    alpha_half_domain(alpha)
    return single("check_integral_refinement", integral_refinement_chain(Evaluator(t, [k]), alpha), t, k, alpha=alpha)
