"""Cauchy-Schwarz type chains built on ``phi(s)``."""

from __future__ import annotations

import numpy as np

from ..errors import RangeError
from ..means import MeanTriple
from ..norms import NormKind
from .core import ChainBatch, CheckResult, Evaluator, t0
from .heron import single

__all__ = ["check_hiai_zhan", "check_cs_refinement"]


def s_domain(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise RangeError(f"s={s} must lie in [0, 1]", param="s")


def r_positive_domain(r: float) -> None:
    if not (r > 0 and np.isfinite(r)):
        raise RangeError(f"r={r} must be finite and positive", param="r")


def hiai_zhan_chain(ev: Evaluator, s: float, r: float) -> ChainBatch:
    geo = ev.abs_power("geo", r)
    ends = ev.abs_power("AX", r) * ev.abs_power("XB", r)
    return ChainBatch(
        ("||| |A^1/2 X B^1/2|^r |||^2", "phi(s)", "||| |AX|^r ||| ||| |XB|^r |||"),
        np.stack([geo * geo, ev.phi(s, r), ends], axis=-1),
    )


def check_hiai_zhan(t: MeanTriple, k: NormKind, s: float, r: float) -> CheckResult:
    """``phi`` lies between its midpoint value and its endpoint value."""
    s_domain(s)
    r_positive_domain(r)
    return single("check_hiai_zhan", hiai_zhan_chain(Evaluator(t, [k]), s, r), t, k, s=s, r=r)


def cs_chain(ev: Evaluator, s: float, r: float) -> ChainBatch:
    a = float(t0(s))
    lam = min(1 - 2 * a, 2 * a)
    p_s, p0, ph = ev.phi(s, r), ev.phi(0.0, r), ev.phi(0.5, r)
    refined = p_s + lam * ((ph + p0) / 2 - ev.phi(0.25, r))
    return ChainBatch(
        ("phi(s)", "phi(s)+lam_min*gap", "(1-2t0)phi(0)+2t0 phi(1/2)"),
        np.stack([p_s, refined, (1 - 2 * a) * p0 + 2 * a * ph], axis=-1),
    )


def check_cs_refinement(t: MeanTriple, k: NormKind, s: float, r: float) -> CheckResult:
    """Jensen-gap refinement of the upper Hiai-Zhan bound, interpolating ``phi(0)`` and ``phi(1/2)``."""
    s_domain(s)
    r_positive_domain(r)
    return single("check_cs_refinement", cs_chain(Evaluator(t, [k]), s, r), t, k, s=s, r=r)
