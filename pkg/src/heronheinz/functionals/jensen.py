"""Two-point Jensen functional bounds and the Hermite-Hadamard gap.

Both checkers take a :class:`ConvexHandle`: one of the shipped scalar
functions (``square``, ``abs``, ``exp``) or one of the library functionals
``F``, ``K`` bound to a triple and a norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import RangeError
from ..means import MeanTriple
from ..norms import NormKind
from ..quadrature import integrate
from .core import QUAD_TOL, ChainBatch, CheckResult, Evaluator, F_of, K_of

__all__ = [
    "JensenParams",
    "ConvexHandle",
    "SCALAR_FUNCTIONS",
    "convex_function",
    "functional_handle",
    "check_jensen_bounds",
    "check_hermite_hadamard_gap",
]

SCALAR_FUNCTIONS: dict[str, Callable] = {
    "square": lambda x: x * x,
    "abs": np.abs,
    "exp": np.exp,
}


@dataclass(frozen=True)
class JensenParams:
    lam: float
    x1: float
    x2: float

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise RangeError(f"lambda={self.lam} must lie in [0, 1]", param="lambda")
        if not (np.isfinite(self.x1) and np.isfinite(self.x2)):
            raise RangeError("x1 and x2 must be finite", param="x")

    @property
    def lam_min(self) -> float:
        return min(self.lam, 1.0 - self.lam)

    @property
    def lam_max(self) -> float:
        return max(self.lam, 1.0 - self.lam)


@dataclass(frozen=True)
class ConvexHandle:
    """A named convex function of one real variable."""

    name: str
    fn: Callable = field(repr=False, compare=False)

    def __call__(self, x):
        return self.fn(x)


def convex_function(name: str) -> ConvexHandle:
    try:
        return ConvexHandle(name, SCALAR_FUNCTIONS[name])
    except KeyError:
        raise RangeError(f"unknown convex function {name!r}; shipped: {sorted(SCALAR_FUNCTIONS)}") from None


def functional_handle(name: str, t: MeanTriple, k: NormKind) -> ConvexHandle:
    """``F`` or ``K`` of ``t`` in the norm ``k`` as a function of its exponent."""
    if name == "F":
        return ConvexHandle("F", lambda x: F_of(t, k, x))
    if name == "K":
        return ConvexHandle("K", lambda x: K_of(t, k, x))
    raise RangeError(f"unknown functional {name!r}")


def jensen_values(f, p: JensenParams) -> np.ndarray:
    """``(lower, Jensen functional, upper)`` stacked on a new last axis."""
    f1, f2 = f(p.x1), f(p.x2)
    gap = (f1 + f2) / 2 - f((p.x1 + p.x2) / 2)
    middle = p.lam * f1 + (1 - p.lam) * f2 - f(p.lam * p.x1 + (1 - p.lam) * p.x2)
    return np.stack(np.broadcast_arrays(2 * p.lam_min * gap, middle, 2 * p.lam_max * gap), axis=-1)


JENSEN_LABELS = ("2lam_min*gap", "lam f(x1)+(1-lam) f(x2)-f(lam x1+(1-lam) x2)", "2lam_max*gap")
HH_LABELS = ("gap/2", "(f(x1)+f(x2))/2 - mean of f", "3gap/2")


def check_jensen_bounds(f: ConvexHandle, p: JensenParams) -> CheckResult:
    """Two-sided bound on the normalised Jensen functional by the midpoint gap."""
    values = jensen_values(f, p)
    params = {"function": getattr(f, "name", "f"), "lambda": p.lam, "x1": p.x1, "x2": p.x2}
    return CheckResult.from_values("check_jensen_bounds", JENSEN_LABELS, values, params)


def hermite_hadamard_values(f, x1: float, x2: float, integral) -> np.ndarray:
    f1, f2 = f(x1), f(x2)
    gap = (f1 + f2) / 2 - f((x1 + x2) / 2)
    middle = (f1 + f2) / 2 - integral / (x2 - x1)
    return np.stack(np.broadcast_arrays(gap / 2, middle, 1.5 * gap), axis=-1)


def check_hermite_hadamard_gap(f: ConvexHandle, x1: float, x2: float) -> CheckResult:
    """``gap/2 <= (f(x1)+f(x2))/2 - mean(f) <= 3 gap/2`` with the mean by quadrature."""
    if not x1 < x2:
        raise RangeError(f"need x1 < x2, got {x1}, {x2}", param="x")
    integral = integrate(lambda x: float(f(x)), x1, x2, QUAD_TOL).value
    values = hermite_hadamard_values(f, x1, x2, integral)
    params = {"function": getattr(f, "name", "f"), "x1": x1, "x2": x2}
    return CheckResult.from_values("check_hermite_hadamard_gap", HH_LABELS, values, params)


def _ev_function(ev: Evaluator, name: str):
    if name == "F":
        return ev.F
    if name == "K":
        return ev.K
    raise RangeError(f"unknown functional {name!r}")


def jensen_chain(ev: Evaluator, name: str, p: JensenParams) -> ChainBatch:
    return ChainBatch(JENSEN_LABELS, jensen_values(_ev_function(ev, name), p))


def hermite_hadamard_chain(ev: Evaluator, name: str, x1: float, x2: float) -> ChainBatch:
    integral = ev.int_F(x1, x2) if name == "F" else ev.int_K(x1, x2)
    return ChainBatch(HH_LABELS, hermite_hadamard_values(_ev_function(ev, name), x1, x2, integral))
