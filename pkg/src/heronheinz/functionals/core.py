"""The norm functionals F, G, K, phi and the result type shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import RangeError
from ..linalg import singular_values
from ..means import MeanTriple, heinz_matrix_diff, heinz_matrix_sum, heron_matrix
from ..norms import NormKind, gauge, ui_norm, ui_norm_abs_power
from ..quadrature import integrate_lanes

__all__ = [
    "TAU",
    "QUAD_TOL",
    "CheckResult",
    "ChainBatch",
    "Evaluator",
    "F_of",
    "G_of",
    "K_of",
    "phi_of",
    "r0",
    "r2",
    "t0",
    "tolerance",
]

TAU = 1e-8
QUAD_TOL = 1e-9


def r0(nu):
    return np.minimum(nu, 1.0 - nu)


def r2(nu):
    return np.minimum(np.minimum(2.0 * nu - 0.5, np.abs(1.0 - 2.0 * nu)), 1.5 - 2.0 * nu)


def t0(t):
    return np.minimum(t, 1.0 - t)


def tolerance(chain, scale: float = 1.0):
    """``tau = 1e-8 * max(1, max |chain|)``, taken over the last axis."""
    return scale * TAU * np.maximum(1.0, np.max(np.abs(chain), axis=-1))


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, NormKind):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


@dataclass(frozen=True)
class CheckResult:
    """One evaluated inequality chain ``chain[0] <= chain[1] <= ...``.

    ``margins[i] = chain[i+1] - chain[i]``; the chain passes when every
    margin is at least ``-tau``.
    """

    name: str
    chain: tuple[tuple[str, float], ...]
    margins: tuple[float, ...]
    passed: bool
    params: dict = field(default_factory=dict)
    tau: float = 0.0

    @classmethod
    def from_values(cls, name, labels, values, params=None, tolerance_scale: float = 1.0) -> "CheckResult":
        values = [float(v) for v in values]
        if len(labels) != len(values) or len(values) < 2:
            raise ValueError("a chain needs at least two labelled values")
        margins = tuple(b - a for a, b in zip(values, values[1:]))
        tau = float(tolerance(np.asarray(values), tolerance_scale))
        return cls(
            name=name,
            chain=tuple(zip(labels, values)),
            margins=margins,
            passed=all(m >= -tau for m in margins),
            params={k: _plain(v) for k, v in (params or {}).items()},
            tau=tau,
        )

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.chain)

    @property
    def worst_margin(self) -> float:
        return min(self.margins)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "chain": [{"label": lab, "value": v} for lab, v in self.chain],
            "margins": list(self.margins),
            "passed": self.passed,
            "tau": self.tau,
            "params": self.params,
        }


@dataclass
class ChainBatch:
    """The same chain evaluated for ``L`` triples and ``K`` norms.

    ``values`` has shape ``(L, K, len(labels))``. ``extra`` holds per-case
    parameters (shape ``(L, K)``) that vary across the batch.
    """

    labels: tuple[str, ...]
    values: np.ndarray
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 3 or self.values.shape[-1] != len(self.labels):
            raise ValueError(f"chain values of shape {self.values.shape} do not match {len(self.labels)} labels")

    @property
    def margins(self) -> np.ndarray:
        return np.diff(self.values, axis=-1)

    def scale(self) -> np.ndarray:
        return np.maximum(1.0, np.max(np.abs(self.values), axis=-1))

    def passed(self, tolerance_scale: float = 1.0) -> np.ndarray:
        tau = tolerance(self.values, tolerance_scale)
        return np.all(self.margins >= -tau[..., None], axis=-1)

    def result(self, i: int, k: int, name: str, params=None, tolerance_scale: float = 1.0) -> CheckResult:
        params = dict(params or {})
        for key, arr in self.extra.items():
            params[key] = arr[i, k]
        return CheckResult.from_values(name, self.labels, self.values[i, k], params, tolerance_scale)


def _scalar_lanes(v, L: int) -> np.ndarray:
    """Broadcast a value computed per triple to shape ``(L, 1)``."""
    return np.broadcast_to(np.asarray(v, dtype=np.float64).reshape(-1, 1), (L, 1))


class Evaluator:
    """Memoised F, G, K and phi for a stack of triples and a list of norms.

    Every functional returns an array of shape ``(L, K)``, one row per
    triple and one column per norm; singular values of a given expression
    are computed once and shared by all norms.
    """

    def __init__(self, triple: MeanTriple, kinds, quad_tol: float = QUAD_TOL):
        if not triple.batched:
            triple = MeanTriple(triple.A[None], triple.B[None], triple.X[None])
        self.triple = triple
        self.kinds = tuple(kinds)
        self.quad_tol = quad_tol
        self._cache: dict = {}

    @property
    def L(self) -> int:
        return len(self.triple)

    def gauges(self, s: np.ndarray) -> np.ndarray:
        return np.stack([gauge(s, k) for k in self.kinds], axis=-1)

    def norms(self, M: np.ndarray, r: float = 1.0) -> np.ndarray:
        s = singular_values(M)
        return self.gauges(s if r == 1.0 else s**r)

    def _memo(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def F(self, nu: float) -> np.ndarray:
        nu = float(nu)
        return self._memo(("F", nu), lambda: 0.5 * self.norms(heinz_matrix_sum(self.triple, nu)))

    def G(self, alpha: float) -> np.ndarray:
        alpha = float(alpha)
        return self._memo(("G", alpha), lambda: self.norms(heron_matrix(self.triple, alpha)))

    def K(self, nu: float) -> np.ndarray:
        nu = float(nu)
        return self._memo(("K", nu), lambda: self.norms(heinz_matrix_diff(self.triple, nu)))

    def _factor_sv(self, s: float) -> np.ndarray:
        # singular values of A^s X B^(1-s); the other factor of phi(s) is this at 1 - s
        t = self.triple
        return self._memo(("sv", s), lambda: singular_values(t.power_A(s) @ t.X @ t.power_B(1.0 - s)))

    def phi(self, s: float, r: float) -> np.ndarray:
        s, r = float(s), float(r)

        def compute():
            return self.gauges(self._factor_sv(s) ** r) * self.gauges(self._factor_sv(1.0 - s) ** r)

        return self._memo(("phi", s, r), compute)

    def commutator(self) -> np.ndarray:
        """``|||AX - XB|||``."""
        t = self.triple
        return self._memo(("AX-XB",), lambda: self.norms(t.A @ t.X - t.X @ t.B))

    def abs_power(self, which: str, r: float) -> np.ndarray:
        """``||| |M|^r |||`` for ``M`` one of ``AX``, ``XB`` or ``A^1/2 X B^1/2``."""
        t = self.triple

        def compute():
            if which == "AX":
                M = t.A @ t.X
            elif which == "XB":
                M = t.X @ t.B
            elif which == "geo":
                M = t.power_A(0.5) @ t.X @ t.power_B(0.5)
            else:
                raise ValueError(which)
            return self.norms(M, r)

        return self._memo(("abs", which, float(r)), compute)

    def op_norm_power(self, p: float) -> np.ndarray:
        """``max(||A^p||, ||B^p||)`` in the operator norm, shape ``(L, 1)``."""
        t = self.triple

        def compute():
            a = singular_values(t.power_A(p))[..., 0]
            b = singular_values(t.power_B(p))[..., 0]
            return _scalar_lanes(np.maximum(a, b), self.L)

        return self._memo(("op", float(p)), compute)

    def _integral(self, name, fn, a, b):
        t = self.triple

        def f(x, lanes):
            return fn(t.take(lanes), x)

        def compute():
            values, _, _ = integrate_lanes(f, a, b, self.L, self.quad_tol)
            return values

        return self._memo(("int", name, float(a), float(b)), compute)

    def int_F(self, a: float = 0.25, b: float = 0.75) -> np.ndarray:
        return self._integral("F", lambda sub, x: 0.5 * self.norms(heinz_matrix_sum(sub, x)), a, b)

    def int_K(self, a: float = 0.25, b: float = 0.75) -> np.ndarray:
        return self._integral("K", lambda sub, x: self.norms(heinz_matrix_diff(sub, x)), a, b)


def _one(t: MeanTriple):
    if t.batched:
        raise RangeError("pass a single triple; use Evaluator for stacks")
    return t


def F_of(t: MeanTriple, k: NormKind, nu: float) -> float:
    """``F(nu) = |||A^nu X B^(1-nu) + A^(1-nu) X B^nu||| / 2``."""
    return float(0.5 * ui_norm(heinz_matrix_sum(_one(t), nu), k))


def G_of(t: MeanTriple, k: NormKind, alpha: float) -> float:
    """``G(alpha) = |||(1-alpha) A^1/2 X B^1/2 + alpha (AX + XB)/2|||``."""
    return float(ui_norm(heron_matrix(_one(t), alpha), k))


def K_of(t: MeanTriple, k: NormKind, nu: float) -> float:
    """``K(nu) = |||A^nu X B^(1-nu) - A^(1-nu) X B^nu|||``."""
    return float(ui_norm(heinz_matrix_diff(_one(t), nu), k))


def phi_of(t: MeanTriple, k: NormKind, s: float, r: float) -> float:
    """``phi(s) = ||| |A^s X B^(1-s)|^r ||| * ||| |A^(1-s) X B^s|^r |||``."""
    t = _one(t)
    left = t.power_A(s) @ t.X @ t.power_B(1.0 - s)
    right = t.power_A(1.0 - s) @ t.X @ t.power_B(s)
    return float(ui_norm_abs_power(left, r, k) * ui_norm_abs_power(right, r, k))
