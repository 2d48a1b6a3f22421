"""Adaptive Simpson quadrature.

:func:`integrate` is the usual scalar routine. :func:`integrate_lanes` runs
the same algorithm for many independent integrands ("lanes") at once: every
lane keeps its own subdivision, but all pending subintervals of one
refinement level are evaluated in a single vectorised call. A lane may be
vector valued (for example one value per norm); it is refined until every
component meets the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, RangeError

__all__ = ["QuadratureResult", "integrate", "integrate_lanes", "MAX_EVALUATIONS"]

MAX_EVALUATIONS = 1_000_000
MIN_DEPTH = 3


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


def integrate(f, a: float, b: float, tol: float = 1e-9) -> QuadratureResult:
    """Integrate the scalar function ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    An interval of width ``h`` is accepted once its Richardson estimate
    ``|S_left + S_right - S_whole| / 15`` is at most ``tol * h / (b - a)``,
    and the accepted value carries the Richardson correction.
    """

    def lanes_f(x, lanes):
        return np.array([float(f(float(xi))) for xi in x])

    values, errors, evals = integrate_lanes(lanes_f, a, b, 1, tol)
    return QuadratureResult(float(values[0]), float(errors[0]), int(evals[0]))


def _check(values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise DomainError("integrand returned a non-finite value")
    return values


def integrate_lanes(f, a: float, b: float, n_lanes: int, tol: float = 1e-9):
    """Integrate ``n_lanes`` integrands over ``[a, b]``.

    ``f(x, lanes)`` receives equally long arrays of abscissae and lane
    indices and returns values of shape ``(len(x),)`` or ``(len(x), k)``.

    Returns ``(values, error_estimates, evaluations)``, each indexed by lane
    (``values`` keeps the trailing component axis if ``f`` has one).
    """
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise RangeError(f"need finite a < b, got [{a}, {b}]")
    if not tol > 0:
        raise RangeError(f"tolerance must be positive, got {tol}")
    length = b - a

    lanes = np.arange(n_lanes)
    xs = np.array([a, (a + b) / 2.0, b])
    f0 = _check(np.asarray(f(np.repeat(xs, n_lanes), np.tile(lanes, 3)), dtype=np.float64))
    fa, fm, fb = f0[:n_lanes], f0[n_lanes : 2 * n_lanes], f0[2 * n_lanes :]
    evals = np.full(n_lanes, 3, dtype=np.int64)

    lo = np.full(n_lanes, float(a))
    hi = np.full(n_lanes, float(b))
    whole = (hi - lo).reshape((-1,) + (1,) * (fa.ndim - 1)) / 6.0 * (fa + 4.0 * fm + fb)
    total = np.zeros_like(whole)
    err_total = np.zeros(n_lanes)
    depth = 0

    while lanes.size:
        mid = (lo + hi) / 2.0
        xl, xr = (lo + mid) / 2.0, (mid + hi) / 2.0
        m = lanes.size
        fv = _check(np.asarray(f(np.concatenate([xl, xr]), np.concatenate([lanes, lanes])), dtype=np.float64))
        fl, fr = fv[:m], fv[m:]
        np.add.at(evals, lanes, 2)
        if np.any(evals > MAX_EVALUATIONS):
            raise ConvergenceError(f"quadrature exceeded {MAX_EVALUATIONS} evaluations")

        h = (hi - lo).reshape((-1,) + (1,) * (fa.ndim - 1))
        left = h / 12.0 * (fa + 4.0 * fl + fm)
        right = h / 12.0 * (fm + 4.0 * fr + fb)
        delta = left + right - whole
        err = np.abs(delta).reshape(m, -1).max(axis=1) / 15.0
        done = err <= tol * (hi - lo) / length
        if depth < MIN_DEPTH:
            done[:] = False

        if np.any(done):
            np.add.at(total, lanes[done], (left + right + delta / 15.0)[done])
            np.add.at(err_total, lanes[done], err[done])

        keep = ~done
        lanes = np.concatenate([lanes[keep], lanes[keep]])
        lo, hi = np.concatenate([lo[keep], mid[keep]]), np.concatenate([mid[keep], hi[keep]])
        fa, fm, fb = (
            np.concatenate([fa[keep], fm[keep]]),
            np.concatenate([fl[keep], fr[keep]]),
            np.concatenate([fm[keep], fb[keep]]),
        )
        whole = np.concatenate([left[keep], right[keep]])
        depth += 1

    return total, err_total, evals
