"""CSV sweeps of a single functional over a parameter grid."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from ..means import MeanTriple
from ..norms import NormKind
from ..functionals.core import Evaluator

__all__ = ["FUNCTIONALS", "sweep_values", "emit_sweep"]

FUNCTIONALS = ("F", "G", "K", "phi")


def _validate(functional: str, grid, r: float) -> np.ndarray:
    if functional not in FUNCTIONALS:
        raise ConfigError(f"functional must be one of {FUNCTIONALS}, got {functional!r}", param="functional")
    g = np.asarray(list(grid), dtype=np.float64)
    if g.ndim != 1 or g.size == 0 or not np.all(np.isfinite(g)):
        raise ConfigError("grid must be a non-empty list of finite numbers", param="grid")
    if functional == "phi":
        if np.any((g < 0) | (g > 1)):
            raise ConfigError("phi is swept over s in [0, 1]", param="grid")
        if not (r > 0 and np.isfinite(r)):
            raise ConfigError(f"r={r} must be finite and positive", param="r")
    return g


def sweep_values(t: MeanTriple, k: NormKind, functional: str, grid, r: float = 1.0) -> np.ndarray:
    """Values of ``F``, ``G``, ``K`` or ``phi`` (with exponent ``r``) at each grid point."""
    g = _validate(functional, grid, r)
    ev = Evaluator(t, [k])
    if functional == "phi":
        return np.array([ev.phi(x, r)[0, 0] for x in g])
    fn = getattr(ev, functional)
    return np.array([fn(x)[0, 0] for x in g])


def _triple(t, dim: int | None) -> MeanTriple:
    if isinstance(t, MeanTriple):
        return t
    if dim is None:
        raise ConfigError("a seed needs a dimension to generate a triple", param="dim")
    return MeanTriple.random(dim, t)


def emit_sweep(t, k: NormKind, functional: str, grid, out, *, dim: int | None = None, r: float = 1.0) -> None:
    """Write ``param,value`` rows with 17 significant digits.

    ``t`` is a :class:`MeanTriple` or a seed (then ``dim`` is required);
    ``out`` is a path or a text stream. Write failures are re-raised as
    :class:`OSError` naming the path.
    """
    g = _validate(functional, grid, r)
    values = sweep_values(_triple(t, dim), k, functional, g, r)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "value"])
    for x, v in zip(g, values):
        w.writerow([format(x, ".17g"), format(v, ".17g")])
    text = buf.getvalue()
    if hasattr(out, "write"):
        out.write(text)
        return
    path = Path(out)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write sweep to {path}: {exc.strerror}", str(path)) from exc

