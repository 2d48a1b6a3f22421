"""Unitarily invariant norms as symmetric gauge functions of singular values."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RangeError
from .linalg import singular_values

__all__ = [
    "NormKind",
    "TEST_NORMS",
    "gauge",
    "singular_values",
    "ui_norm",
    "ui_norm_abs_power",
]

_KINDS = ("operator", "schatten", "kyfan", "trace")


@dataclass(frozen=True)
class NormKind:
    """Selector for a unitarily invariant norm.

    ``param`` is the exponent ``p`` for Schatten norms and the count ``k``
    for Ky Fan norms; it is ``None`` otherwise. Use the classmethod
    constructors or :meth:`parse` rather than building instances directly.
    """

    kind: str
    param: float | int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise RangeError(f"unknown norm kind {self.kind!r}")
        if self.kind == "schatten":
            if self.param is None or not np.isfinite(self.param) or self.param < 1:
                raise RangeError(f"Schatten exponent must be >= 1, got {self.param}")
        elif self.kind == "kyfan":
            if self.param is None or int(self.param) != self.param or self.param < 1:
                raise RangeError(f"Ky Fan index must be a positive integer, got {self.param}")
            object.__setattr__(self, "param", int(self.param))
        elif self.param is not None:
            raise RangeError(f"{self.kind} norm takes no parameter")

    @classmethod
    def operator(cls) -> "NormKind":
        return cls("operator")

    @classmethod
    def schatten(cls, p: float) -> "NormKind":
        p = float(p)
        return cls("schatten", int(p) if p.is_integer() else p)

    @classmethod
    def kyfan(cls, k: int) -> "NormKind":
        return cls("kyfan", k)

    @classmethod
    def trace(cls) -> "NormKind":
        return cls("trace")

    @classmethod
    def parse(cls, text: str) -> "NormKind":
        """Parse ``operator``, ``trace``, ``schatten:p`` or ``kyfan:k``."""
        name, _, arg = str(text).strip().lower().partition(":")
        if name in ("operator", "trace"):
            if arg:
                raise RangeError(f"{name} norm takes no parameter: {text!r}")
            return cls(name)
        if name not in ("schatten", "kyfan") or not arg:
            raise RangeError(f"cannot parse norm {text!r}")
        try:
            value = float(arg)
        except ValueError:
            raise RangeError(f"bad norm parameter in {text!r}") from None
        return cls.schatten(value) if name == "schatten" else cls.kyfan(value)

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


TEST_NORMS: tuple[NormKind, ...] = (
    NormKind.operator(),
    NormKind.schatten(1),
    NormKind.schatten(2),
    NormKind.schatten(3),
    NormKind.kyfan(2),
    NormKind.trace(),
)


def gauge(s, kind: NormKind) -> np.ndarray:
    """Apply the gauge of ``kind`` along the last axis of a descending sequence ``s``."""
    s = np.asarray(s, dtype=np.float64)
    if kind.kind == "operator":
        return np.max(s, axis=-1)
    if kind.kind == "trace":
        return np.sum(s, axis=-1)
    if kind.kind == "kyfan":
        if kind.param > s.shape[-1]:
            raise RangeError(f"Ky Fan index {kind.param} exceeds {s.shape[-1]} singular values")
        return np.sum(s[..., : kind.param], axis=-1)
    p = kind.param
    if p == 1:
        return np.sum(s, axis=-1)
    if p == 2:
        return np.sqrt(np.sum(s * s, axis=-1))
    top = np.max(s, axis=-1)
    safe = np.where(top > 0, top, 1.0)
    return top * np.sum((s / safe[..., None]) ** p, axis=-1) ** (1.0 / p)


def ui_norm(X, kind: NormKind) -> np.ndarray:
    """``|||X|||`` for the norm selected by ``kind``; stacks give one value per matrix."""
    return gauge(singular_values(X), kind)


def ui_norm_abs_power(M, r: float, kind: NormKind) -> np.ndarray:
    """``||| |M|^r |||``, using that ``|M|^r`` has singular values ``s_j(M)**r``."""
    if not r > 0:
        raise RangeError(f"exponent r must be positive, got {r}")
    return gauge(singular_values(M) ** r, kind)
