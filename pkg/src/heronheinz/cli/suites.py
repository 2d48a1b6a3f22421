"""Suite registry and the batched runner behind ``heronheinz check``.

Every suite is a list of parameter cases; each case is evaluated for all
trials of one dimension at once through a shared :class:`Evaluator`, so a
functional value needed by several suites is computed only once.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import __version__
from ..errors import ConfigError, RangeError
from ..linalg import gaussian
from ..means import MeanTriple
from ..norms import NormKind
from ..functionals import cauchy_schwarz as cs
from ..functionals import difference as diff
from ..functionals import heron, jensen
from ..functionals.core import ChainBatch, Evaluator, _plain
from ..functionals.zou import zou_counterexample
from .config import SuiteConfig

__all__ = ["SUITES", "CheckReport", "SuiteSummary", "run_suite", "resolve_suites", "suite_cases"]

QUARTER_NU = tuple(np.linspace(0.25, 0.75, 9))
UNIT_NU = tuple(np.linspace(0.0, 1.0, 9))
HALF_ALPHA = (0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0)
GEN_ALPHA = (1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 6.0)
POWER_R = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0)
CS_R = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0)
REVERSE_NU = (-3.0, -2.0, -1.0, -0.5, -0.05, 1.05, 1.5, 2.0, 3.0)
CONVEXITY_GRID = tuple(np.linspace(-2.0, 3.0, 21))
COROLLARY_NU = (0.0, 0.25, 0.5, 1.0, 2.0, 3.0, -1.0, -1.5, -2.0, -3.0)
COROLLARY_N = (1, 2, 3, 4)
UNIT_GRID = tuple(np.linspace(0.0, 1.0, 9))
JENSEN_INTERVALS = ((0.0, 1.0), (0.25, 0.75), (-1.0, 2.0))
HH_INTERVALS = ((0.0, 1.0), (0.25, 0.75))
SCHUR_SEED_WORD = 4

EXPECTED_NEGATIVE = "expected-negative"


@dataclass(frozen=True)
class Axis:
    """One grid parameter: its name in results, the config field it comes from and its domain."""

    name: str
    source: str | None
    default: tuple
    check: Callable[[float], None] | None = None


@dataclass(frozen=True)
class Suite:
    name: str
    axes: tuple[Axis, ...]
    chain: Callable[..., ChainBatch]
    # validation of a full case, for domains coupling several parameters
    case_check: Callable[..., None] | None = None
    # fixed norm overriding the configured ones
    norm: NormKind | None = None


def _convexity_grid(config: SuiteConfig) -> list[dict]:
    grid = config.nu_grid if config.nu_grid is not None else CONVEXITY_GRID
    diff.convexity_domain(grid)
    return [{"grid": tuple(grid)}]


def _corollary(config: SuiteConfig) -> list[dict]:
    nus = config.nu_grid if config.nu_grid is not None else COROLLARY_NU
    return [{"nu": nu, "N": N, "branch": diff.branch_for(nu)} for nu in nus for N in COROLLARY_N]


def _jensen(config: SuiteConfig) -> list[dict]:
    lams = config.lambda_grid if config.lambda_grid is not None else UNIT_GRID
    return [
        {"function": f, "p": jensen.JensenParams(lam, x1, x2)}
        for f in ("F", "K")
        for x1, x2 in JENSEN_INTERVALS
        for lam in lams
    ]


def _hermite_hadamard(config: SuiteConfig) -> list[dict]:
    return [{"function": f, "x1": x1, "x2": x2} for f in ("F", "K") for x1, x2 in HH_INTERVALS]


def _schur_chain(ev: Evaluator, Y: np.ndarray) -> ChainBatch:
    X = ev.triple.X
    lhs = ev.norms(Y * X)
    rhs = np.max(np.diagonal(Y, axis1=-2, axis2=-1), axis=-1)[:, None] * ev.norms(X)
    return ChainBatch(("|||Y o X|||", "max y_ii |||X|||"), np.stack([lhs, rhs], axis=-1))


def gram_stack(seeds, n: int) -> np.ndarray:
    """PSD Gram matrices ``G G^T`` with Gaussian ``G`` drawn from a spare word of each trial's seed."""
    out = np.empty((len(seeds), n, n))
    for i, ss in enumerate(seeds):
        word = int(ss.generate_state(SCHUR_SEED_WORD, np.uint64)[-1])
        G = gaussian(np.random.Generator(np.random.PCG64(word)), n * n).reshape(n, n)
        out[i] = G @ G.T
    return out


AXES = {
    "nu_q": Axis("nu", "nu_grid", QUARTER_NU, heron.nu_quarter_domain),
    "nu_unit": Axis("nu", "nu_grid", UNIT_NU, heron.unit_nu_domain),
    "alpha": Axis("alpha", "alpha_grid", HALF_ALPHA, heron.alpha_half_domain),
}

SUITES: dict[str, Suite] = {}
# suites whose cases are not a plain product of axes
_CUSTOM_CASES: dict[str, Callable[[SuiteConfig], list[dict]]] = {}


def _register(suite: Suite, cases: Callable[[SuiteConfig], list[dict]] | None = None) -> None:
    SUITES[suite.name] = suite
    if cases is not None:
        _CUSTOM_CASES[suite.name] = cases


_register(Suite("check_t1", (AXES["nu_q"], AXES["alpha"]), heron.t1_chain))
_register(Suite("check_t1_integral", (AXES["alpha"],), heron.t1_integral_chain))
_register(Suite("check_t20", (AXES["nu_q"], AXES["alpha"]), heron.t20_chain))
_register(
    Suite("check_kantorovich_s2", (AXES["nu_unit"],), heron.kantorovich_chain, norm=NormKind.schatten(2))
)
_register(Suite("check_conde", (AXES["nu_q"], AXES["alpha"]), heron.conde_chain))
_register(Suite("check_integral_refinement", (AXES["alpha"],), heron.integral_refinement_chain))
_register(Suite("check_t2", (AXES["nu_q"],), diff.t2_chain))
_register(Suite("check_t2_integral", (), diff.t2_integral_chain))
_register(Suite("check_heinz_diff_classical", (AXES["nu_unit"],), diff.classical_chain))
_register(
    Suite(
        "check_gen_diff",
        (Axis("alpha", "alpha_grid", GEN_ALPHA), Axis("nu", "nu_grid", UNIT_NU)),
        diff.gen_diff_chain,
        case_check=lambda alpha, nu: diff.gen_diff_domain(alpha, nu),
    )
)
_register(Suite("check_power_diff", (Axis("r", "r_grid", POWER_R, diff.power_domain),), diff.power_diff_chain))
_register(Suite("check_reverse_heinz", (Axis("nu", "nu_grid", REVERSE_NU, diff.reverse_domain),), diff.reverse_chain))
_register(Suite("check_convexity_extension", (), diff.convexity_chain), _convexity_grid)
_register(Suite("check_corollary_sum", (), diff.corollary_chain), _corollary)
_register(Suite("check_t3", (AXES["nu_q"],), diff.t3_chain))
_register(Suite("check_t4", (), diff.t4_chain))
_register(Suite("check_schur_norm_bound", (), _schur_chain))
_register(
    Suite(
        "check_hiai_zhan",
        (Axis("s", "s_grid", UNIT_GRID, cs.s_domain), Axis("r", "r_grid", CS_R, cs.r_positive_domain)),
        cs.hiai_zhan_chain,
    )
)
_register(
    Suite(
        "check_cs_refinement",
        (Axis("s", "s_grid", UNIT_GRID, cs.s_domain), Axis("r", "r_grid", CS_R, cs.r_positive_domain)),
        cs.cs_chain,
    )
)
_register(
    Suite("check_jensen_bounds", (), lambda ev, function, p: jensen.jensen_chain(ev, function, p)),
    _jensen,
)
_register(
    Suite(
        "check_hermite_hadamard_gap",
        (),
        lambda ev, function, x1, x2: jensen.hermite_hadamard_chain(ev, function, x1, x2),
    ),
    _hermite_hadamard,
)

ZOU = "zou"
ALIASES = {name.removeprefix("check_"): name for name in SUITES} | {
    "zou_counterexample": ZOU,
    "kantorovich": "check_kantorovich_s2",
    "classical": "check_heinz_diff_classical",
    "power": "check_power_diff",
    "reverse": "check_reverse_heinz",
    "convexity": "check_convexity_extension",
    "corollary": "check_corollary_sum",
    "schur": "check_schur_norm_bound",
    "jensen": "check_jensen_bounds",
    "hermite_hadamard": "check_hermite_hadamard_gap",
}


def resolve_suites(names) -> list[str]:
    """Expand ``all`` and short aliases (``t2`` for ``check_t2``); keeps order, drops repeats."""
    out: list[str] = []
    for name in names:
        expanded = [*SUITES, ZOU] if name == "all" else [ALIASES.get(name, name)]
        for n in expanded:
            if n != ZOU and n not in SUITES:
                raise ConfigError(f"unknown suite {name!r}", param="suites")
            if n not in out:
                out.append(n)
    return out


def suite_cases(name: str, config: SuiteConfig) -> list[dict]:
    """All parameter cases of a suite, validated against its domains.

    Raises :class:`ConfigError` naming the offending parameter.
    """
    suite = SUITES[name]
    try:
        if name in _CUSTOM_CASES:
            return _CUSTOM_CASES[name](config)
        grids = []
        for axis in suite.axes:
            given = getattr(config, axis.source) if axis.source else None
            grid = tuple(given) if given is not None else axis.default
            if axis.check is not None:
                for v in grid:
                    axis.check(v)
            grids.append(grid)
        cases = [dict(zip((a.name for a in suite.axes), combo)) for combo in itertools.product(*grids)]
        if suite.case_check is not None:
            for c in cases:
                suite.case_check(**c)
        return cases
    except RangeError as exc:
        param = exc.param or "grid"
        source = next((a.source for a in suite.axes if a.name == param and a.source), None)
        if source is None:
            source = {"lambda": "lambda_grid", "grid": "nu_grid", "nu": "nu_grid", "N": "nu_grid"}.get(param, param)
        raise ConfigError(f"{name}: {exc}", param=source) from None


@dataclass
class SuiteSummary:
    name: str
    total: int = 0
    passed: int = 0
    failed: int = 0
    worst_margin: float = float("inf")
    worst_relative_margin: float = float("inf")
    worst_case_params: dict = field(default_factory=dict)
    status: str = "ok"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "worst_margin": self.worst_margin,
            "worst_relative_margin": self.worst_relative_margin,
            "worst_case_params": self.worst_case_params,
            "status": self.status,
        }


@dataclass
class CheckReport:
    config: SuiteConfig
    suites: list[SuiteSummary]
    failures: list
    version: str = __version__
    wall_time: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(s.failed == 0 for s in self.suites)

    def to_dict(self, include_wall_time: bool = True) -> dict:
        out = {
            "config": self.config.to_dict(),
            "suites": [s.to_dict() for s in self.suites],
            "failures": [f.to_dict() for f in self.failures],
            "version": self.version,
        }
        if include_wall_time:
            out["wall_time"] = self.wall_time
        return out


def trial_seeds(seed: int, dim: int, trials: int) -> list[np.random.SeedSequence]:
    """One independent stream per (dim, trial), so any instance can be regenerated alone."""
    return [np.random.SeedSequence(seed, spawn_key=(dim, i)) for i in range(trials)]


def effective_norms(norms, dim: int) -> tuple:
    """Ky Fan k with ``k > dim`` becomes Ky Fan ``dim`` (zero-padded singular values)."""
    return tuple(NormKind.kyfan(dim) if k.kind == "kyfan" and k.param > dim else k for k in norms)


def _chain_args(name: str, case: dict, config: SuiteConfig, seeds, dim: int) -> dict:
    if name == "check_kantorovich_s2":
        m, M = config.spectrum_bounds
        return {**case, "m": m, "M": M}
    if name == "check_schur_norm_bound":
        return {**case, "Y": gram_stack(seeds, dim)}
    return case


def _record(summary: SuiteSummary, batch: ChainBatch, case: dict, kinds, dim: int, config: SuiteConfig, failures: list):
    scale = config.tolerance_scale
    worst = batch.margins.min(axis=-1)  # (L, K)
    ok = batch.passed(scale)
    n_fail = int(np.count_nonzero(~ok))
    summary.total += ok.size
    summary.failed += n_fail
    summary.passed += ok.size - n_fail
    rel = worst / batch.scale()
    i, k = np.unravel_index(np.argmin(rel), rel.shape)
    summary.worst_relative_margin = min(summary.worst_relative_margin, float(rel[i, k]))
    j = np.unravel_index(np.argmin(worst), worst.shape)
    if worst[j] < summary.worst_margin:
        summary.worst_margin = float(worst[j])
        params = {key: _plain(v) for key, v in _public(case).items()}
        params.update({key: _plain(arr[j]) for key, arr in batch.extra.items()})
        summary.worst_case_params = {**params, "norm": str(kinds[j[1]]), "dim": dim, "trial": int(j[0])}
    if n_fail:
        for fi, fk in zip(*np.nonzero(~ok)):
            params = {**_public(case), "norm": str(kinds[fk]), "dim": dim, "trial": int(fi)}
            failures.append(batch.result(int(fi), int(fk), summary.name, params, scale))


def _public(case: dict) -> dict:
    out = {}
    for key, v in case.items():
        if isinstance(v, jensen.JensenParams):
            out.update({"lambda": v.lam, "x1": v.x1, "x2": v.x2})
        else:
            out[key] = v
    return out


def _zou_summary() -> SuiteSummary:
    Z, det, psd = zou_counterexample()
    s = SuiteSummary(ZOU, total=1, status=EXPECTED_NEGATIVE)
    # the intended outcome is a kernel that is not PSD
    if psd:
        s.failed = 1
    else:
        s.passed = 1
    s.worst_margin = float(det)
    s.worst_relative_margin = float(det)
    s.worst_case_params = {"determinant": float(det), "psd": bool(psd)}
    return s


def run_suite(config: SuiteConfig) -> CheckReport:
    """Run every requested suite over ``dims x trials x norms x grids``.

    All grids are validated before any computation starts.
    """
    start = time.perf_counter()
    names = resolve_suites(config.suites)
    plan = {name: suite_cases(name, config) for name in names if name != ZOU}
    summaries = {name: SuiteSummary(name) for name in names}
    failures: list = []
    for dim in config.dims:
        seeds = trial_seeds(config.seed, dim, config.trials)
        t = MeanTriple.random_stack(dim, seeds, *config.spectrum_bounds)
        evaluators: dict = {}
        for name, cases in plan.items():
            suite = SUITES[name]
            kinds = (suite.norm,) if suite.norm is not None else config.norms
            used = effective_norms(kinds, dim)
            if used not in evaluators:
                evaluators[used] = Evaluator(t, used)
            ev = evaluators[used]
            for case in cases:
                batch = suite.chain(ev, **_chain_args(name, case, config, seeds, dim))
                _record(summaries[name], batch, case, kinds, dim, config, failures)
    if ZOU in summaries:
        summaries[ZOU] = _zou_summary()
    return CheckReport(config, [summaries[n] for n in names], failures, wall_time=time.perf_counter() - start)
