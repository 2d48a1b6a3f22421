"""Suite runner, configuration and sweep emission."""

from .config import SuiteConfig, load_config
from .suites import SUITES, CheckReport, SuiteSummary, run_suite
from .sweep import emit_sweep, sweep_values

__all__ = ["SuiteConfig", "load_config", "SUITES", "CheckReport", "SuiteSummary", "run_suite", "emit_sweep", "sweep_values"]
