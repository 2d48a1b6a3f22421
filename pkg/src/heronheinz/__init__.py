"""Numerical verification of Heron and Heinz mean norm inequalities."""

from .errors import HeronHeinzError
from .means import MeanTriple
from .norms import TEST_NORMS, NormKind

__version__ = "0.1.0"

__all__ = ["HeronHeinzError", "MeanTriple", "NormKind", "TEST_NORMS", "__version__"]
