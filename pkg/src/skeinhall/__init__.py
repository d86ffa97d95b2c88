"""Exact computations in the torus skein algebra, the elliptic Hall algebra
and their actions on symmetric functions, with iterated-cable invariants."""
from __future__ import annotations

from .coeffring import LaurentPoly, RatFunc, rf_eq, specialize, var
from .errors import SkeinHallError
from .hallrep import jE, spec_to_N, spec_to_skein
from .knots import NewtonPairs, compare_connection, validate_pairs
from .partitions import partition, partitions_of
from .skeinmod import jH
from .symfunc import SymFunc

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "NewtonPairs",
    "RatFunc",
    "SkeinHallError",
    "SymFunc",
    "compare_connection",
    "jE",
    "jH",
    "partition",
    "partitions_of",
    "rf_eq",
    "spec_to_N",
    "spec_to_skein",
    "specialize",
    "validate_pairs",
    "var",
]
