"""Exact verification of reflection-group constructions of bounding hyperbolic manifolds."""
from __future__ import annotations

from .errors import DataError, DomainError, GeoboundError
from .exactring import FactoredInt, GoldenInt, factorize

__version__ = "0.1.0"

__all__ = ["DataError", "DomainError", "FactoredInt", "GeoboundError", "GoldenInt", "factorize", "__version__"]
