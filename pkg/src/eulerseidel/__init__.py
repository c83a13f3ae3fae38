"""Exact generalized Euler-Seidel matrices, Riordan arrays and transform checks."""

from .errors import EulerSeidelError
from .expr import parse_expr, eval_expr
from .riordan import Flavor, RiordanArray, TriangularMatrix
from .seidel import SeidelSpec, SeidelTable, build_table
from .series import Series

__version__ = "0.1.0"

__all__ = [
    "EulerSeidelError",
    "Flavor",
    "RiordanArray",
    "SeidelSpec",
    "SeidelTable",
    "Series",
    "TriangularMatrix",
    "build_table",
    "eval_expr",
    "parse_expr",
]
