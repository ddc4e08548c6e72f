"""Exact computations with bound quiver algebras, 2-term and longer silting
intervals, and a rule-based silting-discreteness oracle."""
from .algebra import AlgebraBasis, AlgebraPresentation, Arrow, LinComb, Quiver, basis, multiply, normalize
from .dsl import parse_dsl, print_dsl
from .fixtures import fixture, fixture_list, make_standard
from .linalg import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AlgebraBasis",
    "AlgebraPresentation",
    "Arrow",
    "BACKEND",
    "LinComb",
    "Quiver",
    "basis",
    "fixture",
    "fixture_list",
    "make_standard",
    "multiply",
    "normalize",
    "parse_dsl",
    "print_dsl",
]
