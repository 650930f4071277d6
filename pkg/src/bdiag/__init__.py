"""Combinatorial Hopf algebras of B-diagrams and of set, list and colored
partitions, with exact arithmetic."""

from .diagram import EPSILON, Diagram, format_diagram, make, parse_diagram
from .linalg import LinComb

__version__ = "0.1.0"

__all__ = ["Diagram", "EPSILON", "LinComb", "format_diagram", "make", "parse_diagram", "__version__"]
