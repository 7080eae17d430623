"""Numerical path: Frobenius polynomial -> roots -> relation lattice."""
from .weil import WeilPolynomial, newton_polygon_of, parse_weil
from .roots import complex_roots
from .relations import (AnalyzerReport, RelationLattice, analyze, default_unity_bound,
                        exceptional_relations, relation_lattice)

__all__ = [
    "WeilPolynomial", "parse_weil", "newton_polygon_of", "complex_roots",
    "RelationLattice", "relation_lattice", "exceptional_relations",
    "AnalyzerReport", "analyze", "default_unity_bound",
]
