"""Weighted permutation representations rho = (w, G) and their invariants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import PreconditionError, ValidationError
from .groups import PermGroup, contains_iota, is_transitive, tables
from .linalg import RatMatrix, bareiss_rank
from .weights import NewtonPolygon, WeightFunction, format_fraction


@dataclass(frozen=True)
class ExceptionalWitness:
    t_plus: tuple
    t_minus: tuple

    @property
    def size(self):
        return len(self.t_plus) + len(self.t_minus)

    @property
    def codim_bound(self):
        """Smallest r with 2r >= |T+| + |T-|."""
        return (self.size + 1) // 2

    def sort_key(self):
        return (self.size, self.t_plus, self.t_minus)

    def to_json(self):
        return {"t_plus": list(self.t_plus), "t_minus": list(self.t_minus),
                "codim_bound": self.codim_bound}


def signed_vectors(g):
    """All t in {-1,0,1}^g with even, positive support, in witness order."""
    out = []
    for t in itertools.product((0, 1, -1), repeat=g):
        k = sum(1 for v in t if v)
        if k and k % 2 == 0:
            out.append(t)
    out.sort(key=lambda t: _witness_of(t).sort_key())
    return out


def _witness_of(t):
    plus = tuple(i + 1 for i, v in enumerate(t) if v == 1)
    minus = tuple(i + 1 for i, v in enumerate(t) if v == -1)
    return ExceptionalWitness(plus, minus)


@dataclass(frozen=True, eq=False)
class WeightedPermRep:
    w: WeightFunction
    G: PermGroup
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.w.g != self.G.g:
            raise ValidationError("weight function and group have different g")
        if not contains_iota(self.G):
            raise ValidationError("G must contain the conjugation element")
        if not is_transitive(self.G):
            raise ValidationError("G must act transitively on the 2g symbols")

    @property
    def g(self):
        return self.w.g

    @cached_property
    def phi_scaled(self):
        """Integer matrix L * Phi, rows in the order of ``G.elements``.

        Entry (s, x) is L * w(s^-1(x)); L is ``w.scale``.
        """
        t = tables(self.g)
        inv_img = t.images(t.inv(self.G.elements))
        arr = np.asarray(self.w.scaled)[inv_img]
        arr.setflags(write=False)
        return arr

    @cached_property
    def phi_rows(self):
        """Distinct rows of ``phi_scaled``; enough for rank and linear tests."""
        return np.unique(self.phi_scaled, axis=0)

    def phi_matrix(self) -> RatMatrix:
        L = self.w.scale
        return RatMatrix.from_rows([[Fraction(int(v), L) for v in r] for r in self.phi_scaled])

    def is_geometrically_simple(self):
        cols = {tuple(c) for c in self.phi_rows.T.tolist()}
        return len(cols) == 2 * self.g

    @cached_property
    def rank(self):
        rows = self.phi_rows
        # rank of the 2g-row transpose; Python ints throughout
        return bareiss_rank([[int(v) for v in c] for c in rows.T])

    def angle_rank(self):
        return self.rank - 1

    def level_set_partition(self):
        g = self.g
        flips = [int(c) for c in self.G.elements if int(c) >> g == 0]
        parts = {}
        for i in range(g):
            sig = tuple((c >> i) & 1 for c in flips)
            parts.setdefault(sig, []).append(i + 1)
        blocks = sorted(tuple(p) for p in parts.values())
        return blocks, len(blocks)

    def exceptional_witnesses(self):
        if not self.is_geometrically_simple():
            raise PreconditionError("exceptionality is only defined for geometrically simple rho")
        g = self.g
        L = self.w.scale
        tv = np.array(signed_vectors(g), dtype=np.int64).reshape(-1, g)
        rhs = L * tv.sum(axis=1)
        rows = 2 * self.phi_rows[:, :g]
        hit = _kernels.signed_scan(rows, tv, rhs)
        return [_witness_of(tuple(int(v) for v in t)) for t in tv[hit]]

    def is_exceptional(self):
        return bool(self.exceptional_witnesses())

    def to_json(self):
        return {
            "g": self.g,
            "slopes": [format_fraction(s) for s in self.w.newton.slopes],
            "generators": self.G.generator_strings(),
            "order": self.G.order,
        }


# function-style API

def phi_matrix(rho):
    return rho.phi_matrix()


def is_geometrically_simple(rho):
    return rho.is_geometrically_simple()


def angle_rank(rho):
    return rho.angle_rank()


def level_set_partition(rho):
    return rho.level_set_partition()


def exceptional_witnesses(rho):
    return rho.exceptional_witnesses()


def make_wpr(newton, G):
    if not isinstance(newton, NewtonPolygon):
        newton = NewtonPolygon.parse(newton)
    return WeightedPermRep(WeightFunction.from_newton(newton), G)
