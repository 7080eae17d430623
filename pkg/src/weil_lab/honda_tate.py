"""Ideal exponent vectors and the Honda-Tate dimension g * lcm(eps, k)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .admissibility import orbit_sums
from .errors import PreconditionError, ValidationError
from .groups import PermGroup, format_code, stabilizer_of_weight, tables
from .weights import format_fraction


@dataclass(frozen=True)
class ExponentVector:
    """Exponent w(s^-1(1)) on each coset sD, and the scalar c clearing denominators.

    Exponents are only known up to the global positive scalar v(q), which
    needs a concrete number field; everything here is normalized to v(q) = 1.
    """

    g: int
    cosets: tuple      # tuples of element codes, each sorted; ordered by least code
    exponents: tuple
    c: int

    def to_json(self):
        return {"cosets": [[format_code(self.g, cs[0])] for cs in self.cosets],
                "coset_size": len(self.cosets[0]) if self.cosets else 0,
                "exponents": [format_fraction(e) for e in self.exponents],
                "c": self.c}

    def inflate(self, elements):
        """Exponent of each element of G, in the given element order."""
        where = {}
        for e, cs in zip(self.exponents, self.cosets):
            for code in cs:
                where[code] = e
        return [where[int(c)] for c in elements]


def _check_decomposition(rho, D):
    if not D.is_subgroup_of(rho.G):
        raise PreconditionError("D is not a subgroup of G")
    if not D.is_subgroup_of(stabilizer_of_weight(rho.w)):
        raise PreconditionError("D is not contained in Stab(w)")


def ideal_exponents(rho, D: PermGroup) -> ExponentVector:
    if not D.is_subgroup_of(rho.G):
        raise PreconditionError("D is not a subgroup of G")
    t = tables(rho.g)
    G = rho.G.elements
    # exponent of s is w(s^-1(1)), i.e. the first column of Phi
    col = t.images(t.inv(G))[:, 0]
    exps = {int(c): rho.w.values[int(x)] for c, x in zip(G, col)}
    seen = set()
    cosets, values = [], []
    for s in G:
        s = int(s)
        if s in seen:
            continue
        cs = sorted(int(v) for v in t.mul(s, D.elements))
        vals = {exps[c] for c in cs}
        if len(vals) != 1:
            raise PreconditionError("weights are not constant on a coset; D is not inside Stab(w)")
        seen.update(cs)
        cosets.append(tuple(cs))
        values.append(vals.pop())
    c = lcm(*(v.denominator for v in values))
    return ExponentVector(rho.g, tuple(cosets), tuple(values), c)


def epsilon_pi(trailing_sign) -> int:
    """1 if the constant term of the Weil polynomial is positive, else 2."""
    if isinstance(trailing_sign, str):
        s = trailing_sign.strip()
        if s in ("+", "+1", "pos", "positive"):
            return 1
        if s in ("-", "-1", "neg", "negative"):
            return 2
        raise ValidationError(f"bad sign {trailing_sign!r}")
    if trailing_sign == 0:
        raise ValidationError("the constant term of a Weil polynomial is never zero")
    return 1 if trailing_sign > 0 else 2


def k_pi(rho, D: PermGroup) -> int:
    _check_decomposition(rho, D)
    return lcm(*(Fraction(s).denominator for s in orbit_sums(rho.w, D)))


@dataclass(frozen=True)
class DimensionResult:
    dimension: int
    epsilon: int
    k: int
    strong: bool

    def to_json(self):
        return {"dimension": self.dimension, "epsilon": self.epsilon, "k": self.k,
                "strongly_admissible_orbits": self.strong}


def honda_tate_dimension(rho, D: PermGroup, trailing_sign) -> DimensionResult:
    eps = epsilon_pi(trailing_sign)
    k = k_pi(rho, D)
    return DimensionResult(rho.g * lcm(eps, k), eps, k, k == 1)
