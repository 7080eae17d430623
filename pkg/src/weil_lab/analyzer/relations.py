"""Multiplicative relations among normalized Frobenius eigenvalues.

With lambda_k = pi_k / sqrt(q) = exp(i theta_k) for the g roots in the
upper half plane, an integer vector (c_1..c_g, m) is a relation when
sum c_k theta_k + m pi = 0.  Relations are found by LLL on the usual
integer-relation embedding and kept only when they survive a doubling
of the working precision.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath
import sympy
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from ..errors import ConvergenceError
from ..linalg import kernel_basis, rank as q_rank
from ..wpr import ExceptionalWitness, signed_vectors
from .roots import complex_roots
from .weil import WeilPolynomial, newton_polygon_of

MAX_PRECISION = 3072


def default_unity_bound(g):
    """Largest n with phi(n) <= 24 g."""
    limit = 24 * g
    # phi(n) >= sqrt(n/2), so n <= 2 limit^2 suffices
    return max(n for n in range(1, 2 * limit * limit + 1) if sympy.totient(n) <= limit)


def angles(P, precision_bits):
    """theta_k / pi for k = 1..g, each in (0, 1)."""
    roots = complex_roots(P, precision_bits)
    g = P.g
    with mpmath.workprec(precision_bits + 32):
        return [mpmath.arg(z) / mpmath.pi for z in roots[:g]]


def hnf_rows(rows):
    """Row Hermite normal form: positive pivots, entries above a pivot reduced mod it."""
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # gcd-combine everything below r into row r
        for i in range(r + 1, len(a)):
            while a[i][c]:
                q = a[r][c] // a[i][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[i])]
                a[r], a[i] = a[i], a[r]
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return [row for row in a[:r]]


def _lll(rows):
    M = DomainMatrix([[ZZ(int(v)) for v in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    R = M.lll(delta=QQ(3, 4)).to_Matrix()
    return [[int(R[i, j]) for j in range(R.cols)] for i in range(R.rows)]


def _relations_at(P, precision_bits):
    g = P.g
    xs = angles(P, precision_bits) + [mpmath.mpf(1)]
    n = g + 1
    N = 2 ** (precision_bits // 2)
    with mpmath.workprec(precision_bits + 32):
        scaled = [int(mpmath.nint(N * x)) for x in xs]
    basis = [[1 if j == i else 0 for j in range(n)] + [scaled[i]] for i in range(n)]
    reduced = _lll(basis)
    threshold = mpmath.mpf(2) ** (-(3 * precision_bits) // 4)
    rels = []
    with mpmath.workprec(precision_bits + 32):
        for v in reduced:
            c = v[:n]
            if not any(c):
                continue
            resid = abs(mpmath.fsum(ci * x for ci, x in zip(c, xs)))
            if resid < threshold:
                rels.append(c)
    return hnf_rows(rels)


@dataclass
class RelationLattice:
    g: int
    basis: list              # rows (c_1..c_g, m)
    precision_bits: int
    residual_bound: float
    stable: bool = True
    history: list = field(default_factory=list)

    @property
    def rank(self):
        return len(self.basis)

    def to_json(self):
        return {"g": self.g, "basis": self.basis, "rank": self.rank,
                "precision_bits": self.precision_bits,
                "residual_bound": f"2^-{(3 * self.precision_bits) // 4}",
                "stable": self.stable}


def relation_lattice(P: WeilPolynomial, precision_bits=192, max_precision=MAX_PRECISION):
    """Relations stable between two consecutive precisions (p, 2p, 4p, ...)."""
    prev = None
    prec = precision_bits
    history = []
    last = None
    while prec <= max_precision:
        try:
            cur = _relations_at(P, prec)
        except ConvergenceError:
            prec *= 2
            continue
        history.append((prec, len(cur)))
        if prev is not None and cur == prev:
            return RelationLattice(P.g, cur, prec // 2, 2.0 ** (-(3 * prec // 2) // 4),
                                   True, history)
        prev, last = cur, prec
        prec *= 2
    if last is None:
        raise ConvergenceError("root finding failed at every precision")
    return RelationLattice(P.g, prev, last, 2.0 ** (-(3 * last) // 4), False, history)


def _order_of(frac: Fraction):
    """Order of exp(2 pi i frac)."""
    return frac.denominator


def exceptional_relations(L: RelationLattice, max_unity_order=None):
    """Signed subsets (T+, T-) whose eigenvalue product is a root of unity.

    ``c`` qualifies when it lies in the Q-span of the lattice's c-parts;
    the matching m is rational, and exp(i pi m) must have order at most
    ``max_unity_order`` (default: the largest n with phi(n) <= 24 g).
    """
    g = L.g
    bound = default_unity_bound(g) if max_unity_order is None else int(max_unity_order)
    if not L.basis:
        return []
    cparts = [r[:g] for r in L.basis]
    rk = q_rank(cparts)
    out = []
    for t in signed_vectors(g):
        if q_rank(cparts + [list(t)]) != rk:
            continue
        # solve t = sum r_k c_k over Q, then m = sum r_k m_k
        cols = [[Fraction(cparts[k][i]) for k in range(len(cparts))] + [Fraction(-t[i])]
                for i in range(g)]
        sols = [v for v in kernel_basis(cols) if v[-1] != 0]
        if not sols:
            continue
        v = sols[0]
        coeffs = [x / v[-1] for x in v[:-1]]
        m = sum((coeffs[k] * L.basis[k][g] for k in range(len(coeffs))), Fraction(0))
        # sum t theta = -m pi, so the product is exp(-i pi m) = exp(2 pi i (-m/2))
        if _order_of(Fraction(-m, 2) % 1) > bound:
            continue
        out.append(ExceptionalWitness(
            tuple(i + 1 for i, x in enumerate(t) if x == 1),
            tuple(i + 1 for i, x in enumerate(t) if x == -1)))
    return out


def _numeric_geometrically_simple(L):
    """No lambda_i and no lambda_i / lambda_j^(+-1) is a root of unity."""
    g = L.g
    if not L.basis:
        return True
    cparts = [r[:g] for r in L.basis]
    rk = q_rank(cparts)
    tests = [[1 if k == i else 0 for k in range(g)] for i in range(g)]
    for i, j in itertools.combinations(range(g), 2):
        for s in (1, -1):
            v = [0] * g
            v[i], v[j] = 1, s
            tests.append(v)
    return all(q_rank(cparts + [v]) != rk for v in tests)


@dataclass
class AnalyzerReport:
    polynomial: WeilPolynomial
    newton: object
    is_weil: bool
    angle_rank: int
    relations: RelationLattice
    exceptional: list
    certification: str
    irreducible: bool
    squarefree: bool
    geometrically_simple: bool
    max_unity_order: int
    notes: list = field(default_factory=list)

    def to_json(self):
        P = self.polynomial
        return {
            "g": P.g, "p": P.p, "q": P.q,
            "coefficients": list(P.coefficients),
            "newton": str(self.newton),
            "is_weil": self.is_weil,
            "angle_rank": self.angle_rank,
            "relations": self.relations.to_json(),
            "exceptional": [w.to_json() for w in self.exceptional],
            "certification": self.certification,
            "irreducible": self.irreducible,
            "squarefree": self.squarefree,
            "geometrically_simple_numeric": self.geometrically_simple,
            "max_unity_order": self.max_unity_order,
            "notes": self.notes,
        }


def _is_weil(P, precision_bits):
    roots = complex_roots(P, precision_bits)
    with mpmath.workprec(precision_bits + 32):
        sq = mpmath.sqrt(P.q)
        tol = mpmath.mpf(2) ** (-precision_bits // 2)
        return all(abs(abs(z) - sq) < tol * sq for z in roots)


def analyze(P: WeilPolynomial, precision_bits=192, max_unity_order=None):
    poly = P.sympy_poly()
    irreducible = bool(poly.is_irreducible)
    squarefree = bool(poly.is_sqf)
    notes = []
    if not squarefree:
        raise ConvergenceError("repeated roots: analyze the squarefree part instead")
    L = relation_lattice(P, precision_bits)
    bound = default_unity_bound(P.g) if max_unity_order is None else int(max_unity_order)
    exc = exceptional_relations(L, bound)
    simple = _numeric_geometrically_simple(L)
    if not (irreducible and simple):
        notes.append("interpretation as exceptional Tate classes is not licensed: "
                     "input is not irreducible or not geometrically simple")
    return AnalyzerReport(
        polynomial=P,
        newton=newton_polygon_of(P),
        is_weil=_is_weil(P, precision_bits),
        angle_rank=P.g - L.rank,
        relations=L,
        exceptional=exc,
        certification="stable-across-precisions" if L.stable else "numeric",
        irreducible=irreducible,
        squarefree=squarefree,
        geometrically_simple=simple,
        max_unity_order=bound,
        notes=notes,
    )
