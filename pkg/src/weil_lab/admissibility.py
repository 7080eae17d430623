"""Weak and strong p-admissible filtrations G ⊇ D ⊇ G0 ⊇ G1.

Only the group-theoretic necessary conditions are checked: D fixes the
weights, G0 and G1 are normal in D, G1 is a p-group, G0/G1 is cyclic of
order prime to p, D/G0 is cyclic, and some sigma, tau in D satisfy
<sigma, tau, G1> = D, <tau, G1> = G0 and sigma tau sigma^-1 = tau^p
modulo G1.  A filtration passing these is called admissible, never
"realized".

``p = None`` stands for a generic large prime, coprime to |G|.  Then G1
is trivial and tau only has to be conjugated to some generator of G0,
which holds automatically once G0 is cyclic and normal.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
import sympy

from .errors import PreconditionError, ValidationError
from .groups import CayleyTable, PermGroup, intersect, orbits, small_generating_set, stabilizer_of_weight
from .subgroups import subgroup_classes

GENERIC = None
DEFAULT_PRIMES = (2, 3, 5, 7, GENERIC)


def format_p(p):
    return "generic" if p is None else str(p)


def parse_p(tok):
    tok = str(tok).strip().lower()
    if tok in ("generic", "g", "inf"):
        return GENERIC
    try:
        p = int(tok)
    except ValueError as exc:
        raise ValidationError(f"not a prime: {tok!r}") from exc
    _check_prime(p)
    return p


def _check_prime(p):
    if p is not None and not sympy.isprime(p):
        raise ValidationError(f"{p} is not prime")


@dataclass(frozen=True)
class Filtration:
    D: PermGroup
    G0: PermGroup
    G1: PermGroup
    p: int | None

    def to_json(self):
        return {"D": self.D.generator_strings(), "G0": self.G0.generator_strings(),
                "G1": self.G1.generator_strings(), "p": format_p(self.p),
                "orders": [self.D.order, self.G0.order, self.G1.order]}


@dataclass
class AdmissibilityReport:
    weak: bool
    strong: bool
    witnesses: list = field(default_factory=list)
    checked_p: list = field(default_factory=list)

    def to_json(self):
        return {"weak": self.weak, "strong": self.strong,
                "checked_p": [format_p(p) for p in self.checked_p],
                "witnesses": [f.to_json() for f in self.witnesses]}


# ---------------------------------------------------------------- local group work

class _Local:
    """A group D with its Cayley table and normal-subgroup lattice."""

    def __init__(self, g, elements):
        self.g = g
        self.ct = CayleyTable(g, elements)
        self.n = self.ct.n

    def mask(self, idx):
        m = np.zeros(self.n, dtype=np.bool_)
        m[np.asarray(idx, dtype=np.int64)] = True
        return m

    def gen_mask(self, gens):
        return self.mask(self.ct.closure(list(gens)))

    @functools.cached_property
    def normal_subgroups(self):
        """Masks of all normal subgroups, sorted by order."""
        ct = self.ct
        seen = set()
        closures = []
        for x in range(self.n):
            cls = np.unique(ct.mult[ct.mult[np.arange(self.n), x], ct.inv])
            key = cls.tobytes()
            if key in seen:
                continue
            seen.add(key)
            closures.append(ct.closure(cls))
        trivial = np.array([0], dtype=np.int64)
        found = {trivial.tobytes(): trivial}
        queue = [trivial]
        while queue:
            N = queue.pop()
            for M in closures:
                J = ct.closure(np.union1d(N, M))
                k = J.tobytes()
                if k not in found:
                    found[k] = J
                    queue.append(J)
        return sorted((self.mask(v) for v in found.values()), key=lambda m: (m.sum(), m.tobytes()))

    def generators_mod(self, target, sub):
        """Elements a of target with <a, sub> = target."""
        ct = self.ct
        sub_idx = np.flatnonzero(sub)
        tsize = int(target.sum())
        out = []
        for a in np.flatnonzero(target):
            if sub[a] and tsize != int(sub.sum()):
                continue
            span = ct.closure(np.append(sub_idx, a))
            if span.size == tsize:
                out.append(int(a))
        return out

    def power(self, a, k):
        y = 0
        for _ in range(k):
            y = self.ct.mult[y, a]
        return y


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _search_iv(loc, D, G0, G1, p):
    """sigma, tau witnessing condition (iv), or None."""
    ct = loc.ct
    taus = loc.generators_mod(G0, G1)
    sigmas = loc.generators_mod(D, G0)
    if not taus or not sigmas:
        return None
    for tau in taus:
        o = int(ct.orders[tau])
        if p is None:
            targets = {loc.power(tau, u) for u in range(1, o + 1) if gcd(u, o) == 1}
        else:
            targets = None
            tp_inv = ct.inv[loc.power(tau, p % o if o else p)]
        for sigma in sigmas:
            c = ct.mult[ct.mult[sigma, tau], ct.inv[sigma]]
            if p is None:
                if c in targets:
                    return sigma, tau
            elif G1[ct.mult[c, tp_inv]]:
                return sigma, tau
    return None


def _chain_ok(loc, D, G0, G1, p):
    ct = loc.ct
    n0, n1, nd = int(G0.sum()), int(G1.sum()), int(D.sum())
    if p is None:
        if n1 != 1:
            return False
    elif not _is_p_power(n1, p):
        return False
    if p is not None and (n0 // n1) % p == 0:
        return False
    return _search_iv(loc, D, G0, G1, p) is not None


def local_filtrations(g, d_elements, p, first_only=False):
    """All (G0, G1) element-code pairs making D = <d_elements> admissible at p."""
    loc = _Local(g, d_elements)
    D = np.ones(loc.n, dtype=np.bool_)
    normals = loc.normal_subgroups
    out = []
    for G0 in normals:
        if not loc.generators_mod(D, G0):
            continue  # D/G0 not cyclic
        for G1 in normals:
            if int(G1.sum()) > int(G0.sum()) or (G1 & ~G0).any():
                continue
            if _chain_ok(loc, D, G0, G1, p):
                out.append((loc.ct.elements[G0], loc.ct.elements[G1]))
                if first_only:
                    return out
    return out


@functools.lru_cache(maxsize=20000)
def _exists_cached(g, key, p):
    d = np.frombuffer(key, dtype=np.int64)
    return bool(local_filtrations(g, d, p, first_only=True))


def has_filtration(D: PermGroup, p) -> bool:
    return _exists_cached(D.g, D.elements.tobytes(), p)


def check_local_galois_conditions(f: Filtration) -> bool:
    _check_prime(f.p)
    if not (f.G1.is_subgroup_of(f.G0) and f.G0.is_subgroup_of(f.D)):
        raise PreconditionError("need G1 ⊆ G0 ⊆ D")
    loc = _Local(f.D.g, f.D.elements)
    G0 = loc.mask(loc.ct.index(f.G0.elements))
    G1 = loc.mask(loc.ct.index(f.G1.elements))
    D = np.ones(loc.n, dtype=np.bool_)
    ct = loc.ct
    for N in (G0, G1):
        idx = np.flatnonzero(N)
        conj = ct.mult[ct.mult[np.arange(loc.n)[:, None], idx[None, :]], ct.inv[:, None]]
        if not N[conj].all():
            return False
    if not loc.generators_mod(D, G0):
        return False
    return _chain_ok(loc, D, G0, G1, f.p)


# ---------------------------------------------------------------- orbit condition

def strong_orbit_condition(rho, D: PermGroup) -> bool:
    """Every D-orbit on the 2g symbols has integral weight sum."""
    stab = stabilizer_of_weight(rho.w)
    if not D.is_subgroup_of(stab):
        raise PreconditionError("D is not contained in Stab(w)")
    return _orbits_integral(rho.w, D)


def _orbits_integral(w, D):
    L = w.scale
    vals = w.scaled
    return all(int(sum(int(vals[x]) for x in orb)) % L == 0 for orb in orbits(D))


def orbit_sums(w, D):
    return [sum((w.values[x] for x in orb), Fraction(0)) for orb in orbits(D)]


# ---------------------------------------------------------------- search over D

@functools.lru_cache(maxsize=2000)
def _d_classes(g, key):
    elems = np.frombuffer(key, dtype=np.int64)
    ct = CayleyTable(g, elems)
    reps = subgroup_classes(ct)
    out = []
    for members, _ in reps:
        codes = ct.codes(members)
        out.append(PermGroup.from_codes(g, small_generating_set(g, codes), codes))
    out.sort(key=lambda d: (d.order, tuple(d.elements.tolist())))
    return tuple(out)


def decomposition_candidates(rho):
    """Subgroups of G ∩ Stab(w), one per (G ∩ Stab(w))-conjugacy class."""
    K = intersect(rho.G, stabilizer_of_weight(rho.w))
    return _d_classes(rho.g, K.elements.tobytes())


def find_admissible_filtrations(rho, p, strong_only=False, first_only=False):
    _check_prime(p)
    witnesses = []
    strong = False
    for D in decomposition_candidates(rho):
        is_strong = _orbits_integral(rho.w, D)
        if strong_only and not is_strong:
            continue
        pairs = local_filtrations(rho.g, D.elements, p, first_only=first_only)
        for g0, g1 in pairs:
            G0 = PermGroup.from_codes(rho.g, small_generating_set(rho.g, g0), g0)
            G1 = PermGroup.from_codes(rho.g, small_generating_set(rho.g, g1), g1)
            witnesses.append(Filtration(D, G0, G1, p))
        if pairs and is_strong:
            strong = True
            if first_only:
                break
    # the trivial filtration is always weakly admissible
    return AdmissibilityReport(weak=True, strong=strong, witnesses=witnesses, checked_p=[p])


def strongly_admissible_primes(rho, primes=DEFAULT_PRIMES):
    """[(p, strong)] for each p in the sweep, searching only strong D."""
    cands = [D for D in decomposition_candidates(rho) if _orbits_integral(rho.w, D)]
    out = []
    for p in primes:
        ok = any(has_filtration(D, p) for D in cands)
        out.append((p, ok))
    return out
