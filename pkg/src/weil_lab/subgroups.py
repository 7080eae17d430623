"""Enumeration of subgroups up to conjugacy.

Two searches live here.

``subgroup_classes`` is generic: it walks the subgroup lattice of a
group given by a Cayley table, adjoining one element at a time to every
class representative found so far, and dedupes by an explicit conjugacy
test.  It is used on small ambient groups (S_g, and the subgroups of a
fixed G searched by the admissibility module).

``enumerate_transitive_subgroups`` handles the large case, subgroups of
W_{2g} that contain iota and act transitively.  Such a G is pinned down
by three pieces of data: its image H in S_g (transitive), the subspace
C = G ∩ (Z/2)^g (H-invariant, contains the all-ones vector) and a
1-cocycle H -> (Z/2)^g / C.  The cocycles are the solutions of a linear
system over F_2, so no search over the 2^g * g! elements is needed.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import _kernels
from .groups import (CayleyTable, MAX_G, PermGroup, small_generating_set,
                     stabilizer_of_weight, tables)
from .errors import ResourceLimitError


# ---------------------------------------------------------------- generic search

def _signature(ct, members):
    return (members.size, np.bincount(ct.orders[members], minlength=13).tobytes())


def subgroup_classes(ct: CayleyTable, conj_by=None, keep=None, max_classes=200000):
    """Representatives of all subgroups of the table's group up to conjugacy.

    ``conj_by`` holds local indices of the conjugating group (default: the
    whole group).  ``keep(members)`` may prune; it must be inherited by
    subgroups for the result to be complete.  Returns a list of
    ``(members, gens)`` pairs of local index arrays, in discovery order.
    """
    n = ct.n
    conj_by = np.arange(n, dtype=np.int64) if conj_by is None else np.asarray(conj_by, dtype=np.int64)
    trivial = np.array([0], dtype=np.int64)
    reps = [(trivial, [])]
    by_sig = {_signature(ct, trivial): [0]}
    seen = {trivial.tobytes()}
    head = 0
    while head < len(reps):
        members, gens = reps[head]
        head += 1
        tried = np.zeros(n, dtype=np.bool_)
        tried[members] = True
        for x in range(n):
            if tried[x]:
                continue
            # x^k with k prime to ord(x) gives the same overgroup
            o = int(ct.orders[x])
            y = 0
            for k in range(1, o + 1):
                y = ct.mult[y, x]
                if gcd(k, o) == 1:
                    tried[y] = True
            new_gens = gens + [x]
            sub = ct.closure(new_gens)
            key = sub.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if keep is not None and not keep(sub):
                continue
            sig = _signature(ct, sub)
            bucket = by_sig.setdefault(sig, [])
            mask = np.zeros(n, dtype=np.bool_)
            mask[sub] = True
            found = False
            for r in bucket:
                if _kernels.find_conjugator(ct.mult, ct.inv, reps[r][0], mask, conj_by) >= 0:
                    found = True
                    break
            if found:
                continue
            bucket.append(len(reps))
            reps.append((sub, new_gens))
            if len(reps) > max_classes:
                raise ResourceLimitError("too many subgroup classes")
    return reps


def conjugacy_canonical(ct, members, conj_by):
    """Lexicographically least sorted conjugate (local indices)."""
    return tuple(int(v) for v in _kernels.min_conjugate(ct.mult, ct.inv, members, conj_by))


# ---------------------------------------------------------------- S_g part

@functools.lru_cache(maxsize=None)
def _sym_table(g):
    t = tables(g)
    ct = CayleyTable.__new__(CayleyTable)
    ct.g = g
    ct.elements = np.arange(t.n_perm, dtype=np.int64)
    ct.n = t.n_perm
    ct.mult = np.ascontiguousarray(t.pmul, dtype=np.int64)
    ct.inv = np.ascontiguousarray(t.pinv, dtype=np.int64)
    orders = np.zeros(t.n_perm, dtype=np.int64)
    for a in range(t.n_perm):
        y, k = a, 1
        while y != 0:
            y = t.pmul[y, a]
            k += 1
        orders[a] = k
    ct.orders = orders
    return ct


def _perm_transitive(g, members):
    perms = tables(g).perms[members]
    reach = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for y in perms[:, x]:
            y = int(y)
            if y not in reach:
                reach.add(y)
                frontier.append(y)
    return len(reach) == g


@functools.lru_cache(maxsize=None)
def transitive_perm_groups(g):
    """All transitive subgroups of S_g (as sorted perm-index tuples).

    Returns a list of conjugacy classes, each a sorted list of its members.
    """
    ct = _sym_table(g)
    classes = []
    for members, _ in subgroup_classes(ct):
        if not _perm_transitive(g, members):
            continue
        conj = set()
        for t in range(ct.n):
            img = np.sort(ct.mult[ct.mult[t, members], ct.inv[t]])
            conj.add(tuple(int(v) for v in img))
        classes.append(sorted(conj))
    return classes


def _perm_gens(g, members):
    ct = _sym_table(g)
    gens = []
    have = np.array([0], dtype=np.int64)
    for x in members:
        if have.size == len(members):
            break
        if x == 0 or x in set(have.tolist()):
            continue
        gens.append(int(x))
        have = ct.closure(gens)
    return gens


def _union_find_orbits(items, movers):
    """Orbits of ``items`` (hashable) under maps; ``movers`` is a list of callables."""
    index = {it: i for i, it in enumerate(items)}
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, it in enumerate(items):
        for mv in movers:
            j = index[mv(it)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    out = {}
    for i, it in enumerate(items):
        out.setdefault(find(i), []).append(it)
    return list(out.values())


# ---------------------------------------------------------------- F_2 helpers

def _reduce(v, basis):
    """Reduce bitmask v by an echelon basis given as {pivot_bit: vector}."""
    for piv in sorted(basis, reverse=True):
        if v >> piv & 1:
            v ^= basis[piv]
    return v


def _echelon(vectors):
    basis = {}
    for v in vectors:
        v = _reduce(v, basis)
        if v:
            piv = v.bit_length() - 1
            # keep fully reduced so reduction gives canonical reps
            for k in list(basis):
                if basis[k] >> piv & 1:
                    basis[k] ^= v
            basis[piv] = v
    return basis


def _span(basis):
    out = [0]
    for v in basis.values():
        out += [x ^ v for x in out]
    return sorted(out)


def _act(g, p, f):
    """(p ⋆ f)[i] = f[p(i)], i.e. pbits."""
    return int(tables(g).pbits[p, f])


def _nullspace_f2(rows, nvars):
    """Basis of {x : r·x = 0 for all rows}, rows and x as int bitmasks."""
    piv_rows = {}
    for r in rows:
        for piv in sorted(piv_rows, reverse=True):
            if r >> piv & 1:
                r ^= piv_rows[piv]
        if r:
            piv = r.bit_length() - 1
            for k in list(piv_rows):
                if piv_rows[k] >> piv & 1:
                    piv_rows[k] ^= r
            piv_rows[piv] = r
    free = [b for b in range(nvars) if b not in piv_rows]
    basis = []
    for fb in free:
        x = 1 << fb
        for piv, r in piv_rows.items():
            if r >> fb & 1:
                x |= 1 << piv
        basis.append(x)
    return basis


# ---------------------------------------------------------------- W_{2g} part

@dataclass
class _HData:
    """Cocycle bookkeeping for one transitive H ⊆ S_g."""

    g: int
    members: tuple
    gens: list
    forms: dict        # perm index -> list of g linear forms (variable bitmasks)
    edges: list        # (h, j, h*h_j) triples closing a cycle in the BFS

    @classmethod
    def build(cls, g, members, gens):
        t = tables(g)
        k = len(gens)
        forms = {0: [0] * g}
        edges = []
        order = [0]
        head = 0
        while head < len(order):
            h = order[head]
            head += 1
            fh = forms[h]
            for j, hj in enumerate(gens):
                nxt = int(t.pmul[h, hj])
                # f(h∘h_j)[i] = f_j[i] + f(h)[h_j(i)]
                new = [(1 << (j * g + i)) ^ fh[int(t.perms[hj, i])] for i in range(g)]
                if nxt in forms:
                    edges.append((forms[nxt], new))
                else:
                    forms[nxt] = new
                    order.append(nxt)
        return cls(g, tuple(members), list(gens), forms, edges)

    def invariant_subspaces(self):
        """H-invariant subspaces of F_2^g containing the all-ones vector."""
        g = self.g
        full = (1 << g) - 1
        start = _echelon([full])
        found = {tuple(_span(start))}
        queue = [start]
        out = [start]
        while queue:
            b = queue.pop()
            span = set(_span(b))
            for v in range(1 << g):
                if v in span:
                    continue
                orbit = {v}
                stack = [v]
                while stack:
                    x = stack.pop()
                    for h in self.gens:
                        y = _act(g, h, x)
                        if y not in orbit:
                            orbit.add(y)
                            stack.append(y)
                nb = _echelon(list(b.values()) + sorted(orbit))
                key = tuple(_span(nb))
                if key not in found:
                    found.add(key)
                    queue.append(nb)
                    out.append(nb)
        return sorted(out, key=lambda b: (len(b), tuple(_span(b))))

    def cocycles(self, cbasis):
        """Cocycle value tuples (f_1..f_k reduced mod C), one per group."""
        g, k = self.g, len(self.gens)
        nvars = g * k
        cvecs = list(cbasis.values())
        annih = [a for a in range(1 << g)
                 if all(bin(a & c).count("1") % 2 == 0 for c in cvecs)]
        ann_basis = list(_echelon(annih).values())
        rows = []
        for old, new in self.edges:
            for a in ann_basis:
                r = 0
                for i in range(g):
                    if a >> i & 1:
                        r ^= old[i] ^ new[i]
                if r:
                    rows.append(r)
        sol = _nullspace_f2(rows, nvars)
        # quotient by C^k: reduce each solution's blocks mod C
        mask = (1 << g) - 1

        def canon(x):
            return tuple(_reduce(x >> (j * g) & mask, cbasis) for j in range(k))

        reps = {canon(0)}
        frontier = [canon(0)]
        for s in sol:
            cs = canon(s)
            if cs in reps:
                continue
            new = [tuple(_reduce(a ^ b, cbasis) for a, b in zip(r, cs)) for r in frontier]
            frontier = frontier + new
            reps.update(new)
        return sorted(reps)

    def evaluate(self, fvals):
        """Map perm index -> flip bitmask for the cocycle with generator values ``fvals``."""
        g = self.g
        assign = 0
        for j, f in enumerate(fvals):
            assign |= f << (j * g)
        out = {}
        for h, form in self.forms.items():
            v = 0
            for i, lf in enumerate(form):
                if bin(lf & assign).count("1") & 1:
                    v |= 1 << i
            out[h] = v
        return out


def _group_elements(g, hdata, cbasis, fvals):
    section = hdata.evaluate(fvals)
    cspan = np.array(_span(cbasis), dtype=np.int64)
    codes = []
    for h, f in section.items():
        codes.append((h << g) | (f ^ cspan))
    return np.sort(np.concatenate(codes))


@dataclass(frozen=True)
class TransitiveClass:
    """One Stab(w)-class of transitive subgroups containing iota."""

    group: PermGroup
    key: tuple         # (H members, C span, cocycle values)
    orbit_size: int    # number of distinct conjugates under Stab(w)... within the H stratum

    @property
    def order(self):
        return self.group.order


def enumerate_transitive_subgroups(g, w, limit=MAX_G):
    """One representative per Stab(w)-class of transitive G ⊆ W_{2g} with iota ∈ G.

    Sorted by order, then by the class key.
    """
    if g > limit:
        raise ResourceLimitError(f"g={g} exceeds the configured limit {limit}")
    if w.g != g:
        raise ValueError("weight function has the wrong dimension")
    return [c.group for c in transitive_classes(w)]


def transitive_classes(w):
    g = w.g
    t = tables(g)
    stab = stabilizer_of_weight(w)
    s_codes = stab.elements
    s_perm = np.unique(s_codes >> g)
    sct = _sym_table(g)
    p_gens = [int(x) for x in _perm_gens(g, s_perm)]

    out = []
    for cls in transitive_perm_groups(g):
        # split the S_g-class of H into P-orbits, P = image of Stab(w)
        def mv(hm, x):
            return tuple(sorted(int(sct.mult[sct.mult[x, a], sct.inv[x]]) for a in hm))

        orbits = _union_find_orbits(cls, [functools.partial(mv, x=x) for x in p_gens])
        for orb in orbits:
            H = min(orb)
            out.extend(_classes_over(w, H, stab))
    out.sort(key=lambda c: (c.order, c.key))
    return out


def _classes_over(w, H, stab):
    g = w.g
    t = tables(g)
    Hset = set(H)
    hgens = _perm_gens(g, np.array(H, dtype=np.int64))
    hd = _HData.build(g, H, hgens)
    # N = {s in Stab(w): s+ normalizes H}
    sp = stab.elements >> g
    norm_perm = set()
    for p in np.unique(sp):
        p = int(p)
        pi = int(t.pinv[p])
        if all(int(t.pmul[t.pmul[p, h], pi]) in Hset for h in hgens):
            norm_perm.add(p)
    n_elems = stab.elements[np.isin(sp, list(norm_perm))]
    n_gens = small_generating_set(g, n_elems)

    items = []
    for cb in hd.invariant_subspaces():
        for fv in hd.cocycles(cb):
            items.append((tuple(_span(cb)), fv))
    if not items:
        return []
    basis_of = {}
    section_cache = {}

    def section(item):
        if item not in section_cache:
            cspan, fv = item
            cb = basis_of.setdefault(cspan, _echelon([c for c in cspan if c]))
            section_cache[item] = hd.evaluate(fv)
        return section_cache[item]

    def conj_by(item, s):
        cspan, fv = item
        sinv = int(t.inv(s))
        sp_ = s >> g
        spi = int(t.pinv[sp_])
        newc = sorted(int(t.mul(t.mul(s, c), sinv)) for c in cspan)
        cb = basis_of.setdefault(tuple(newc), _echelon([c for c in newc if c]))
        sec = section(item)
        vals = []
        for hj in hgens:
            h = int(t.pmul[t.pmul[spi, hj], sp_])
            e = (h << g) | sec[h]
            ce = int(t.mul(t.mul(s, e), sinv))
            assert ce >> g == hj
            vals.append(_reduce(ce & t.mask, cb))
        return (tuple(newc), tuple(vals))

    movers = [functools.partial(lambda it, s: conj_by(it, s), s=int(s)) for s in n_gens]
    orbits = _union_find_orbits(items, movers)
    res = []
    for orb in orbits:
        rep = min(orb)
        cspan, fv = rep
        cb = basis_of.setdefault(cspan, _echelon([c for c in cspan if c]))
        elems = _group_elements(g, hd, cb, fv)
        gens = small_generating_set(g, elems)
        grp = PermGroup.from_codes(g, gens, elems)
        res.append(TransitiveClass(grp, (H, cspan, fv), len(orb)))
    return res
