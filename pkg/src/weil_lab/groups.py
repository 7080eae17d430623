"""Signed permutations and subgroups of the hyperoctahedral group W_{2g}.

Symbols are stored 0-based in the order ``1, ..., g, g~, ..., 1~``, so the
unbarred symbol ``i`` sits at ``i - 1``, its partner ``i~`` at ``2g - i``
and ``conj(x) = 2g - 1 - x``.

Every element of W_{2g} is also encoded as a single integer
``code = perm_index * 2**g + flips``: ``perm_index`` is the lexicographic
rank of the induced permutation of pairs and bit ``i`` of ``flips`` says
whether ``i + 1`` lands on a barred symbol.  All codes in
``range(2**g * g!)`` are valid, which lets groups be stored as sorted
integer arrays.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidGeneratorError, SizeMismatchError, ValidationError

MAX_G = 6


def conj_symbol(g, x):
    return 2 * g - 1 - x


def symbol_index(g, i, barred):
    """0-based slot of the symbol ``i`` (1-based) or ``i~``."""
    if not 1 <= i <= g:
        raise ValidationError(f"symbol {i} out of range 1..{g}")
    return 2 * g - i if barred else i - 1


def symbol_name(g, x):
    return f"{x + 1}" if x < g else f"{2 * g - x}~"


class _Tables:
    """Multiplication data for W_{2g} in the integer encoding."""

    def __init__(self, g):
        self.g = g
        perms = np.array(list(itertools.permutations(range(g))), dtype=np.int64).reshape(-1, g)
        self.perms = perms
        self.n_perm = perms.shape[0]
        self.order = self.n_perm << g
        self.mask = (1 << g) - 1
        weights = g ** np.arange(g - 1, -1, -1, dtype=np.int64)
        self._enc = perms @ weights
        # composite a∘b: (a∘b)(i) = a[b[i]]
        comp = np.take_along_axis(
            np.repeat(perms[:, None, :], self.n_perm, axis=1),
            np.repeat(perms[None, :, :], self.n_perm, axis=0),
            axis=2,
        )
        self.pmul = self.rank(comp)
        self.pinv = self.rank(np.argsort(perms, axis=1))
        fl = np.arange(1 << g, dtype=np.int64)
        fbits = (fl[:, None] >> np.arange(g)) & 1
        # pbits[p, f] has bit i equal to bit perms[p, i] of f
        sel = fbits[:, perms]  # (2^g, n_perm, g)
        self.pbits = (sel << np.arange(g)).sum(axis=2).T.copy()

    def rank(self, arr):
        enc = arr @ (self.g ** np.arange(self.g - 1, -1, -1, dtype=np.int64))
        return np.searchsorted(self._enc, enc)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        g = self.g
        pb = b >> g
        p = self.pmul[a >> g, pb]
        f = (b & self.mask) ^ self.pbits[pb, a & self.mask]
        return (p << g) | f

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.pinv[a >> self.g]
        return (p << self.g) | self.pbits[p, a & self.mask]

    def images(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        g = self.g
        bits = (codes[..., None] >> np.arange(g)) & 1
        y = self.perms[codes >> g]
        unb = np.where(bits == 1, 2 * g - 1 - y, y)
        return np.concatenate([unb, (2 * g - 1 - unb)[..., ::-1]], axis=-1)

    def encode(self, images):
        img = np.asarray(images, dtype=np.int64)
        g = self.g
        unb = img[..., :g]
        flips = ((unb >= g).astype(np.int64) << np.arange(g)).sum(axis=-1)
        perm = np.minimum(unb, 2 * g - 1 - unb)
        return (self.rank(perm) << g) | flips

    @functools.cached_property
    def all_images(self):
        return self.images(np.arange(self.order, dtype=np.int64)).astype(np.int8)

    @functools.cached_property
    def all_inverses(self):
        return self.inv(np.arange(self.order, dtype=np.int64))

    def perm_code(self, perm_index):
        return int(perm_index) << self.g


@functools.lru_cache(maxsize=None)
def tables(g) -> _Tables:
    if not 1 <= g <= MAX_G:
        from .errors import ResourceLimitError
        raise ResourceLimitError(f"g={g} outside the supported range 1..{MAX_G}")
    return _Tables(g)


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class SignedPermutation:
    """Element of W_{2g}; ``images[x]`` is the image of slot ``x``."""

    g: int
    images: tuple

    def __post_init__(self):
        g = self.g
        if len(self.images) != 2 * g or sorted(self.images) != list(range(2 * g)):
            raise InvalidGeneratorError("images do not form a bijection of the 2g symbols")
        for x in range(g):
            if self.images[conj_symbol(g, x)] != conj_symbol(g, self.images[x]):
                raise InvalidGeneratorError(
                    f"not pairing-preserving at symbol {symbol_name(g, x)}")

    @classmethod
    def from_code(cls, g, code):
        return cls(g, tuple(int(v) for v in tables(g).images(code)))

    @classmethod
    def identity(cls, g):
        return cls(g, tuple(range(2 * g)))

    @classmethod
    def parse(cls, text, g):
        return cls(g, parse_cycles(text, g))

    @property
    def code(self):
        return int(tables(self.g).encode(self.images))

    def __call__(self, x):
        return self.images[x]

    def compose(self, other):
        return compose(self, other)

    def inverse(self):
        out = [0] * (2 * self.g)
        for x, y in enumerate(self.images):
            out[y] = x
        return SignedPermutation(self.g, tuple(out))

    def is_identity(self):
        return self.images == tuple(range(2 * self.g))

    def __str__(self):
        return format_cycles(self.images, self.g)


def compose(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    """The map x -> a(b(x))."""
    if a.g != b.g:
        raise SizeMismatchError(f"cannot compose elements of W_{2 * a.g} and W_{2 * b.g}")
    return SignedPermutation(a.g, tuple(a.images[y] for y in b.images))


def conjugation_element(g) -> SignedPermutation:
    """Complex conjugation iota = (1 1~)(2 2~)...(g g~)."""
    if g < 1:
        raise ValidationError("g must be positive")
    return SignedPermutation(g, tuple(conj_symbol(g, x) for x in range(2 * g)))


def iota_code(g):
    return (1 << g) - 1


_SYM = re.compile(r"^(\d+)(~?)$")


def parse_cycles(text, g):
    """Cycle notation like ``(1 2)(1~ 2~)`` to an image tuple.

    Pairing preservation is checked by the ``SignedPermutation`` constructor.
    """
    img = list(range(2 * g))
    text = text.strip()
    if text in ("", "()", "e", "id"):
        return tuple(img)
    if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
        raise ValidationError(f"malformed cycle notation: {text!r}")
    seen = set()
    for body in re.findall(r"\(([^()]*)\)", text):
        syms = []
        for tok in body.split():
            m = _SYM.match(tok)
            if not m:
                raise ValidationError(f"bad symbol {tok!r}")
            x = symbol_index(g, int(m.group(1)), bool(m.group(2)))
            if x in seen:
                raise ValidationError(f"symbol {tok} repeated")
            seen.add(x)
            syms.append(x)
        for a, b in zip(syms, syms[1:] + syms[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(images, g):
    order = list(range(g)) + [2 * g - 1 - i for i in range(g)]
    seen = set()
    out = []
    for start in order:
        if start in seen or images[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        y = images[start]
        while y != start:
            cyc.append(y)
            seen.add(y)
            y = images[y]
        out.append("(" + " ".join(symbol_name(g, x) for x in cyc) + ")")
    return "".join(out) or "()"


def format_code(g, code):
    return format_cycles(tuple(int(v) for v in tables(g).images(code)), g)


# ---------------------------------------------------------------- groups

def _close(g, gens):
    t = tables(g)
    mask = np.zeros(t.order, dtype=np.bool_)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64).ravel()
    if gens.size == 0:
        return np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = t.mul(frontier[:, None], gens[None, :]).ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return np.flatnonzero(mask).astype(np.int64)


@dataclass(frozen=True, eq=False)
class PermGroup:
    """Subgroup of W_{2g} given by generator codes and its sorted element codes."""

    g: int
    gens: tuple
    elements: np.ndarray = field(repr=False)

    @classmethod
    def from_codes(cls, g, gens, elements=None):
        gens = tuple(int(c) for c in gens)
        if elements is None:
            elements = _close(g, gens)
        elements = np.asarray(elements, dtype=np.int64)
        elements.setflags(write=False)
        return cls(g, gens, elements)

    @property
    def order(self):
        return int(self.elements.size)

    @property
    def generators(self):
        return [SignedPermutation.from_code(self.g, c) for c in self.gens]

    def __contains__(self, code):
        if isinstance(code, SignedPermutation):
            code = code.code
        i = np.searchsorted(self.elements, code)
        return bool(i < self.elements.size and self.elements[i] == code)

    def contains_all(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        i = np.searchsorted(self.elements, codes)
        i = np.minimum(i, self.elements.size - 1)
        return bool((self.elements[i] == codes).all())

    def key(self):
        return (self.g, self.elements.tobytes())

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PermGroup(g={self.g}, order={self.order}, gens={self.generator_strings()})"

    def generator_strings(self):
        return [format_code(self.g, c) for c in self.gens]

    def is_subgroup_of(self, other):
        return other.contains_all(self.elements)

    def images(self):
        return tables(self.g).images(self.elements)


def generate(gens, g=None) -> PermGroup:
    """Closure of a list of ``SignedPermutation`` (or codes with ``g``)."""
    gens = list(gens)
    if g is None:
        if not gens:
            raise ValidationError("need g when no generators are given")
        g = gens[0].g
    codes = []
    for s in gens:
        if isinstance(s, SignedPermutation):
            if s.g != g:
                raise SizeMismatchError("generators of different degrees")
            codes.append(s.code)
        else:
            codes.append(int(s))
    return PermGroup.from_codes(g, codes)


def parse_group(text, g) -> PermGroup:
    """Generators separated by commas, e.g. ``(1 2~)(2 1~), (1 1~)(2 2~)``."""
    parts = [p for p in re.split(r"\s*[,;]\s*", text.strip()) if p]
    return generate([SignedPermutation.parse(p, g) for p in parts] or [SignedPermutation.identity(g)])


def full_group(g) -> PermGroup:
    t = tables(g)
    gens = [t.perm_code(t.rank(np.array([1, 0] + list(range(2, g))))) if g > 1 else 0,
            t.perm_code(t.rank(np.roll(np.arange(g), -1))), 1]
    return PermGroup.from_codes(g, [c for c in gens if c], np.arange(t.order, dtype=np.int64))


def orbits(G: PermGroup):
    """Orbits of G on the 2g symbols, each a sorted tuple, sorted by first slot."""
    g = G.g
    imgs = tables(g).images(np.asarray(G.gens, dtype=np.int64)).reshape(-1, 2 * g)
    parent = list(range(2 * g))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in imgs:
        for x, y in enumerate(row):
            a, b = find(x), find(int(y))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for x in range(2 * g):
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(v) for v in groups.values())


def is_transitive(G: PermGroup) -> bool:
    return len(orbits(G)) == 1


def contains_iota(G: PermGroup) -> bool:
    return iota_code(G.g) in G


def stabilizer_of_weight(w) -> PermGroup:
    """{s in W_{2g} : w(s(x)) = w(x) for all x}, by filtering all of W_{2g}."""
    t = tables(w.g)
    vals = np.asarray(w.scaled, dtype=np.int64)
    ok = (vals[t.all_images] == vals[None, :]).all(axis=1)
    elems = np.flatnonzero(ok).astype(np.int64)
    return PermGroup.from_codes(w.g, small_generating_set(w.g, elems), elems)


def subgroup_where(G: PermGroup, keep) -> PermGroup:
    elems = G.elements[np.asarray(keep, dtype=bool)]
    return PermGroup.from_codes(G.g, small_generating_set(G.g, elems), elems)


def intersect(A: PermGroup, B: PermGroup) -> PermGroup:
    elems = np.intersect1d(A.elements, B.elements)
    return PermGroup.from_codes(A.g, small_generating_set(A.g, elems), elems)


def small_generating_set(g, elements):
    """Greedy generators for the group whose element codes are given."""
    elements = np.asarray(elements, dtype=np.int64)
    target = elements.size
    gens = []
    have = np.array([0], dtype=np.int64)
    # try elements in a fixed order; big cyclic subgroups first helps
    for c in elements:
        if have.size == target:
            break
        c = int(c)
        if c == 0 or _member(have, c):
            continue
        gens.append(c)
        have = _close(g, gens)
    return tuple(gens)


def _member(sorted_arr, c):
    i = np.searchsorted(sorted_arr, c)
    return i < sorted_arr.size and sorted_arr[i] == c


def conjugate_codes(g, codes, t_code):
    t = tables(g)
    return np.sort(t.mul(t.mul(t_code, codes), t.inv(t_code)))


def canonical_key(G: PermGroup, by: PermGroup):
    """Lexicographically least sorted element list over {tGt^-1 : t in by}.

    Keys compare equal exactly when the groups are conjugate under ``by``.
    """
    t = tables(G.g)
    members = G.elements
    conj = by.elements
    best = None
    chunk = max(1, 400000 // max(1, members.size))
    for s in range(0, conj.size, chunk):
        ts = conj[s:s + chunk]
        img = t.mul(t.mul(ts[:, None], members[None, :]), t.inv(ts)[:, None])
        img.sort(axis=1)
        cand = img[np.lexsort(img.T[::-1])[0]]
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return (G.g,) + tuple(int(v) for v in best)


def element_orders(g, codes):
    """Order of each element, computed by repeated multiplication."""
    t = tables(g)
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros(codes.shape, dtype=np.int64)
    cur = codes.copy()
    k = 1
    while (out == 0).any():
        out[(cur == 0) & (out == 0)] = k
        cur = t.mul(cur, codes)
        k += 1
    return out


class CayleyTable:
    """Local multiplication table of a concrete group, indices into ``elements``.

    Index 0 is always the identity (codes are sorted and the identity is 0).
    """

    def __init__(self, g, elements):
        t = tables(g)
        self.g = g
        self.elements = np.asarray(elements, dtype=np.int64)
        n = self.elements.size
        self.n = n
        prod = t.mul(self.elements[:, None], self.elements[None, :])
        self.mult = np.searchsorted(self.elements, prod).astype(np.int64)
        self.inv = np.searchsorted(self.elements, t.inv(self.elements)).astype(np.int64)
        self.orders = element_orders(g, self.elements)

    def index(self, codes):
        return np.searchsorted(self.elements, np.asarray(codes, dtype=np.int64))

    def closure(self, gens):
        return _kernels.closure(self.mult, np.asarray(gens, dtype=np.int64), self.n)

    def codes(self, idx):
        return self.elements[np.asarray(idx, dtype=np.int64)]
