"""Exact linear algebra over Q: rank by fraction-free elimination, kernels."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Fraction

    @classmethod
    def from_rows(cls, rows, cols=None):
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), cols, data)

    def transpose(self):
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def apply(self, v):
        return tuple(sum((a * Fraction(b) for a, b in zip(r, v)), Fraction(0)) for r in self.entries)


def _as_rows(M):
    if isinstance(M, RatMatrix):
        return [list(r) for r in M.entries]
    return [[Fraction(x) for x in r] for r in M]


def _integer_rows(rows):
    out = []
    for r in rows:
        d = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * d) for x in r])
    return out


def bareiss_rank(int_rows):
    """Rank of an integer matrix (list of lists) by Bareiss elimination."""
    a = [list(r) for r in int_rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            ai = a[i]
            f = ai[col]
            for j in range(col + 1, n):
                ai[j] = (p * ai[j] - f * a[rank][j]) // prev
            ai[col] = 0
        prev = p
        rank += 1
    return rank


def rank(M) -> int:
    """Exact rank over Q."""
    rows = _integer_rows(_as_rows(M))
    if rows and len(rows) > len(rows[0]):
        rows = [list(c) for c in zip(*rows)]
    return bareiss_rank(rows)


def rref(M):
    """Reduced row echelon form with Fractions; returns (rows, pivot columns)."""
    a = _as_rows(M)
    m = len(a)
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def kernel_basis(M):
    """Basis of the right null space, one vector per free column."""
    if isinstance(M, RatMatrix):
        n = M.cols
    else:
        n = len(M[0]) if len(M) else 0
    rows, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in zip(rows, pivots):
            v[pc] = -r[f]
        basis.append(tuple(v))
    return basis
