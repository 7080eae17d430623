"""Hot loops of the group search.

Each kernel exists twice: a numba ``@njit`` version and a plain numpy
version with the same signature and results.  Setting the environment
variable ``WEIL_LAB_NUMBA=0`` (or not having numba installed) selects
the numpy versions.  Both paths are exercised by the test suite.
"""
import os

import numpy as np


def _want_numba():
    flag = os.environ.get("WEIL_LAB_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _want_numba()


# ---------------------------------------------------------------- numpy

def _closure_np(mult, gens, n):
    """Subgroup generated by local indices ``gens`` in a Cayley table."""
    mask = np.zeros(n, dtype=np.bool_)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size:
        nxt = mult[frontier[:, None], gens[None, :]].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return np.flatnonzero(mask)


def _find_conjugator_np(mult, inv, members, target_mask, conj_by):
    """First ``t`` in ``conj_by`` with t*members*t^-1 inside target, else -1."""
    members = np.asarray(members, dtype=np.int64)
    for t in conj_by:
        img = mult[mult[t, members], inv[t]]
        if target_mask[img].all():
            return int(t)
    return -1


def _min_conjugate_np(mult, inv, members, conj_by):
    members = np.asarray(members, dtype=np.int64)
    conj_by = np.asarray(conj_by, dtype=np.int64)
    best = None
    chunk = max(1, 200000 // max(1, members.size))
    for start in range(0, conj_by.size, chunk):
        ts = conj_by[start:start + chunk]
        img = mult[mult[ts[:, None], members[None, :]], inv[ts][:, None]]
        img.sort(axis=1)
        order = np.lexsort(img.T[::-1])
        cand = img[order[0]]
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return best


def _signed_scan_np(rows, tvecs, rhs):
    """Mask of columns t with rows @ t == rhs[t] in every row."""
    if tvecs.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    prod = rows @ tvecs.T
    return (prod == rhs[None, :]).all(axis=0)


# ---------------------------------------------------------------- numba

def _build_numba():
    from numba import njit

    @njit(cache=True)
    def closure(mult, gens, n):
        mask = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        mask[0] = True
        queue[0] = 0
        head = 0
        tail = 1
        while head < tail:
            a = queue[head]
            head += 1
            for k in range(gens.shape[0]):
                b = mult[a, gens[k]]
                if not mask[b]:
                    mask[b] = True
                    queue[tail] = b
                    tail += 1
        return np.flatnonzero(mask)

    @njit(cache=True)
    def find_conjugator(mult, inv, members, target_mask, conj_by):
        for k in range(conj_by.shape[0]):
            t = conj_by[k]
            ok = True
            for j in range(members.shape[0]):
                if not target_mask[mult[mult[t, members[j]], inv[t]]]:
                    ok = False
                    break
            if ok:
                return t
        return -1

    @njit(cache=True)
    def min_conjugate(mult, inv, members, conj_by):
        m = members.shape[0]
        best = np.empty(m, dtype=np.int64)
        cur = np.empty(m, dtype=np.int64)
        have = False
        for k in range(conj_by.shape[0]):
            t = conj_by[k]
            ti = inv[t]
            for j in range(m):
                cur[j] = mult[mult[t, members[j]], ti]
            cur.sort()
            if not have:
                best[:] = cur
                have = True
                continue
            for j in range(m):
                if cur[j] != best[j]:
                    if cur[j] < best[j]:
                        best[:] = cur
                    break
        return best

    @njit(cache=True)
    def signed_scan(rows, tvecs, rhs):
        out = np.zeros(tvecs.shape[0], dtype=np.bool_)
        for k in range(tvecs.shape[0]):
            ok = True
            for r in range(rows.shape[0]):
                s = 0
                for c in range(rows.shape[1]):
                    s += rows[r, c] * tvecs[k, c]
                if s != rhs[k]:
                    ok = False
                    break
            out[k] = ok
        return out

    return closure, find_conjugator, min_conjugate, signed_scan


if USE_NUMBA:
    _nb = _build_numba()
    _closure_nb, _find_conjugator_nb, _min_conjugate_nb, _signed_scan_nb = _nb
else:
    _nb = None


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def closure(mult, gens, n, use_numba=None):
    if USE_NUMBA if use_numba is None else (use_numba and _nb is not None):
        return _closure_nb(mult, _i64(gens), n)
    return _closure_np(mult, gens, n)


def find_conjugator(mult, inv, members, target_mask, conj_by, use_numba=None):
    if USE_NUMBA if use_numba is None else (use_numba and _nb is not None):
        return int(_find_conjugator_nb(mult, inv, _i64(members), target_mask, _i64(conj_by)))
    return _find_conjugator_np(mult, inv, members, target_mask, conj_by)


def min_conjugate(mult, inv, members, conj_by, use_numba=None):
    if USE_NUMBA if use_numba is None else (use_numba and _nb is not None):
        return _min_conjugate_nb(mult, inv, _i64(members), _i64(conj_by))
    return _min_conjugate_np(mult, inv, members, conj_by)


def signed_scan(rows, tvecs, rhs, use_numba=None):
    rows, tvecs, rhs = _i64(rows), _i64(tvecs), _i64(rhs)
    if USE_NUMBA if use_numba is None else (use_numba and _nb is not None):
        return _signed_scan_nb(rows, tvecs, rhs)
    return _signed_scan_np(rows, tvecs, rhs)
