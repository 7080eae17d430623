import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weil_lab.errors import InvalidGeneratorError, ResourceLimitError, SizeMismatchError, ValidationError
from weil_lab.groups import (CayleyTable, PermGroup, SignedPermutation, canonical_key, compose,
                             conjugation_element, contains_iota, format_cycles, full_group, generate,
                             iota_code, is_transitive, orbits, parse_group, small_generating_set,
                             stabilizer_of_weight, tables)
from weil_lab.subgroups import enumerate_transitive_subgroups, subgroup_classes, transitive_perm_groups
from weil_lab.weights import NewtonPolygon, WeightFunction, all_newton_polygons, weight_from_newton


def sp(text, g):
    return SignedPermutation.parse(text, g)


SIGMA = "(1 2 1~ 2~)"


def test_compose_identity_and_inverse():
    s = sp(SIGMA, 2)
    e = SignedPermutation.identity(2)
    assert compose(e, s) == s
    assert compose(s, s.inverse()) == e


def test_compose_four_cycle_squares_to_iota():
    s = sp(SIGMA, 2)
    assert compose(s, s) == sp("(1 1~)(2 2~)", 2)


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatchError):
        compose(SignedPermutation.identity(2), SignedPermutation.identity(3))


def test_conjugation_element_small():
    assert str(conjugation_element(1)) == "(1 1~)"
    assert str(conjugation_element(2)) == "(1 1~)(2 2~)"


def test_iota_commutes_with_all_of_w4():
    iota = conjugation_element(2)
    W = full_group(2)
    assert W.order == 8
    for c in W.elements:
        s = SignedPermutation.from_code(2, int(c))
        assert compose(s, iota) == compose(iota, s)


@pytest.mark.parametrize("g", range(1, 7))
def test_iota_central_random(g, rng):
    t = tables(g)
    codes = rng.integers(0, t.order, size=1000)
    iota = iota_code(g)
    assert (t.mul(codes, iota) == t.mul(iota, codes)).all()


def test_generate_examples():
    assert generate([conjugation_element(2)]).order == 2
    C4 = generate([sp(SIGMA, 2)])
    assert C4.order == 4 and iota_code(2) in C4
    gens = [sp("(1 2)(1~ 2~)", 2), sp("(1 1~)", 2), sp("(2 2~)", 2)]
    assert generate(gens).order == 8


def test_invalid_generator():
    with pytest.raises(InvalidGeneratorError):
        SignedPermutation(2, (1, 0, 2, 3))  # swaps 1 and 2 but fixes their partners
    with pytest.raises(ValidationError):
        SignedPermutation.parse("(1 5)", 2)


def test_transitivity_examples():
    assert not is_transitive(generate([conjugation_element(2)]))
    assert is_transitive(generate([sp(SIGMA, 2)]))
    for g in range(1, 5):
        assert is_transitive(full_group(g))


@pytest.mark.parametrize("text,order,gens", [
    ("0,0,1,1", 2, ["(1 2)(1~ 2~)"]),
    ("1/2,1/2,1/2,1/2", 8, None),
    ("0,1/2,1/2,1", 2, ["(2 2~)"]),
])
def test_stabilizer_examples(text, order, gens):
    S = stabilizer_of_weight(weight_from_newton(NewtonPolygon.parse(text)))
    assert S.order == order
    if gens:
        assert S == generate([sp(x, 2) for x in gens])


def test_supersingular_stabilizer_is_everything():
    for g in range(1, 6):
        w = weight_from_newton(NewtonPolygon((0.5,) * (2 * g)))
        assert stabilizer_of_weight(w).order == 2 ** g * np.prod(range(1, g + 1))


# ------------------------------------------------------------ encoding

def _dense_compose(a, b):
    return tuple(a[y] for y in b)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.data())
def test_code_product_matches_dense(g, data):
    t = tables(g)
    a = data.draw(st.integers(0, t.order - 1))
    b = data.draw(st.integers(0, t.order - 1))
    A, B = SignedPermutation.from_code(g, a), SignedPermutation.from_code(g, b)
    assert compose(A, B).code == int(t.mul(a, b))
    assert A.inverse().code == int(t.inv(a))
    assert SignedPermutation.from_code(g, a).code == a


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.data())
def test_pairing_preserved(g, data):
    s = SignedPermutation.from_code(g, data.draw(st.integers(0, tables(g).order - 1)))
    for x in range(2 * g):
        assert s(2 * g - 1 - x) == 2 * g - 1 - s(x)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.data())
def test_cycle_notation_round_trip(g, data):
    s = SignedPermutation.from_code(g, data.draw(st.integers(0, tables(g).order - 1)))
    assert SignedPermutation.parse(str(s), g) == s


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.data())
def test_lagrange(g, data):
    t = tables(g)
    k = data.draw(st.integers(1, 3))
    gens = [data.draw(st.integers(0, t.order - 1)) for _ in range(k)]
    G = PermGroup.from_codes(g, gens)
    assert t.order % G.order == 0
    prod = t.mul(G.elements[:, None], G.elements[None, :])
    assert G.contains_all(prod.ravel())


# ------------------------------------------------------------ canonical keys

def test_canonical_key_trivial_by_separates():
    W = full_group(2)
    triv = generate([SignedPermutation.identity(2)])
    K1 = generate([sp("(1 2)(1~ 2~)", 2), conjugation_element(2)])
    K2 = generate([sp("(1 1~)", 2), sp("(2 2~)", 2)])
    assert canonical_key(K1, triv) != canonical_key(K2, triv)
    assert canonical_key(K1, W) != canonical_key(K2, W)  # different orbit structure


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.data())
def test_canonical_key_orbit_invariance(g, data):
    t = tables(g)
    G = PermGroup.from_codes(g, [data.draw(st.integers(0, t.order - 1)) for _ in range(2)])
    by = full_group(g)
    tau = data.draw(st.integers(0, t.order - 1))
    conj = np.sort(t.mul(t.mul(tau, G.elements), t.inv(tau)))
    H = PermGroup.from_codes(g, small_generating_set(g, conj), conj)
    assert canonical_key(G, by) == canonical_key(H, by)


# ------------------------------------------------------------ enumeration

def _brute_force_classes(w):
    """Every subgroup class of W_{2g} under Stab(w), filtered afterwards."""
    g = w.g
    t = tables(g)
    ct = CayleyTable(g, np.arange(t.order))
    S = stabilizer_of_weight(w)
    out = []
    for members, _ in subgroup_classes(ct, ct.index(S.elements)):
        codes = ct.codes(members)
        G = PermGroup.from_codes(g, small_generating_set(g, codes), codes)
        if contains_iota(G) and is_transitive(G):
            out.append(G)
    return out


def test_enumeration_g1():
    w = weight_from_newton(NewtonPolygon.parse("0,1"))
    res = enumerate_transitive_subgroups(1, w)
    assert len(res) == 1 and res[0].order == 2


def test_enumeration_g2_ordinary():
    # W_4 is dihedral of order 8; of its two Klein four-subgroups only one
    # is transitive, so the classes are C4, that Klein group and W_4.
    w = weight_from_newton(NewtonPolygon.parse("0,0,1,1"))
    res = enumerate_transitive_subgroups(2, w)
    assert [G.order for G in res] == [4, 4, 8]
    C4 = generate([sp(SIGMA, 2)])
    K = generate([sp("(1 2)(1~ 2~)", 2), conjugation_element(2)])
    S = stabilizer_of_weight(w)
    keys = {canonical_key(G, S) for G in res}
    assert canonical_key(C4, S) in keys and canonical_key(K, S) in keys


@pytest.mark.parametrize("g", [2, 3])
def test_enumeration_matches_brute_force(g):
    for npl in all_newton_polygons(g):
        w = WeightFunction.from_newton(npl)
        S = stabilizer_of_weight(w)
        fast = sorted(canonical_key(G, S) for G in enumerate_transitive_subgroups(g, w))
        slow = sorted(canonical_key(G, S) for G in _brute_force_classes(w))
        assert fast == slow, npl


@pytest.mark.slow
@pytest.mark.parametrize("text", ["0,0,0,0,1,1,1,1", "0,0,1/2,1/2,1/2,1/2,1,1", "1/4,1/4,1/4,1/4,3/4,3/4,3/4,3/4"])
def test_enumeration_matches_brute_force_g4(text):
    w = weight_from_newton(NewtonPolygon.parse(text))
    S = stabilizer_of_weight(w)
    fast = sorted(canonical_key(G, S) for G in enumerate_transitive_subgroups(4, w))
    slow = sorted(canonical_key(G, S) for G in _brute_force_classes(w))
    assert fast == slow


def test_enumeration_g3_contains_dihedral_class():
    w = weight_from_newton(NewtonPolygon.parse("0,0,1/2,1/2,1,1"))
    res = enumerate_transitive_subgroups(3, w)
    assert any(G.order == 12 for G in res)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_enumeration_invariants(g):
    for npl in all_newton_polygons(g):
        w = WeightFunction.from_newton(npl)
        a = enumerate_transitive_subgroups(g, w)
        b = enumerate_transitive_subgroups(g, w)
        assert [G.elements.tobytes() for G in a] == [G.elements.tobytes() for G in b]
        S = stabilizer_of_weight(w)
        assert len({canonical_key(G, S) for G in a}) == len(a)
        assert all(is_transitive(G) and contains_iota(G) for G in a)
        assert [G.order for G in a] == sorted(G.order for G in a)


def test_enumeration_limit():
    w = weight_from_newton(NewtonPolygon.parse("0,0,0,1,1,1"))
    with pytest.raises(ResourceLimitError):
        enumerate_transitive_subgroups(3, w, limit=2)


def test_transitive_subgroups_of_symmetric_groups():
    # numbers of conjugacy classes of transitive groups of degree 1..6
    assert [len(transitive_perm_groups(g)) for g in range(1, 7)] == [1, 1, 2, 5, 5, 16]


def _quotient_table(g):
    """Cayley table of W_{2g}/<iota>, elements = pairs {c, c*iota}."""
    t = tables(g)
    iota = iota_code(g)
    reps = np.array(sorted({min(c, int(t.mul(c, iota))) for c in range(t.order)}), dtype=np.int64)
    ct = CayleyTable.__new__(CayleyTable)
    prod = t.mul(reps[:, None], reps[None, :])
    prod = np.minimum(prod, t.mul(prod, iota))
    ct.g, ct.elements, ct.n = g, reps, reps.size
    ct.mult = np.searchsorted(reps, prod)
    inv = t.inv(reps)
    ct.inv = np.searchsorted(reps, np.minimum(inv, t.mul(inv, iota)))
    orders = np.ones(reps.size, dtype=np.int64)
    for i in range(reps.size):
        y, k = i, 1
        while y != 0:
            y = ct.mult[y, i]
            k += 1
        orders[i] = k
    ct.orders = orders
    return ct


@pytest.mark.parametrize("g", [1, 2, 3])
def test_quotient_trick_counts(g):
    t = tables(g)
    full = CayleyTable(g, np.arange(t.order))
    ident = np.array([0])
    above_iota = [m for m, _ in subgroup_classes(full, ident)
                  if int(full.index(iota_code(g))) in set(m.tolist())]
    quotient = subgroup_classes(_quotient_table(g), ident)
    assert len(above_iota) == len(quotient)


def test_orbits_and_format():
    C4 = generate([sp(SIGMA, 2)])
    assert orbits(C4) == [(0, 1, 2, 3)]
    assert format_cycles(tuple(range(4)), 2) == "()"
    G = parse_group("(1 2)(1~ 2~), (1 1~)(2 2~)", 2)
    assert G.order == 4
