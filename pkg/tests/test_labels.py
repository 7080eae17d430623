import pytest
from hypothesis import given, strategies as st

from weil_lab.analyzer import analyze, newton_polygon_of
from weil_lab.errors import ValidationError
from weil_lab.labels import IsogenyLabel, decode_int, decode_label, encode_int
from weil_lab.weights import NewtonPolygon

from conftest import reference_rows

EXAMPLES = sorted({r["example"] for r in reference_rows() if r["example"]})


@pytest.mark.parametrize("label,g,q,half", [
    ("3.2.ac_b_a", 3, 2, [-2, 1, 0]),
    ("1.2.a", 1, 2, [0]),
    ("4.3.ae_k_ay_bw", 4, 3, [-4, 10, -24, 48]),
])
def test_decode_examples(label, g, q, half):
    P = decode_label(label)
    assert (P.g, P.q) == (g, q)
    assert list(P.coefficients[1:g + 1]) == half
    assert P.coefficients[-1] == q ** g


def test_one_two_a_is_t2_plus_2():
    assert decode_label("1.2.a").coefficients == (1, 0, 2)


@pytest.mark.parametrize("label", EXAMPLES)
def test_round_trip_reference(label):
    lab = IsogenyLabel.parse(label)
    assert str(lab) == label
    P = decode_label(label)
    assert str(IsogenyLabel.from_coefficients(P.g, P.q, P.coefficients[1:P.g + 1])) == label


@given(st.integers(-10 ** 9, 10 ** 9))
def test_int_codec_round_trip(n):
    assert decode_int(encode_int(n)) == n


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=6))
def test_canonical_codes_round_trip(s):
    n = decode_int(s)
    if encode_int(n) == s:
        assert decode_int(encode_int(n)) == n


@pytest.mark.parametrize("bad", ["3.6.a_a_a", "3.2.a_a", "x.2.a", "3.2.A_b_c", "1.1.a"])
def test_bad_labels(bad):
    with pytest.raises(ValidationError):
        decode_label(bad)


@pytest.mark.parametrize("row", [r for r in reference_rows() if r["example"]], ids=lambda r: r["example"])
def test_analyzer_agrees_with_reference(row):
    P = decode_label(row["example"])
    assert newton_polygon_of(P) == NewtonPolygon.parse(row["newton"])
    rep = analyze(P)
    assert rep.angle_rank == row["angle_rank"]
    assert P.g - rep.relations.rank == row["angle_rank"]
    assert bool(rep.exceptional) is row["exceptional"]
