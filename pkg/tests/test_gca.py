from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sullivan.gca import AlgebraError, Derivation, FreeGCA, Generator

ALG = FreeGCA([Generator("x", 2), Generator("a", 3), Generator("y", 4), Generator("b", 5), Generator("c", 3)])


def koszul_sign(word, algebra):
    """Sign of sorting a word, by counting inverted pairs of odd letters."""
    order = {g.name: k for k, g in enumerate(algebra.generators)}
    odd = [w for w in word if algebra.generators[order[w]].odd]
    inv = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if order[odd[i]] > order[odd[j]])
    return -1 if inv % 2 else 1


@st.composite
def homogeneous(draw, max_degree=10):
    deg = draw(st.integers(0, max_degree))
    piece = ALG.graded_piece(deg)
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=len(piece), max_size=len(piece)))
    return piece.element_of(coeffs)


@given(homogeneous(), homogeneous())
def test_graded_commutativity(p, q):
    sign = -1 if (p.degree or 0) * (q.degree or 0) % 2 else 1
    assert p * q == sign * (q * p)


@given(homogeneous(6), homogeneous(6), homogeneous(6))
def test_associativity(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(homogeneous(), homogeneous(), homogeneous())
def test_distributivity(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(homogeneous())
def test_odd_squares_vanish(p):
    if p.degree is not None and p.degree % 2:
        assert p * p == 0


@given(st.lists(st.sampled_from(["x", "a", "y", "b", "c"]), max_size=6))
def test_normalize_sign_matches_inversion_count(word):
    e = ALG.normalize(word)
    names = [g.name for g in ALG.generators]
    odd = [w for w in word if ALG.generators[names.index(w)].odd]
    if len(odd) != len(set(odd)):
        assert e == 0
        return
    direct = ALG.one()
    for w in sorted(word, key=names.index):
        direct = direct * ALG.gen(w)
    assert e == koszul_sign(word, ALG) * direct


@settings(max_examples=50)
@given(homogeneous(), homogeneous())
def test_leibniz_for_arbitrary_odd_derivation(p, q):
    x, a, y, b, c = ALG.gens("x", "a", "y", "b", "c")
    D = Derivation(ALG, {"x": a, "a": x * x, "y": b, "b": x * y + 3 * x ** 3, "c": y}, odd=True)
    sign = -1 if (p.degree or 0) % 2 else 1
    assert D(p * q) == D(p) * q + sign * p * D(q)


def test_normalize_examples():
    a, c, x = ALG.gens("a", "c", "x")
    assert ALG.normalize(["c", "a"]) == -(a * c)
    assert ALG.normalize(["a", "a"]) == 0
    assert ALG.normalize(["x", "a", "x"], Fraction(1, 2)) == Fraction(1, 2) * x ** 2 * a


def test_graded_piece_counts():
    # degree 6 in x:2, a:3, c:3, y:4, b:5: x^3, x*y, a*c
    piece = ALG.graded_piece(6)
    assert sorted(str(e) for e in piece.elements()) == sorted(["x^3", "x*y", "a*c"])
    assert len(ALG.graded_piece(0)) == 1
    assert len(ALG.graded_piece(1)) == 0


@given(homogeneous())
def test_coords_round_trip(p):
    if p.degree is None:
        return
    piece = ALG.graded_piece(p.degree)
    assert piece.element_of(piece.coords(p)) == p


def test_printing():
    x, a, c = ALG.gens("x", "a", "c")
    e = Fraction(1, 2) * x ** 3 - a * c
    assert set(str(e).split(" - ")) == {"1/2*x^3", "a*c"}
    assert str(-x) == "-x"
    assert str(ALG.zero()) == "0"


def test_mixing_algebras_rejected():
    other = FreeGCA([Generator("x", 2)])
    with pytest.raises(AlgebraError):
        ALG.gen("x") + other.gen("x")
