from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import DATA, MODELS, load
from sullivan.gca import FreeGCA, Generator
from sullivan.parser import ParseError, parse_expression, parse_map, parse_model, print_map, print_model

MODEL_FILES = sorted(MODELS.glob("*.sul"))

MALFORMED = {
    "bad_char.sul": (3, 11, "unexpected character"),
    "bad_keyword.sul": (1, 1, "expected 'generator' or 'd'"),
    "dangling_op.sul": (3, 12, "expected a generator name"),
    "duplicate.sul": (3, 11, "declared twice"),
    "low_degree.sul": (1, 13, "at least 2"),
    "missing_star.sul": (3, 9, "'*'"),
    "odd_power.sul": (4, 7, "odd generator"),
    "second_differential.sul": (4, 3, "second differential"),
    "undeclared.sul": (2, 3, "undeclared name 'y'"),
    "zero_denominator.sul": (3, 9, "zero denominator"),
}


def test_enough_model_files():
    assert len(MODEL_FILES) >= 20


@pytest.mark.parametrize("path", MODEL_FILES, ids=lambda p: p.stem)
def test_round_trip(path):
    m = parse_model(path.read_text()).model()
    again = parse_model(print_model(m)).model()
    assert again == m
    assert print_model(again) == print_model(m)


@pytest.mark.parametrize("name", sorted(MALFORMED))
def test_malformed_locations(name):
    line, column, fragment = MALFORMED[name]
    with pytest.raises(ParseError) as exc:
        parse_model((DATA / "malformed" / name).read_text())
    assert (exc.value.line, exc.value.column) == (line, column)
    assert fragment in exc.value.message


def test_every_malformed_file_is_listed():
    assert {p.name for p in (DATA / "malformed").glob("*.sul")} == set(MALFORMED)


def test_s2_from_text():
    mf = parse_model("generator x 2 \n generator y 3 \n d y = x^2")
    m = mf.model()
    assert m.differential["y"] == m.gen("x") ** 2
    assert mf.location("y") == (3, 4)


def test_exact_coefficients():
    m = parse_model("generator x 2\ngenerator y 3\nd y = 1/2*x^2 - x^2\n").model()
    assert m.differential["y"] == Fraction(-1, 2) * m.gen("x") ** 2


def test_minimality_is_a_validation_error_not_a_parse_error():
    m = load("broken")
    assert "minimality" in m.validate().kinds()


def test_comments_and_blank_lines():
    text = "# header\n\ngenerator x 2  # even\ngenerator y 3\nd y = x^2  # sphere\n"
    assert parse_model(text).model() == load("s2")


def test_parse_map():
    m = load("s2w6")
    images = parse_map("f w = w + x^3\n# nothing else\n", m)
    assert images == {"w": m.gen("w") + m.gen("x") ** 3}
    assert parse_map(print_map(images), m) == images
    with pytest.raises(ParseError):
        parse_map("f q = x\n", m)
    with pytest.raises(ParseError):
        parse_map("g w = w\n", m)


ALG = FreeGCA([Generator("x", 2), Generator("a", 3), Generator("y", 4)])


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 4), st.sampled_from(["x", "x^2*a", "y", "a*y", "x*y^2"])),
                max_size=5))
def test_expression_print_parse_round_trip(terms):
    e = ALG.zero()
    for num, den, word in terms:
        e = e + parse_expression(f"{num}/{den}*{word}" if num >= 0 else f"-{-num}/{den}*{word}", ALG)
    assert parse_expression(str(e), ALG) == e
