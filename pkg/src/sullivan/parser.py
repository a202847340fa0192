"""
Reader and printer for ``.sul`` model files and map files.

Model file::

    # the 2-sphere
    generator x 2
    generator y 3
    d y = x^2

Map files use the same expression grammar with lines ``f NAME = expr``.
Every diagnostic carries a 1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .gca import Element, FreeGCA, Generator

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<op>[-+*/^=])|(?P<comment>#.*)"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str, line: int) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind != "ws":
            out.append(Token(kind, m.group(), line, pos + 1))
        pos = m.end()
    out.append(Token("end", "", line, len(text.rstrip("\n")) + 1 if text else 1))
    return out


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def take(self) -> Token:
        t = self.tokens[self.k]
        if t.kind != "end":
            self.k += 1
        return t

    def expect(self, kind: str, text: str | None = None, what: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = what or (repr(text) if text else kind)
            got = "end of line" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {want}, found {got}", t.line, t.column)
        return self.take()


# Terms as parsed, before they are bound to an algebra: (coefficient, [(name, exponent, token)])
_RawTerm = tuple


def _parse_expr_tokens(cur: _Cursor) -> list[_RawTerm]:
    terms = []
    sign = 1
    if cur.tok.kind == "op" and cur.tok.text in "+-":
        sign = -1 if cur.take().text == "-" else 1
    if cur.tok.kind == "int" and cur.tok.text == "0" and cur.tokens[cur.k + 1].kind == "end":
        cur.take()
        return terms
    terms.append(_parse_term(cur, sign))
    while cur.tok.kind == "op" and cur.tok.text in "+-":
        sign = -1 if cur.take().text == "-" else 1
        terms.append(_parse_term(cur, sign))
    t = cur.tok
    if t.kind != "end":
        raise ParseError(f"unexpected {t.text!r}", t.line, t.column)
    return terms


def _parse_term(cur: _Cursor, sign: int) -> _RawTerm:
    coeff = Fraction(sign)
    if cur.tok.kind == "int":
        num = cur.take()
        value = Fraction(int(num.text))
        if cur.tok.kind == "op" and cur.tok.text == "/":
            cur.take()
            den = cur.expect("int", what="a denominator")
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.column)
            value = Fraction(int(num.text), int(den.text))
        coeff *= value
        cur.expect("op", "*", what="'*' after the coefficient")
    factors = [_parse_factor(cur)]
    while cur.tok.kind == "op" and cur.tok.text == "*":
        cur.take()
        factors.append(_parse_factor(cur))
    return coeff, factors


def _parse_factor(cur: _Cursor):
    name = cur.expect("name", what="a generator name")
    exp = 1
    if cur.tok.kind == "op" and cur.tok.text == "^":
        cur.take()
        e = cur.expect("int", what="an exponent")
        exp = int(e.text)
        if exp < 1:
            raise ParseError("exponent must be at least 1", e.line, e.column)
    return name.text, exp, name


def _bind(terms: list[_RawTerm], algebra: FreeGCA, allowed: set[str] | None = None) -> Element:
    out = algebra.zero()
    for coeff, factors in terms:
        word = []
        for name, exp, tok in factors:
            if name not in algebra.index or (allowed is not None and name not in allowed):
                raise ParseError(f"undeclared name {name!r}", tok.line, tok.column)
            if exp > 1 and algebra.generators[algebra.index[name]].odd:
                raise ParseError(f"odd generator {name!r} cannot be raised to a power > 1", tok.line, tok.column)
            word.extend([name] * exp)
        out = out + algebra.normalize(word, coeff)
    return out


def parse_expression(text: str, algebra: FreeGCA, line: int = 1) -> Element:
    cur = _Cursor(_tokenize(text, line))
    return _bind(_parse_expr_tokens(cur), algebra)


@dataclass
class ModelFile:
    generators: list[Generator] = field(default_factory=list)
    differential: dict[str, Element] = field(default_factory=dict)
    generator_locations: dict[str, tuple[int, int]] = field(default_factory=dict)
    differential_locations: dict[str, tuple[int, int]] = field(default_factory=dict)
    algebra: FreeGCA | None = None

    def model(self):
        from .model import SullivanModel

        return SullivanModel(self.algebra, None, self.differential)

    def location(self, name: str) -> tuple[int, int] | None:
        return self.differential_locations.get(name) or self.generator_locations.get(name)


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for k, line in enumerate(text.splitlines(), start=1):
        yield k, line


def parse_model(text: str) -> ModelFile:
    """Parse a ``.sul`` model.  Generators must be declared before use."""
    mf = ModelFile()
    declared: dict[str, int] = {}
    pending: list[tuple[str, list[_RawTerm], Token]] = []
    for lineno, line in _lines(text):
        toks = _tokenize(line, lineno)
        cur = _Cursor(toks)
        head = cur.tok
        if head.kind == "end":
            continue
        if head.kind == "name" and head.text == "generator":
            cur.take()
            name = cur.expect("name", what="a generator name")
            deg = cur.expect("int", what="a degree")
            cur.expect("end", what="end of line")
            if name.text in declared:
                raise ParseError(f"generator {name.text!r} declared twice", name.line, name.column)
            if int(deg.text) < 2:
                raise ParseError(f"degree of {name.text!r} must be at least 2", deg.line, deg.column)
            declared[name.text] = int(deg.text)
            mf.generators.append(Generator(name.text, int(deg.text)))
            mf.generator_locations[name.text] = (name.line, name.column)
        elif head.kind == "name" and head.text == "d":
            cur.take()
            name = cur.expect("name", what="a generator name")
            if name.text not in declared:
                raise ParseError(f"undeclared name {name.text!r}", name.line, name.column)
            if name.text in mf.differential_locations:
                raise ParseError(f"second differential for {name.text!r}", name.line, name.column)
            cur.expect("op", "=", what="'='")
            terms = _parse_expr_tokens(cur)
            _check_declared(terms, declared)
            pending.append((name.text, terms, name))
            mf.differential_locations[name.text] = (name.line, name.column)
        else:
            raise ParseError(f"expected 'generator' or 'd', found {head.text!r}", head.line, head.column)
    mf.algebra = FreeGCA(mf.generators)
    for name, terms, tok in pending:
        mf.differential[name] = _bind(terms, mf.algebra)
    return mf


def _check_declared(terms: list[_RawTerm], declared: dict[str, int]) -> None:
    for _, factors in terms:
        for name, exp, tok in factors:
            if name not in declared:
                raise ParseError(f"undeclared name {name!r}", tok.line, tok.column)
            if exp > 1 and declared[name] % 2 == 1:
                raise ParseError(f"odd generator {name!r} cannot be raised to a power > 1", tok.line, tok.column)


def parse_map(text: str, model) -> dict[str, Element]:
    """Parse ``f NAME = expr`` lines against a model; returns the listed images."""
    images: dict[str, Element] = {}
    allowed = set(model.names)
    for lineno, line in _lines(text):
        cur = _Cursor(_tokenize(line, lineno))
        head = cur.tok
        if head.kind == "end":
            continue
        if not (head.kind == "name" and head.text == "f"):
            raise ParseError(f"expected 'f', found {head.text!r}", head.line, head.column)
        cur.take()
        name = cur.expect("name", what="a generator name")
        if name.text not in allowed:
            raise ParseError(f"undeclared name {name.text!r}", name.line, name.column)
        if name.text in images:
            raise ParseError(f"second image for {name.text!r}", name.line, name.column)
        cur.expect("op", "=", what="'='")
        images[name.text] = _bind(_parse_expr_tokens(cur), model.algebra, allowed)
    return images


def print_model(model) -> str:
    lines = [f"generator {g.name} {g.degree}" for g in model.generators]
    for g in model.generators:
        dv = model.differential[g.name]
        if dv:
            lines.append(f"d {g.name} = {dv}")
    return "\n".join(lines) + "\n"


def print_map(images: dict[str, Element]) -> str:
    return "".join(f"f {n} = {e}\n" for n, e in images.items())
