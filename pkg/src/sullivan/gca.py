"""
Free graded-commutative algebras over Q.

Monomials are stored in normal form: a tuple of ``(generator index, exponent)``
pairs with ascending index, where generators are indexed in the canonical
``(degree, name)`` order of their algebra.  Signs produced by reordering odd
letters are folded into the coefficient, so equality of elements is equality
of their term maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE: Monomial = ()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class AlgebraError(ValueError):
    pass


class FreeGCA:
    """
    The free graded-commutative algebra on a finite set of generators.

    Generators of degree >= 1 are accepted; this keeps every graded piece
    finite dimensional.  (Sullivan models insist on degree >= 2, the cylinder
    construction needs the degree-1 shifts.)
    """

    def __init__(self, generators: Iterable[Generator]):
        gens = sorted(generators, key=lambda g: (g.degree, g.name))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError("generator names must be unique")
        for g in gens:
            if g.degree < 1:
                raise AlgebraError(f"generator {g.name} has degree {g.degree} < 1")
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.index: dict[str, int] = {g.name: i for i, g in enumerate(gens)}
        self._deg = tuple(g.degree for g in gens)
        self._odd = tuple(g.degree % 2 == 1 for g in gens)
        self._mul_cache: dict = {}
        self._pieces: dict = {}

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FreeGCA) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeGCA({inner})"

    # -- elements -------------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {ONE: Fraction(1)})

    def scalar(self, c) -> "Element":
        return Element(self, {ONE: Fraction(c)})

    def gen(self, name: str) -> "Element":
        try:
            i = self.index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None
        return Element(self, {((i, 1),): Fraction(1)})

    def gens(self, *names: str) -> list["Element"]:
        return [self.gen(n) for n in names]

    def monomial_element(self, mono: Monomial, coeff=1) -> "Element":
        return Element(self, {mono: Fraction(coeff)})

    # -- monomial bookkeeping ------------------------------------------

    def degree_of(self, mono: Monomial) -> int:
        return sum(self._deg[i] * e for i, e in mono)

    @staticmethod
    def word_length(mono: Monomial) -> int:
        return sum(e for _, e in mono)

    def is_odd(self, i: int) -> bool:
        return self._odd[i]

    def names_in(self, mono: Monomial) -> list[str]:
        return [self.generators[i].name for i, _ in mono]

    def mono_str(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
        """Return ``(sign, a*b)`` in normal form, or ``(0, None)`` if it vanishes."""
        if not a:
            return 1, b
        if not b:
            return 1, a
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        odd = self._odd
        sign = 1
        b_odd = [j for j, _ in b if odd[j]]
        result: tuple[int, Monomial | None] | None = None
        if b_odd:
            for i, _ in a:
                if not odd[i]:
                    continue
                for j in b_odd:
                    if i > j:
                        sign = -sign
                    elif i == j:
                        result = (0, None)
                        break
                if result is not None:
                    break
        if result is None:
            merged = dict(a)
            for j, e in b:
                merged[j] = merged.get(j, 0) + e
            result = (sign, tuple(sorted(merged.items())))
        self._mul_cache[key] = result
        return result

    def normalize(self, raw: Sequence[str], coeff=1) -> "Element":
        """
        Sort a word of generator names into normal form.

        Each transposition of two odd letters contributes a sign; a repeated
        odd letter makes the product vanish.
        """
        idx = []
        for name in raw:
            if name not in self.index:
                raise AlgebraError(f"unknown generator {name!r}")
            idx.append(self.index[name])
        sign = 1
        # insertion sort, counting odd-odd swaps
        for k in range(1, len(idx)):
            j = k
            while j > 0 and idx[j - 1] > idx[j]:
                if self._odd[idx[j - 1]] and self._odd[idx[j]]:
                    sign = -sign
                idx[j - 1], idx[j] = idx[j], idx[j - 1]
                j -= 1
        counts: dict[int, int] = {}
        for i in idx:
            counts[i] = counts.get(i, 0) + 1
            if self._odd[i] and counts[i] > 1:
                return self.zero()
        mono = tuple(sorted(counts.items()))
        return Element(self, {mono: sign * Fraction(coeff)})

    # -- graded pieces --------------------------------------------------

    def graded_piece(self, degree: int, names: Iterable[str] | None = None) -> "GradedPiece":
        """All monomials of the given degree in the listed generators (default: all)."""
        if names is None:
            allowed = tuple(range(len(self.generators)))
        else:
            allowed = tuple(sorted(self.index[n] for n in names))
        key = (degree, allowed)
        piece = self._pieces.get(key)
        if piece is None:
            monos = sorted(self._enumerate(degree, allowed))
            piece = GradedPiece(self, degree, tuple(monos))
            self._pieces[key] = piece
        return piece

    def _enumerate(self, degree: int, allowed: tuple[int, ...]) -> Iterator[Monomial]:
        if degree < 0:
            return

        def rec(pos: int, remaining: int, acc: list):
            if remaining == 0:
                yield tuple(acc)
                return
            if pos == len(allowed):
                return
            i = allowed[pos]
            d = self._deg[i]
            top = 1 if self._odd[i] else remaining // d
            for e in range(min(top, remaining // d), 0, -1):
                acc.append((i, e))
                yield from rec(pos + 1, remaining - e * d, acc)
                acc.pop()
            yield from rec(pos + 1, remaining, acc)

        yield from rec(0, degree, [])


class Element:
    """A Q-linear combination of normal-form monomials.  Treat as immutable."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: FreeGCA, terms: Mapping[Monomial, Fraction]):
        self.algebra = algebra
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}
        self._hash = None

    def _check(self, other: "Element") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element(self.algebra, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        alg = self.algebra
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = alg.mono_mul(m1, m2)
                if sign:
                    out[m] = out.get(m, 0) + sign * c1 * c2
        return Element(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {ONE: Fraction(other)}
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(sorted(self.terms.items())):
            neg = c < 0
            a = -c if neg else c
            body = self.algebra.mono_str(m)
            if not m:
                s = str(a)
            elif a == 1:
                s = body
            else:
                s = f"{a}*{body}"
            if k == 0:
                out.append(("-" if neg else "") + s)
            else:
                out.append((" - " if neg else " + ") + s)
        return "".join(out)

    # -- grading --------------------------------------------------------

    @property
    def degrees(self) -> set[int]:
        return {self.algebra.degree_of(m) for m in self.terms}

    @property
    def degree(self) -> int | None:
        """The common degree of all terms; None for 0 or inhomogeneous elements."""
        ds = self.degrees
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def generator_names(self) -> set[str]:
        gens = self.algebra.generators
        return {gens[i].name for m in self.terms for i, _ in m}

    def word_length_part(self, k: int) -> "Element":
        return Element(self.algebra, {m: c for m, c in self.terms.items() if FreeGCA.word_length(m) == k})

    def max_word_length(self) -> int:
        return max((FreeGCA.word_length(m) for m in self.terms), default=0)

    def min_word_length(self) -> int:
        return min((FreeGCA.word_length(m) for m in self.terms), default=0)


def multiply(a: Element, b: Element) -> Element:
    return a * b


def normalize(algebra: FreeGCA, raw: Sequence[str], coeff=1) -> Element:
    return algebra.normalize(raw, coeff)


def graded_piece(algebra: FreeGCA, degree: int, names: Iterable[str] | None = None) -> "GradedPiece":
    return algebra.graded_piece(degree, names)


class GradedPiece:
    """Canonical monomial basis of one degree of a free algebra."""

    def __init__(self, algebra: FreeGCA, degree: int, monomials: tuple):
        self.algebra = algebra
        self.degree = degree
        self.monomials = monomials
        self.position = {m: k for k, m in enumerate(monomials)}

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def elements(self) -> list[Element]:
        return [self.algebra.monomial_element(m) for m in self.monomials]

    def coords(self, e: Element) -> numpy.ndarray:
        vec = numpy.array([Fraction(0)] * len(self.monomials), dtype=object)
        for m, c in e.terms.items():
            k = self.position.get(m)
            if k is None:
                d = self.algebra.degree_of(m)
                if d != self.degree:
                    raise AlgebraError(f"term {self.algebra.mono_str(m)} has degree {d}, expected {self.degree}")
                raise AlgebraError(f"monomial {self.algebra.mono_str(m)} lies outside this basis")
            vec[k] = c
        return vec

    def element_of(self, vec) -> Element:
        if len(vec) != len(self.monomials):
            raise AlgebraError("coordinate vector has the wrong length")
        return Element(self.algebra, {m: Fraction(c) for m, c in zip(self.monomials, vec)})


def coords(e: Element, basis: GradedPiece) -> numpy.ndarray:
    return basis.coords(e)


class Derivation:
    """
    A graded derivation determined by its values on generators.

    ``odd`` selects the Koszul rule delta(ab) = delta(a) b + (-1)^|a| a delta(b);
    generators without an image are sent to 0.
    """

    def __init__(self, algebra: FreeGCA, images: Mapping[str, Element], odd: bool):
        self.algebra = algebra
        self.odd = odd
        self.images = {algebra.index[n]: e for n, e in images.items() if e}
        self._cache: dict = {}

    def __call__(self, e: Element) -> Element:
        out: dict = {}
        for mono, c in e.terms.items():
            for m, c2 in self._on_monomial(mono).terms.items():
                out[m] = out.get(m, 0) + c * c2
        return Element(self.algebra, out)

    def _on_monomial(self, mono: Monomial) -> Element:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        alg = self.algebra
        result = alg.zero()
        prefix_deg = 0
        for pos, (i, k) in enumerate(mono):
            img = self.images.get(i)
            if img is not None:
                left = alg.monomial_element(mono[:pos])
                right = alg.monomial_element(mono[pos + 1:])
                mid = img if k == 1 else alg.monomial_element(((i, k - 1),), k) * img
                term = left * mid * right
                if self.odd and prefix_deg % 2:
                    term = -term
                result = result + term
            prefix_deg += k * alg._deg[i]
        self._cache[mono] = result
        return result


class AlgebraMap:
    """Multiplicative extension of an assignment on generators."""

    def __init__(self, source: FreeGCA, target: FreeGCA, images: Mapping[str, Element]):
        self.source = source
        self.target = target
        self.images = {source.index[n]: e for n, e in images.items()}
        self._powers: dict = {}
        self._cache: dict = {}

    def _power(self, i: int, k: int) -> Element:
        key = (i, k)
        hit = self._powers.get(key)
        if hit is None:
            hit = self.images[i] if k == 1 else self._power(i, k - 1) * self.images[i]
            self._powers[key] = hit
        return hit

    def on_monomial(self, mono: Monomial) -> Element:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        out = self.target.one()
        for i, k in mono:
            if i not in self.images:
                raise AlgebraError(f"no image assigned to {self.source.generators[i].name!r}")
            out = out * self._power(i, k)
        self._cache[mono] = out
        return out

    def __call__(self, e: Element) -> Element:
        out: dict = {}
        for mono, c in e.terms.items():
            for m, c2 in self.on_monomial(mono).terms.items():
                out[m] = out.get(m, 0) + c * c2
        return Element(self.target, out)
