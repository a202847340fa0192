"""Sullivan algebras (ΛV, ∂): validation, truncation and cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy

from . import linalg
from .gca import AlgebraError, Derivation, Element, FreeGCA, GradedPiece, Generator


class ModelError(ValueError):
    pass


class TruncationError(ModelError):
    pass


class NotACocycle(ModelError):
    pass


@dataclass
class Violation:
    kind: str  # "degree", "minimality", "d_squared", "generator_degree", "unknown_generator"
    generator: str
    message: str
    detail: str = ""

    def __str__(self):
        return self.message


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class SullivanModel:
    """
    A free graded-commutative algebra with a differential prescribed on generators.

    Truncations share the algebra object of their root model, so elements of
    ΛV^{≤n} are literally elements of ΛV and inclusions need no conversion.
    """

    def __init__(
        self,
        algebra: FreeGCA,
        generator_names: Iterable[str] | None = None,
        differential: Mapping[str, Element] | None = None,
        *,
        root: "SullivanModel | None" = None,
        cutoff: int | None = None,
    ):
        self.algebra = algebra
        names = set(g.name for g in algebra.generators) if generator_names is None else set(generator_names)
        for n in names:
            if n not in algebra.index:
                raise AlgebraError(f"unknown generator {n!r}")
        self.generators: tuple[Generator, ...] = tuple(g for g in algebra.generators if g.name in names)
        self.names = tuple(g.name for g in self.generators)
        differential = dict(differential or {})
        for n in differential:
            if n not in names:
                raise AlgebraError(f"differential assigned to unknown generator {n!r}")
        self.differential: dict[str, Element] = {
            n: differential.get(n, algebra.zero()) for n in self.names
        }
        self.root = root if root is not None else self
        self.cutoff = cutoff
        self._d = Derivation(algebra, self.differential, odd=True)
        self._cache: dict = {}

    @classmethod
    def build(cls, generators, differential: Mapping[str, "Element | str"] | None = None) -> "SullivanModel":
        """
        Convenience constructor.

        ``generators`` is a mapping or sequence of (name, degree); differential
        values may be expression strings in the model-file grammar.
        """
        from .parser import parse_expression

        items = generators.items() if isinstance(generators, Mapping) else generators
        alg = FreeGCA(Generator(n, d) for n, d in items)
        diff = {}
        for n, e in (differential or {}).items():
            diff[n] = parse_expression(e, alg) if isinstance(e, str) else e
        return cls(alg, None, diff)

    # -- identity -------------------------------------------------------

    def _key(self):
        return (self.algebra.generators, self.names, tuple((n, self.differential[n]) for n in self.names))

    def __eq__(self, other):
        return isinstance(other, SullivanModel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        ds = "; ".join(f"∂{n} = {e}" for n, e in self.differential.items() if e)
        return f"Λ({gens}{'; ' + ds if ds else ''})"

    # -- structure ------------------------------------------------------

    @property
    def is_truncation(self) -> bool:
        return self.root is not self

    def gen(self, name: str) -> Element:
        if name not in self.differential:
            raise AlgebraError(f"unknown generator {name!r}")
        return self.algebra.gen(name)

    def degree_of(self, name: str) -> int:
        return self.algebra.generators[self.algebra.index[name]].degree

    def generators_of_degree(self, n: int) -> tuple[Generator, ...]:
        return tuple(g for g in self.generators if g.degree == n)

    def names_of_degree(self, n: int) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators if g.degree == n)

    def generator_degrees(self) -> list[int]:
        return sorted({g.degree for g in self.generators})

    @property
    def top_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    def dim_v(self, n: int) -> int:
        return len(self.generators_of_degree(n))

    def check_element(self, e: Element) -> None:
        if e.algebra != self.algebra:
            raise AlgebraError("element belongs to a different algebra")
        extra = e.generator_names() - set(self.names)
        if extra:
            raise AlgebraError(f"unknown generator(s) {sorted(extra)} for this model")

    def d(self, e: Element) -> Element:
        self.check_element(e)
        return self._d(e)

    def piece(self, n: int) -> GradedPiece:
        return self.algebra.graded_piece(n, self.names)

    def differential_matrix(self, n: int) -> numpy.ndarray:
        """Matrix of ∂ from degree n to degree n+1 in the canonical monomial bases."""
        key = ("dmat", n)
        if key not in self._cache:
            src = self.piece(n) if n >= 0 else None
            tgt = self.piece(n + 1)
            if src is None or len(src) == 0:
                M = linalg.zeros(len(tgt), 0)
            else:
                cols = [tgt.coords(self._d(e)) for e in src.elements()]
                M = linalg.from_columns(cols, len(tgt))
            self._cache[key] = M
        return self._cache[key]

    # -- operations -----------------------------------------------------

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        for g in self.generators:
            dv = self.differential[g.name]
            if g.degree < 2:
                report.violations.append(Violation(
                    "generator_degree", g.name,
                    f"generator {g.name} has degree {g.degree}; degree >= 2 is required"))
            extra = dv.generator_names() - set(self.names)
            if extra:
                report.violations.append(Violation(
                    "unknown_generator", g.name,
                    f"∂{g.name} uses generators outside the model: {', '.join(sorted(extra))}"))
                continue
            if not dv:
                continue
            degs = dv.degrees
            if degs != {g.degree + 1}:
                report.violations.append(Violation(
                    "degree", g.name,
                    f"degree mismatch: ∂{g.name} must have degree {g.degree + 1}, found {sorted(degs)}",
                    str(dv)))
            linear = dv.word_length_part(1)
            if dv.min_word_length() < 2:
                shown = str(linear) if linear else "1"
                report.violations.append(Violation(
                    "minimality", g.name,
                    f"minimality violated: ∂{g.name} has word-length-1 term {shown}"
                    if linear else f"minimality violated: ∂{g.name} has a constant term",
                    shown))
        if report.valid:
            for g in self.generators:
                dd = self._d(self.differential[g.name])
                if dd:
                    report.violations.append(Violation(
                        "d_squared", g.name, f"∂²{g.name} = {dd} ≠ 0", str(dd)))
        return report

    def truncate(self, n: int) -> "SullivanModel":
        """The sub-algebra ΛV^{≤n}, checked to be closed under ∂."""
        if n < 0:
            raise ValueError("cutoff must be non-negative")
        keep = [g.name for g in self.generators if g.degree <= n]
        if len(keep) == len(self.generators):
            return self
        key = ("trunc", n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        keep_set = set(keep)
        for name in keep:
            extra = self.differential[name].generator_names() - keep_set
            if extra:
                raise TruncationError(
                    f"truncation at {n} is not closed: ∂{name} involves {', '.join(sorted(extra))}")
        root = self.root
        t = SullivanModel(self.algebra, keep, {k: self.differential[k] for k in keep}, root=root, cutoff=n)
        # share the cache across equal truncations of the same root
        shared = root._cache.setdefault(("trunc-of-root", t._key()), t)
        self._cache[key] = shared
        return shared

    def cohomology(self, n: int) -> "CohomologyBasis":
        key = ("H", n)
        if key not in self._cache:
            self._cache[key] = CohomologyBasis._compute(self, n)
        return self._cache[key]

    def betti(self, n: int) -> int:
        return self.cohomology(n).dim

    def linear_part(self, e: Element) -> tuple[tuple[str, ...], list[Fraction]]:
        return linear_part(self, e)


@dataclass
class CohomologyBasis:
    """
    Representative cocycles of H^n together with an exact class-membership solver.

    ``class_coords(c)`` returns ``(a, u)`` with ``c = Σ a_i rep_i + ∂u``; the
    witness ``u`` is the solver's deterministic choice.
    """

    model: SullivanModel
    degree: int
    representatives: tuple[Element, ...]
    _solver: linalg.Solver = field(repr=False, default=None)
    _n_boundary: int = field(repr=False, default=0)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @staticmethod
    def _compute(m: SullivanModel, n: int) -> "CohomologyBasis":
        if n < 0:
            raise ValueError("degree must be non-negative")
        P = m.piece(n)
        dn = m.differential_matrix(n)
        if n >= 1:
            B = m.differential_matrix(n - 1)
        else:
            B = linalg.zeros(len(P), 0)
        Z = linalg.kernel(dn)
        nb = B.shape[1]
        Zm = linalg.from_columns(Z, len(P))
        _, piv = linalg.rref(linalg.hstack(B, Zm))
        reps_vec = [Z[p - nb] for p in piv if p >= nb]
        reps = tuple(P.element_of(v) for v in reps_vec)
        A = linalg.hstack(B, linalg.from_columns(reps_vec, len(P)))
        return CohomologyBasis(m, n, reps, linalg.Solver(A), nb)

    def class_coords(self, c: Element) -> tuple[list[Fraction], Element]:
        m = self.model
        if c and c.degree != self.degree:
            raise AlgebraError(f"expected a homogeneous element of degree {self.degree}")
        m.check_element(c)
        if m.d(c):
            raise NotACocycle(f"{c} is not a cocycle")
        x = self._solver.solve(m.piece(self.degree).coords(c))
        if x is None:
            raise NotACocycle(f"{c} could not be expressed in the cohomology basis")
        nb = self._n_boundary
        if self.degree >= 1:
            u = m.piece(self.degree - 1).element_of(list(x[:nb]))
        else:
            u = m.algebra.zero()
        return list(x[nb:]), u

    def class_of(self, c: Element) -> list[Fraction]:
        return self.class_coords(c)[0]

    def is_exact(self, c: Element) -> bool:
        return all(a == 0 for a in self.class_of(c))

    def element_of(self, coeffs) -> Element:
        out = self.model.algebra.zero()
        for a, r in zip(coeffs, self.representatives):
            if a:
                out = out + r * Fraction(a)
        return out


def apply_differential(m: SullivanModel, e: Element) -> Element:
    return m.d(e)


def validate(m: SullivanModel) -> ValidationReport:
    return m.validate()


def truncate(m: SullivanModel, n: int) -> SullivanModel:
    return m.truncate(n)


def cohomology(m: SullivanModel, n: int) -> CohomologyBasis:
    return m.cohomology(n)


def linear_part(m: SullivanModel, e: Element) -> tuple[tuple[str, ...], list[Fraction]]:
    """
    Word-length-1 component of a homogeneous element, as coordinates on the
    generators of its degree (canonical order).
    """
    if not e.is_homogeneous():
        raise AlgebraError("linear_part needs a homogeneous element")
    m.check_element(e)
    n = e.degree
    if n is None:
        return (), []
    names = m.names_of_degree(n)
    lin = e.word_length_part(1)
    coeffs = []
    for name in names:
        mono = ((m.algebra.index[name], 1),)
        coeffs.append(lin.terms.get(mono, Fraction(0)))
    return names, coeffs


def betti_numbers(m: SullivanModel, top: int) -> list[int]:
    return [m.betti(k) for k in range(top + 1)]
