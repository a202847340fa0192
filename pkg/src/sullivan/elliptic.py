"""
Checks and reports for models of elliptic spaces.

Ellipticity cannot be certified from a finite degree window, so everything
here is a falsification test: a model either fails a necessary condition or
is reported as consistent with being elliptic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fmt import gl, sup
from .model import SullivanModel


class EllipticError(ValueError):
    pass


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class EllipticReport:
    cap: int
    betti: list[int]
    formal_dimension: int | None
    homotopy_degrees: list[int]
    ranks: list[int]
    checks: list[Check] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.formal_dimension is not None and all(c.ok for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self):
        return {
            "cap": self.cap,
            "betti": self.betti,
            "formal_dimension": self.formal_dimension,
            "homotopy_degrees": self.homotopy_degrees,
            "ranks": self.ranks,
            "elliptic_consistent": self.consistent,
            "checks": [c.to_dict() for c in self.checks],
        }


def default_cap(m: SullivanModel) -> int:
    """
    Window for the elliptic checks.

    2·top + 2 inverts the generator bound; the sum of the odd generator degrees
    bounds the formal dimension of any elliptic model, and the window must
    exceed it by a generator's worth of degrees.
    """
    top = m.top_degree
    odd_sum = sum(g.degree for g in m.generators if g.odd)
    return max(2 * top + 2, odd_sum + top + 1)


def elliptic_check(m: SullivanModel, degree_cap: int | None = None) -> EllipticReport:
    cap = default_cap(m) if degree_cap is None else degree_cap
    top = m.top_degree
    if cap < top + 1:
        raise EllipticError(f"cap {cap} is smaller than top generator degree + 1 = {top + 1}")
    betti = [m.betti(k) for k in range(cap + 1)]
    degs = m.generator_degrees()
    ranks = [m.dim_v(d) for d in degs]
    nonzero = [k for k, b in enumerate(betti) if b]
    p = max(nonzero)
    checks = []
    # cohomology must die out well inside the window, otherwise p is not a formal dimension
    window_ok = p <= cap - top
    checks.append(Check("window", window_ok,
                        f"H^k = 0 for {p} < k ≤ {cap}" if window_ok
                        else f"H^{p} ≠ 0 too close to the cap {cap}; no formal dimension within the window"))
    formal = p if window_ok else None
    if formal is None:
        return EllipticReport(cap, betti, None, degs, ranks, checks)
    top_ok = betti[p] == 1 and (p == 0 or betti[p - 1] == 0)
    checks.append(Check("top_class", top_ok, f"dim H^{p} = {betti[p]}, dim H^{p - 1} = {betti[p - 1] if p else 0}"))
    big = [g.name for g in m.generators if g.degree >= 2 * p + 2]
    checks.append(Check("generator_bound", not big,
                        f"V^i = 0 for i ≥ {2 * p + 2}" if not big else f"generators {big} of degree ≥ {2 * p + 2}"))
    dvp = m.dim_v(p)
    checks.append(Check("top_generators", dvp <= 1, f"dim V^{p} = {dvp}"))
    asym = [i for i in range(p + 1) if betti[i] != betti[p - i]]
    checks.append(Check("duality", not asym,
                        "dim H^i = dim H^{p-i} for all i" if not asym else f"asymmetric at degrees {asym}"))
    return EllipticReport(cap, betti, formal, degs, ranks, checks)


@dataclass
class PurityReport:
    pure: bool
    d_even_zero: bool
    d_odd_in_even: bool
    dim_even: int
    dim_odd: int
    odd_cohomology_vanishes: bool
    cap: int

    @property
    def f0_by_purity(self) -> bool:
        return self.pure and self.dim_even == self.dim_odd

    @property
    def agree(self) -> bool:
        return self.f0_by_purity == self.odd_cohomology_vanishes

    def to_dict(self):
        return {
            "pure": self.pure, "d_even_zero": self.d_even_zero, "d_odd_in_even": self.d_odd_in_even,
            "dim_even": self.dim_even, "dim_odd": self.dim_odd,
            "odd_cohomology_vanishes": self.odd_cohomology_vanishes, "cap": self.cap,
            "f0_by_purity": self.f0_by_purity, "agree": self.agree,
        }


def f0_check(m: SullivanModel, cap: int | None = None) -> PurityReport:
    cap = default_cap(m) if cap is None else cap
    even = [g for g in m.generators if not g.odd]
    odd = [g for g in m.generators if g.odd]
    even_names = {g.name for g in even}
    d_even_zero = all(not m.differential[g.name] for g in even)
    d_odd_in_even = all(m.differential[g.name].generator_names() <= even_names for g in odd)
    h_odd = all(m.betti(k) == 0 for k in range(1, cap + 1, 2))
    return PurityReport(d_even_zero and d_odd_in_even, d_even_zero, d_odd_in_even,
                        len(even), len(odd), h_odd, cap)


@dataclass
class Factor:
    degree: int
    p: int
    dim_l: int

    def label(self, drop_zero: bool = False, linear_only: bool = False) -> str:
        g = gl(self.p)
        if linear_only or (drop_zero and self.dim_l == 0):
            return g
        return f"L{sup(self.degree)}⋊{g}"

    def to_dict(self):
        return {"degree": self.degree, "p": self.p, "dim_L": self.dim_l}


@dataclass
class EmbeddingReport:
    factors: list[Factor]          # ascending degree
    assume_finite: bool
    f0: bool

    def _ordered(self) -> list[Factor]:
        return list(reversed(self.factors))

    def ambient(self) -> str:
        """Top-down product; the bottom factor carries no L term."""
        if self.assume_finite:
            return self.finite_form()
        parts = []
        for f in self._ordered():
            parts.append(f.label(linear_only=(f is self.factors[0])))
        return " × ".join(parts)

    def reduced(self) -> str:
        """The ambient group with zero-dimensional L factors dropped."""
        if self.assume_finite:
            return self.finite_form()
        return " × ".join(f.label(drop_zero=True) for f in self._ordered())

    def finite_form(self) -> str:
        return " × ".join(gl(f.p) for f in self.factors)

    def f0_form(self) -> str | None:
        if not self.f0:
            return None
        evens = [f for f in self._ordered() if f.degree % 2 == 0]
        odds = [f for f in self._ordered() if f.degree % 2 == 1]
        parts = [f.label(linear_only=(f is self.factors[0])) for f in evens]
        parts += [gl(f.p) for f in odds]
        return " × ".join(parts)

    def text(self) -> str:
        head = f"E(X) ⊆ {self.ambient()}"
        dims = "; ".join(f"dim L{sup(f.degree)} = {f.dim_l}" for f in self._ordered() if f is not self.factors[0])
        lines = [head + (f"; {dims}" if dims and not self.assume_finite else "")]
        if not self.assume_finite:
            lines.append(f"reduced: E(X) ⊆ {self.reduced()}")
        if self.f0 and not self.assume_finite:
            lines.append(f"F0 form: E(X) ⊆ {self.f0_form()}")
        return "\n".join(lines)

    def to_dict(self):
        return {
            "factors": [f.to_dict() for f in self._ordered()],
            "assume_finite": self.assume_finite,
            "f0": self.f0,
            "ambient": self.ambient(),
            "reduced": self.reduced(),
            "f0_form": self.f0_form(),
        }


def l_dimension(m: SullivanModel, n: int) -> int:
    """dim Hom(V^n, H^n(ΛV^{≤n-1}))."""
    return m.dim_v(n) * m.truncate(n - 1).cohomology(n).dim


def embedding_report(m: SullivanModel, assume_finite: bool = False, *, force: bool = False) -> EmbeddingReport:
    if not force:
        rep = elliptic_check(m)
        if not rep.consistent:
            failed = [c.name for c in rep.checks if not c.ok]
            raise EllipticError(f"model failed elliptic checks: {', '.join(failed)}")
    factors = [Factor(d, m.dim_v(d), l_dimension(m, d)) for d in m.generator_degrees()]
    pr = f0_check(m)
    return EmbeddingReport(factors, assume_finite, pr.f0_by_purity)
