"""
DGA morphisms between Sullivan models, the cylinder Λ(V, V̄, V̂) and
machine-checked homotopies.

A homotopy from α to α' is a DGA map F out of the cylinder with
F(v) = α(v) and F(e^θ(v)) = α'(v).  Nothing here trusts a homotopy it has
not verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

import numpy

from . import linalg
from .gca import AlgebraError, AlgebraMap, Derivation, Element, FreeGCA, Generator
from .model import NotACocycle, SullivanModel


class MorphismError(ValueError):
    pass


class HomotopyError(ValueError):
    pass


class ThetaSeriesError(RuntimeError):
    pass


class DgaMorphism:
    """An algebra map ΛV → ΛW given on generators, required to commute with ∂."""

    def __init__(self, source: SullivanModel, target: SullivanModel, images: Mapping[str, Element], *, check: bool = True):
        missing = set(source.names) - set(images)
        if missing:
            raise MorphismError(f"no image for {sorted(missing)}")
        self.source = source
        self.target = target
        self.images: dict[str, Element] = {}
        for name in source.names:
            img = images[name]
            if img.algebra != target.algebra:
                raise MorphismError(f"image of {name} lies in the wrong algebra")
            target.check_element(img)
            if img and img.degree != source.degree_of(name):
                raise MorphismError(f"image of {name} is not homogeneous of degree {source.degree_of(name)}")
            self.images[name] = img
        self._map = AlgebraMap(source.algebra, target.algebra, self.images)
        if check:
            bad = self.chain_failures()
            if bad:
                raise MorphismError(f"chain condition fails on {bad[0]}")

    @classmethod
    def identity(cls, m: SullivanModel) -> "DgaMorphism":
        return cls(m, m, {n: m.gen(n) for n in m.names}, check=False)

    @classmethod
    def from_images(cls, m: SullivanModel, images: Mapping[str, Element], target: SullivanModel | None = None, **kw) -> "DgaMorphism":
        """Self-map (or map into ``target``) with unlisted generators sent to themselves."""
        full = {n: images.get(n, m.gen(n)) for n in m.names}
        return cls(m, target or m, full, **kw)

    def __call__(self, e: Element) -> Element:
        self.source.check_element(e)
        return self._map(e)

    def __eq__(self, other):
        return (
            isinstance(other, DgaMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.source, tuple(self.images.items())))

    def __repr__(self):
        body = ", ".join(f"{n} ↦ {e}" for n, e in self.images.items())
        return f"DgaMorphism({body})"

    def chain_failures(self) -> list[str]:
        """Generators v with f(∂v) ≠ ∂f(v)."""
        bad = []
        for n in self.source.names:
            if self._map(self.source.differential[n]) != self.target.d(self.images[n]):
                bad.append(n)
        return bad

    def linear_matrix(self, n: int) -> numpy.ndarray:
        """Induced map on indecomposables V^n → W^n; column j is the image of the j-th generator."""
        src = self.source.names_of_degree(n)
        tgt = self.target.names_of_degree(n)
        alg = self.target.algebra
        M = linalg.zeros(len(tgt), len(src))
        for j, s in enumerate(src):
            lin = self.images[s].word_length_part(1)
            for i, t in enumerate(tgt):
                M[i, j] = lin.terms.get(((alg.index[t], 1),), Fraction(0))
        return M

    def is_equivalence(self) -> bool:
        """For minimal models: a quasi-isomorphism iff the linear part is bijective in every degree."""
        degs = set(self.source.generator_degrees()) | set(self.target.generator_degrees())
        return all(linalg.is_invertible(self.linear_matrix(n)) for n in degs)

    def restrict(self, k: int) -> "DgaMorphism":
        src = self.source.truncate(k)
        tgt = self.target.truncate(k)
        return DgaMorphism(src, tgt, {n: self.images[n] for n in src.names}, check=False)


def compose(g: DgaMorphism, f: DgaMorphism) -> DgaMorphism:
    """g ∘ f."""
    if f.target != g.source:
        raise MorphismError("target of f is not the source of g")
    return DgaMorphism(f.source, g.target, {n: g(e) for n, e in f.images.items()}, check=False)


# -- cylinder -------------------------------------------------------------

def bar(name: str) -> str:
    return f"bar({name})"


def hat(name: str) -> str:
    return f"hat({name})"


class _CylinderAlgebra:
    """Cylinder data for a root model, shared by the cylinders of its truncations."""

    def __init__(self, root: SullivanModel):
        gens = []
        for g in root.generators:
            gens += [Generator(g.name, g.degree), Generator(bar(g.name), g.degree - 1), Generator(hat(g.name), g.degree)]
        self.algebra = FreeGCA(gens)
        alg = self.algebra
        self.include = AlgebraMap(root.algebra, alg, {g.name: alg.gen(g.name) for g in root.generators})
        d_images = {}
        s_images = {}
        for g in root.generators:
            d_images[g.name] = self.include(root.differential[g.name])
            d_images[bar(g.name)] = alg.gen(hat(g.name))
            s_images[g.name] = alg.gen(bar(g.name))
        self.D = Derivation(alg, d_images, odd=True)
        self.S = Derivation(alg, s_images, odd=True)
        self.root = root
        self._series: dict[str, Element] = {}
        # safety bound for the e^θ series
        self.max_word = max((root.differential[n].max_word_length() for n in root.names), default=1)

    def series(self, name: str) -> Element:
        """Σ_{k≥1} (S∘D)^k(v) / k!  (the decomposable tail of e^θ(v))."""
        hit = self._series.get(name)
        if hit is not None:
            return hit
        cap = self.max_word + self.root.degree_of(name)
        term = self.algebra.gen(name)
        total = self.algebra.zero()
        k = 0
        while True:
            term = self.S(self.D(term))
            if not term:
                break
            k += 1
            if k > cap:
                raise ThetaSeriesError(f"(S∘D)^k({name}) did not vanish within {cap} steps")
            total = total + term * Fraction(1, factorial(k))
        self._series[name] = total
        return total


def _cylinder_data(root: SullivanModel) -> _CylinderAlgebra:
    key = ("cylinder",)
    hit = root._cache.get(key)
    if hit is None:
        hit = _CylinderAlgebra(root)
        root._cache[key] = hit
    return hit


class Cylinder:
    """
    Λ(V, V̄, V̂) over a (truncated) model with D(v)=∂v, D(v̂)=0, D(v̄)=v̂ and the
    degree -1 derivation S(v)=v̄, S(v̄)=S(v̂)=0.

    e^θ iterates S∘D on cylinder elements; D restricts to ∂ on ΛV, so the
    first step is S∘∂.
    """

    def __init__(self, base: SullivanModel):
        self.base = base
        self._data = _cylinder_data(base.root)
        self.algebra = self._data.algebra
        self.D = self._data.D
        self.S = self._data.S
        self.names = tuple(n for v in base.names for n in (v, bar(v), hat(v)))

    def __eq__(self, other):
        return isinstance(other, Cylinder) and self.base == other.base

    def __hash__(self):
        return hash(("cyl", self.base))

    def include(self, e: Element) -> Element:
        self.base.check_element(e)
        return self._data.include(e)

    def e_theta(self, name: str) -> Element:
        """e^θ(v) = v + v̂ + Σ_{k≥1} (S∘D)^k(v)/k!."""
        if name not in self.base.names:
            raise AlgebraError(f"{name!r} is not a base generator")
        alg = self.algebra
        return alg.gen(name) + alg.gen(hat(name)) + self._data.series(name)

    def theta_tail(self, name: str) -> Element:
        return self._data.series(name)

    def e_theta_map(self) -> AlgebraMap:
        return AlgebraMap(self.base.algebra, self.algebra, {n: self.e_theta(n) for n in self.base.names})

    def check(self) -> list[str]:
        """D² = 0 and S² = 0 on every cylinder generator; returns the failures."""
        bad = []
        for n in self.names:
            g = self.algebra.gen(n)
            if self.D(self.D(g)):
                bad.append(f"D² ≠ 0 on {n}")
            if self.S(self.S(g)):
                bad.append(f"S² ≠ 0 on {n}")
        return bad

    def e_theta_failures(self) -> list[str]:
        """Base generators where D∘e^θ ≠ e^θ∘∂."""
        et = self.e_theta_map()
        bad = []
        for n in self.base.names:
            if self.D(self.e_theta(n)) != et(self.base.differential[n]):
                bad.append(n)
        return bad


def cylinder(m: SullivanModel) -> Cylinder:
    return Cylinder(m)


def e_theta(c: Cylinder, v: str) -> Element:
    return c.e_theta(v)


# -- homotopies -----------------------------------------------------------

@dataclass
class Homotopy:
    """A DGA map F: Λ(V, V̄, V̂) → target, given on cylinder generators."""

    cylinder: Cylinder
    target: SullivanModel
    images: dict[str, Element]

    def __post_init__(self):
        missing = set(self.cylinder.names) - set(self.images)
        if missing:
            raise HomotopyError(f"no image for {sorted(missing)}")
        self._map = AlgebraMap(self.cylinder.algebra, self.target.algebra, self.images)

    def __call__(self, e: Element) -> Element:
        return self._map(e)

    @property
    def base(self) -> SullivanModel:
        return self.cylinder.base

    def start(self) -> DgaMorphism:
        """v ↦ F(v)."""
        return DgaMorphism(self.base, self.target, {n: self.images[n] for n in self.base.names}, check=False)

    def end(self) -> DgaMorphism:
        """v ↦ F(e^θ(v))."""
        return DgaMorphism(self.base, self.target, {n: self(self.cylinder.e_theta(n)) for n in self.base.names}, check=False)

    def dga_failures(self) -> list[str]:
        bad = []
        for n in self.cylinder.names:
            g = self.cylinder.algebra.gen(n)
            if self(self.cylinder.D(g)) != self.target.d(self.images[n]):
                bad.append(n)
        return bad


@dataclass
class HomotopyCheck:
    ok: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def constant_homotopy(alpha: DgaMorphism) -> Homotopy:
    """F(v) = α(v), F(v̄) = F(v̂) = 0: a homotopy from α to itself."""
    c = Cylinder(alpha.source)
    zero = alpha.target.algebra.zero()
    images = {}
    for n in alpha.source.names:
        images[n] = alpha.images[n]
        images[bar(n)] = zero
        images[hat(n)] = zero
    return Homotopy(c, alpha.target, images)


def verify_homotopy(F: Homotopy, alpha: DgaMorphism, alpha_prime: DgaMorphism) -> HomotopyCheck:
    """Check F∘D = ∂∘F on v, v̄, v̂ and the endpoints F(v)=α(v), F(e^θ v)=α'(v)."""
    failures = []
    if alpha.source != F.base or alpha_prime.source != F.base:
        failures.append("maps and homotopy have different sources")
        return HomotopyCheck(False, failures)
    for n in F.dga_failures():
        failures.append(f"F∘D ≠ ∂∘F on {n}")
    for n in F.base.names:
        if F.images[n] != alpha.images[n]:
            failures.append(f"F({n}) ≠ α({n})")
        if F(F.cylinder.e_theta(n)) != alpha_prime.images[n]:
            failures.append(f"F(e^θ({n})) ≠ α'({n})")
    return HomotopyCheck(not failures, failures)


def lemma_l3_homotopy(
    m: SullivanModel,
    n_low: int,
    q: int,
    z: Mapping[str, Element],
    z_prime: Mapping[str, Element],
    witnesses: Mapping[str, Element] | None = None,
) -> Homotopy:
    """
    Homotopy between α = id + z and α' = id + z' (identity below degree q)
    when each z_v - z'_v = ∂u_v.

    F(v) = v + z_v, F(v̂) = z'_v - z_v, F(v̄) = -u_v on V^q; F(w) = w and
    F(w̄) = F(ŵ) = 0 on V^{≤n_low}.  Missing witnesses are looked up with the
    cohomology solver; a non-exact difference raises HomotopyError.
    """
    if not q > n_low:
        raise HomotopyError("need q > n_low")
    for g in m.generators:
        if not (g.degree <= n_low or g.degree == q):
            raise HomotopyError(f"generator {g.name} of degree {g.degree} is neither ≤ {n_low} nor = {q}")
    top = m.names_of_degree(q)
    alg = m.algebra
    witnesses = dict(witnesses or {})
    c = Cylinder(m)
    images: dict[str, Element] = {}
    for n in m.names:
        if n in top:
            zv = z.get(n, alg.zero())
            zpv = z_prime.get(n, alg.zero())
            diff = zv - zpv
            u = witnesses.get(n)
            if u is None:
                try:
                    coeffs, u = m.cohomology(q).class_coords(diff)
                except NotACocycle as exc:
                    raise HomotopyError(f"z - z' is not a cocycle on {n}") from exc
                if any(coeffs):
                    raise HomotopyError(f"z - z' is not a coboundary on {n}: class [{', '.join(map(str, coeffs))}]")
            elif m.d(u) != diff:
                raise HomotopyError(f"witness check failed on {n}: ∂u ≠ z - z'")
            images[n] = m.gen(n) + zv
            images[hat(n)] = zpv - zv
            images[bar(n)] = -u
        else:
            images[n] = m.gen(n)
            images[bar(n)] = alg.zero()
            images[hat(n)] = alg.zero()
    F = Homotopy(c, m, images)
    alpha = DgaMorphism.from_images(m, {n: m.gen(n) + z.get(n, alg.zero()) for n in top})
    alpha_p = DgaMorphism.from_images(m, {n: m.gen(n) + z_prime.get(n, alg.zero()) for n in top})
    check = verify_homotopy(F, alpha, alpha_p)
    if not check:
        raise HomotopyError("constructed homotopy failed verification: " + "; ".join(check.failures))
    return F


@dataclass
class Normalization:
    alpha_prime: DgaMorphism
    y_prime: dict[str, Element]
    homotopy: Homotopy  # from alpha_prime to alpha


def normalize_top(alpha: DgaMorphism, beta: DgaMorphism, n: int, F_below: Homotopy | None = None) -> Normalization:
    """
    Replace α by a homotopic α' that equals β below degree n and differs from
    β on V^n by cocycles y'_v = y_v - F(Σ_{k≥1} (S∘D)^k(v)/k!).

    ``F_below`` is a homotopy on ΛV^{≤n-1} from β to α; it may be omitted when
    α and β agree there on the nose.
    """
    m = alpha.source
    if beta.source != m or alpha.target != m or beta.target != m:
        raise MorphismError("α and β must be self-maps of the same model")
    if m.top_degree > n:
        raise MorphismError(f"maps must live on ΛV^{{≤{n}}}")
    low = m.truncate(n - 1)
    if F_below is None:
        if any(alpha.images[w] != beta.images[w] for w in low.names):
            raise MorphismError("α ≠ β below degree n and no homotopy was supplied")
        F_below = constant_homotopy(beta.restrict(n - 1))
    else:
        check = verify_homotopy(F_below, beta.restrict(n - 1), alpha.restrict(n - 1))
        if not check:
            raise HomotopyError("F_below is not a homotopy from β to α below degree n: " + "; ".join(check.failures))
    c = Cylinder(m)
    alg = m.algebra
    y_prime = {}
    top = m.names_of_degree(n)
    for v in top:
        y = alpha.images[v] - beta.images[v]
        if y.generator_names() - set(low.names):
            raise MorphismError(f"α({v}) - β({v}) is not in ΛV^{{≤{n - 1}}}")
        yp = y - F_below(c.theta_tail(v))
        if m.d(yp):
            raise HomotopyError(f"normalized correction for {v} is not a cocycle")
        y_prime[v] = yp
    alpha_prime = DgaMorphism.from_images(m, {**{w: beta.images[w] for w in low.names},
                                               **{v: beta.images[v] + y_prime[v] for v in top}})
    images = dict(F_below.images)
    for v in top:
        images[v] = alpha_prime.images[v]
        images[bar(v)] = alg.zero()
        images[hat(v)] = alg.zero()
    G = Homotopy(c, m, images)
    check = verify_homotopy(G, alpha_prime, alpha)
    if not check:
        raise HomotopyError("normalizing homotopy failed verification: " + "; ".join(check.failures))
    return Normalization(alpha_prime, y_prime, G)


def restrict_homotopy(F: Homotopy, n: int) -> Homotopy:
    """Restriction of a homotopy on ΛV^{≤k} to the cylinder over ΛV^{≤n}."""
    base = F.base.truncate(n)
    target = F.target.truncate(n)
    c = Cylinder(base)
    H = Homotopy(c, target, {k: F.images[k] for k in c.names})
    check = verify_homotopy(H, H.start(), H.end())
    if not check:
        raise HomotopyError("restricted homotopy failed verification: " + "; ".join(check.failures))
    return H
