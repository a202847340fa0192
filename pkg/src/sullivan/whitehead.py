"""
The Whitehead exact sequence of a minimal Sullivan algebra

    V^n --b^n--> H^{n+1}(ΛV^{≤n-1}) --incl--> H^{n+1}(ΛV) --lin--> V^{n+1} --b^{n+1}--> ...

and the split extension  Hom(V^n, H^n(ΛV^{≤n-1})) ↣ E(ΛV^{≤n}) ↠ D^n.

Matrices act on column vectors: generators of V^n in canonical order, and
cohomology classes in the basis chosen by ``SullivanModel.cohomology``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy

from . import linalg
from .fmt import gl, sup
from .gca import Element
from .maps import DgaMorphism, Homotopy, MorphismError, compose, normalize_top
from .model import NotACocycle, SullivanModel


class ExactnessError(RuntimeError):
    def __init__(self, message: str, data: "WhiteheadData"):
        super().__init__(message)
        self.data = data


class SectionError(RuntimeError):
    pass


# -- the sequence ---------------------------------------------------------

def b_matrix(m: SullivanModel, n: int) -> numpy.ndarray:
    """b^n: V^n → H^{n+1}(ΛV^{≤n-1}), v ↦ {∂v}."""
    low = m.truncate(n - 1) if n >= 1 else m.truncate(0)
    H = low.cohomology(n + 1)
    cols = [H.class_of(m.differential[v]) for v in m.names_of_degree(n)]
    return linalg.from_columns(cols, H.dim)


def incl_matrix(m: SullivanModel, n: int) -> numpy.ndarray:
    """H^{n+1}(ΛV^{≤n-1}) → H^{n+1}(ΛV) induced by inclusion."""
    low = m.truncate(max(n - 1, 0))
    src = low.cohomology(n + 1)
    tgt = m.cohomology(n + 1)
    cols = [tgt.class_of(r) for r in src.representatives]
    return linalg.from_columns(cols, tgt.dim)


def lin_matrix(m: SullivanModel, n: int) -> numpy.ndarray:
    """H^{n+1}(ΛV) → V^{n+1}, the linear part of a representative."""
    H = m.cohomology(n + 1)
    names = m.names_of_degree(n + 1)
    alg = m.algebra
    cols = []
    for r in H.representatives:
        lin = r.word_length_part(1)
        cols.append([lin.terms.get(((alg.index[v], 1),), Fraction(0)) for v in names])
    return linalg.from_columns(cols, len(names))


@dataclass
class Certificate:
    node: str
    composite_zero: bool
    rank_image: int
    dim_kernel: int

    @property
    def ok(self) -> bool:
        return self.composite_zero and self.rank_image == self.dim_kernel

    def to_dict(self):
        return {"node": self.node, "composite_zero": self.composite_zero,
                "rank_image": self.rank_image, "dim_kernel": self.dim_kernel, "ok": self.ok}


@dataclass
class WhiteheadData:
    degree: int
    dim_v: int
    dim_h_low: int     # H^{n+1}(ΛV^{≤n-1})
    dim_h: int         # H^{n+1}(ΛV)
    dim_v_next: int
    b: numpy.ndarray
    incl: numpy.ndarray
    lin: numpy.ndarray
    b_next: numpy.ndarray
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(c.ok for c in self.certificates)

    def to_dict(self):
        return {
            "degree": self.degree,
            "dims": {"V^n": self.dim_v, "H^{n+1}(low)": self.dim_h_low,
                     "H^{n+1}": self.dim_h, "V^{n+1}": self.dim_v_next},
            "b": linalg.to_str_rows(self.b),
            "incl": linalg.to_str_rows(self.incl),
            "lin": linalg.to_str_rows(self.lin),
            "exact": self.exact,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def whitehead_data(m: SullivanModel, n: int) -> WhiteheadData:
    try:
        b = b_matrix(m, n)
        b_next = b_matrix(m, n + 1)
    except NotACocycle as exc:
        # ∂ does not square to zero: the connecting map is undefined
        empty = linalg.zeros(0, 0)
        cert = Certificate(f"∂V ⊆ cocycles ({exc})", False, 0, 0)
        return WhiteheadData(n, m.dim_v(n), 0, 0, m.dim_v(n + 1), empty, empty, empty, empty, [cert])
    inc = incl_matrix(m, n)
    lin = lin_matrix(m, n)
    dv, dl, dh, dv1 = b.shape[1], b.shape[0], inc.shape[0], lin.shape[0]
    rb, ri, rl, rb1 = linalg.rank(b), linalg.rank(inc), linalg.rank(lin), linalg.rank(b_next)
    certs = [
        Certificate("H^{n+1}(ΛV^{≤n-1})", linalg.is_zero(linalg.matmul(inc, b)), rb, dl - ri),
        Certificate("H^{n+1}(ΛV)", linalg.is_zero(linalg.matmul(lin, inc)), ri, dh - rl),
        Certificate("V^{n+1}", linalg.is_zero(linalg.matmul(b_next, lin)), rl, dv1 - rb1),
    ]
    return WhiteheadData(n, dv, dl, dh, dv1, b, inc, lin, b_next, certs)


def whitehead_sequence(m: SullivanModel, n_max: int, *, strict: bool = True, n_min: int = 1) -> list[WhiteheadData]:
    """
    Matrices and exactness certificates for n_min ≤ n ≤ n_max.

    The sequence is exact for every valid minimal model, so a failing
    certificate means a broken model or a bug; with ``strict`` it raises.
    """
    out = []
    for n in range(n_min, n_max + 1):
        data = whitehead_data(m, n)
        if strict and not data.exact:
            bad = [c.node for c in data.certificates if not c.ok]
            raise ExactnessError(f"Whitehead sequence not exact at degree {n}: {', '.join(bad)}", data)
        out.append(data)
    return out


def induced_on_cohomology(gamma: DgaMorphism, n: int) -> numpy.ndarray:
    """Matrix of H^n(γ) for a self-map γ."""
    if gamma.source != gamma.target:
        raise MorphismError("induced_on_cohomology needs a self-map")
    bad = gamma.chain_failures()
    if bad:
        raise MorphismError(f"γ fails the chain condition on {bad[0]}")
    H = gamma.source.cohomology(n)
    cols = [H.class_of(gamma(r)) for r in H.representatives]
    return linalg.from_columns(cols, H.dim)


# -- D^n ------------------------------------------------------------------

@dataclass
class DnElement:
    """A pair (ρ, γ): ρ ∈ Aut(V^n), γ a self-equivalence of ΛV^{≤n-1}."""

    model: SullivanModel
    degree: int
    rho: numpy.ndarray
    gamma: DgaMorphism

    def __mul__(self, other: "DnElement") -> "DnElement":
        if self.model != other.model or self.degree != other.degree:
            raise ValueError("elements of different groups")
        return DnElement(self.model, self.degree, linalg.matmul(self.rho, other.rho), compose(self.gamma, other.gamma))

    def __eq__(self, other):
        return (isinstance(other, DnElement) and self.degree == other.degree
                and linalg.equal(self.rho, other.rho) and self.gamma == other.gamma)


@dataclass
class Membership:
    ok: bool
    lhs: numpy.ndarray  # H^{n+1}(γ)·b^n
    rhs: numpy.ndarray  # b^n·ρ
    reason: str = ""

    def __bool__(self):
        return self.ok


def dn_membership(m: SullivanModel, n: int, rho: numpy.ndarray, gamma: DgaMorphism, *, sharp: bool = False) -> Membership:
    """(ρ, γ) ∈ D^n iff H^{n+1}(γ)∘b^n = b^n∘ρ; the sharp variant also needs ρ = id and γ̃ = id."""
    b = b_matrix(m, n)
    low = m.truncate(n - 1)
    if gamma.source != low:
        raise MorphismError(f"γ must be a self-map of ΛV^{{≤{n - 1}}}")
    lhs = linalg.matmul(induced_on_cohomology(gamma, n + 1), b)
    rhs = linalg.matmul(b, rho)
    if not linalg.is_invertible(rho):
        return Membership(False, lhs, rhs, "ρ is not invertible")
    if sharp:
        if not linalg.equal(rho, linalg.identity(rho.shape[0])):
            return Membership(False, lhs, rhs, "ρ ≠ id")
        for d in low.generator_degrees():
            lm = gamma.linear_matrix(d)
            if not linalg.equal(lm, linalg.identity(lm.shape[0])):
                return Membership(False, lhs, rhs, f"γ is not the identity on V^{d}")
    ok = linalg.equal(lhs, rhs)
    return Membership(ok, lhs, rhs, "" if ok else "H^{n+1}(γ)∘b^n ≠ b^n∘ρ")


def psi(beta: DgaMorphism, n: int) -> DnElement:
    """Ψ_n(β) = (β̃ on V^n, β restricted to ΛV^{≤n-1})."""
    m = beta.source
    if beta.target != m:
        raise MorphismError("Ψ_n needs a self-map")
    if m.top_degree > n:
        raise MorphismError(f"β must live on ΛV^{{≤{n}}}")
    d = DnElement(m.root, n, beta.linear_matrix(n), beta.restrict(n - 1))
    # functoriality: Ψ always lands in D^n
    if not dn_membership(m.root, n, d.rho, d.gamma):
        raise SectionError("Ψ_n(β) violates the D^n equation")
    return d


def _rho_image(m: SullivanModel, n: int, rho: numpy.ndarray, j: int) -> Element:
    names = m.names_of_degree(n)
    out = m.algebra.zero()
    for i, v in enumerate(names):
        if rho[i, j]:
            out = out + m.algebra.gen(v) * rho[i, j]
    return out


def sigma_targets(d: DnElement) -> dict[str, Element]:
    """γ(∂v) - ∂(ρ v) for v ∈ V^n; σ_n needs y_v with ∂y_v equal to these."""
    m, n = d.model, d.degree
    out = {}
    for j, v in enumerate(m.names_of_degree(n)):
        out[v] = d.gamma(m.differential[v]) - m.d(_rho_image(m, n, d.rho, j))
    return out


def sigma(d: DnElement, corrections: dict[str, Element] | None = None) -> DgaMorphism:
    """
    The section σ_n: β(v) = ρ(v) + y_v on V^n, β = γ below.

    y_v is the deterministic solver's preimage unless ``corrections`` supplies
    explicit ones (checked against the same equation).
    """
    m, n = d.model, d.degree
    low = m.truncate(n - 1)
    top = m.truncate(n)
    targets = sigma_targets(d)
    ys: dict[str, Element] = {}
    if corrections is None:
        solver = _degree_solver(low, n)
        for v, t in targets.items():
            x = solver.solve(low.piece(n + 1).coords(t))
            if x is None:
                raise SectionError(f"no preimage y_{v}: (ρ, γ) is not in D^{n}")
            ys[v] = low.piece(n).element_of(x)
    else:
        for v, t in targets.items():
            y = corrections[v]
            if low.d(y) != t:
                raise SectionError(f"supplied correction for {v} does not solve ∂y = γ∂v - ∂ρv")
            ys[v] = y
    images = {w: d.gamma.images[w] for w in low.names}
    for j, v in enumerate(m.names_of_degree(n)):
        images[v] = _rho_image(m, n, d.rho, j) + ys[v]
    beta = DgaMorphism(top, top, images, check=False)
    bad = beta.chain_failures()
    if bad:
        raise SectionError(f"σ_n produced a non-DGA map (fails on {bad[0]})")
    return beta


def _degree_solver(low: SullivanModel, n: int) -> linalg.Solver:
    key = ("dsolver", n)
    hit = low._cache.get(key)
    if hit is None:
        hit = linalg.Solver(low.differential_matrix(n))
        low._cache[key] = hit
    return hit


# -- the kernel Hom(V^n, H^n(ΛV^{≤n-1})) -------------------------------------

@dataclass
class KernelElement:
    model: SullivanModel
    degree: int
    f: numpy.ndarray  # dim H^n(ΛV^{≤n-1}) × dim V^n

    def __add__(self, other: "KernelElement") -> "KernelElement":
        return KernelElement(self.model, self.degree, self.f + other.f)

    def __eq__(self, other):
        return isinstance(other, KernelElement) and self.degree == other.degree and linalg.equal(self.f, other.f)


def theta(beta: DgaMorphism, n: int, homotopy_below: Homotopy | None = None) -> KernelElement:
    """
    Θ([β]) = f with f(v) = {y'_v} for β in ker Ψ_n.

    β must be the identity on V^n modulo decomposables and the identity below
    degree n, either on the nose or up to ``homotopy_below`` (from id to β).
    """
    m = beta.source
    if m.top_degree > n:
        raise MorphismError(f"β must live on ΛV^{{≤{n}}}")
    L = beta.linear_matrix(n)
    if not linalg.equal(L, linalg.identity(L.shape[0])):
        raise MorphismError("β is not of kernel shape: linear part on V^n ≠ id")
    ident = DgaMorphism.identity(m)
    norm = normalize_top(beta, ident, n, homotopy_below)
    low = m.truncate(n - 1)
    H = low.cohomology(n)
    cols = [H.class_of(norm.y_prime[v]) for v in m.names_of_degree(n)]
    return KernelElement(m.root, n, linalg.from_columns(cols, H.dim))


def theta_prime(f: KernelElement) -> DgaMorphism:
    """Θ'(f) = [β] with β(v) = v + Σ_i f_{iv} rep_i, identity below."""
    m, n = f.model, f.degree
    H = m.truncate(n - 1).cohomology(n)
    top = m.truncate(n)
    images = {}
    for j, v in enumerate(m.names_of_degree(n)):
        images[v] = m.algebra.gen(v) + H.element_of(f.f[:, j])
    return DgaMorphism.from_images(top, images)


def kernel_dims(m: SullivanModel, n: int) -> tuple[int, int]:
    return m.dim_v(n), m.truncate(n - 1).cohomology(n).dim


def difference_class(beta1: DgaMorphism, beta2: DgaMorphism, n: int) -> numpy.ndarray:
    """
    Classes {β1(v) - β2(v)} ∈ H^n(ΛV^{≤n-1}) for maps that agree below n and on V^n
    modulo decomposables.  Zero iff the two maps differ by a null kernel element.
    """
    m = beta1.source
    low = m.truncate(n - 1)
    if any(beta1.images[w] != beta2.images[w] for w in low.names):
        raise MorphismError("maps differ below degree n")
    H = low.cohomology(n)
    cols = [H.class_of(beta1.images[v] - beta2.images[v]) for v in m.names_of_degree(n)]
    return linalg.from_columns(cols, H.dim)


# -- decomposition report ---------------------------------------------------

@dataclass
class Decomposition:
    degree: int
    dim_v: int
    dim_h: int            # H^n(ΛV^{≤n-1})
    hom_dim: int
    b_rank: int
    b_target_dim: int     # H^{n+1}(ΛV^{≤n-1})
    b_kind: str           # "zero", "iso", "general"
    d_description: str
    group: str            # description of E(ΛV^{≤n})

    def summary(self) -> str:
        n = self.degree
        k = sup(n)
        b = f"b{k} = 0" if self.b_kind == "zero" else (
            f"b{k} iso" if self.b_kind == "iso" else f"rank b{k} = {self.b_rank}")
        return f"Hom part dim {self.hom_dim}; {b}; D{k} ≅ {self.d_description}"

    def to_dict(self):
        return {
            "degree": self.degree, "dim_V": self.dim_v, "dim_H_low": self.dim_h,
            "hom_dim": self.hom_dim, "b_rank": self.b_rank, "b_target_dim": self.b_target_dim,
            "b_kind": self.b_kind, "D": self.d_description, "E": self.group,
        }


def _b_kind(rank: int, dim_v: int, dim_t: int) -> str:
    if rank == 0:
        return "zero"
    if rank == dim_v == dim_t:
        return "iso"
    return "general"


def describe_e(m: SullivanModel, n: int) -> str:
    """Best description of E(ΛV^{≤n}) obtained by unwinding the split extensions."""
    degs = [d for d in m.root.generator_degrees() if d <= n]
    if not degs:
        return "1"
    return decompose(m, degs[-1]).group


def decompose(m: SullivanModel, n: int) -> Decomposition:
    """E(ΛV^{≤n}) ≅ Hom(V^n, H^n(ΛV^{≤n-1})) ⋊ D^n, with D^n made explicit when b^n is 0 or iso."""
    m = m.root
    dim_v, dim_h = kernel_dims(m, n)
    b = b_matrix(m, n)
    r = linalg.rank(b)
    kind = _b_kind(r, b.shape[1], b.shape[0])
    below = describe_e(m, n - 1)
    if dim_v == 0 or kind == "iso":
        # D^n ≅ E(ΛV^{≤n-1})
        desc = below
    elif kind == "zero":
        desc = gl(dim_v) if below == "1" else f"{gl(dim_v)} × {below}"
    else:
        desc = f"{{(ρ,γ) ∈ {gl(dim_v)} × E(ΛV^≤{n - 1}) : H(γ)b = bρ}}"
    hom = dim_v * dim_h
    if hom:
        group = f"ℚ^{hom} ⋊ ({desc})" if "×" in desc else f"ℚ^{hom} ⋊ {desc}"
    else:
        group = desc
    return Decomposition(n, dim_v, dim_h, hom, r, b.shape[0], kind, desc, group)
