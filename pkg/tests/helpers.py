"""Shared constructions for the Whitehead and acceptance tests."""

from __future__ import annotations

from sullivan.maps import DgaMorphism, compose
from sullivan.whitehead import DnElement, sigma


def corrections(beta: DgaMorphism, d: DnElement) -> dict:
    """y_v = β(v) - ρ(v) for v in V^n."""
    m, n = d.model, d.degree
    names = m.names_of_degree(n)
    out = {}
    for j, v in enumerate(names):
        lin = sum((m.algebra.gen(w) * d.rho[i, j] for i, w in enumerate(names)), m.algebra.zero())
        out[v] = beta.images[v] - lin
    return out


def explicit_product_corrections(d1: DnElement, d2: DnElement, y1: dict, y2: dict) -> dict:
    """z_v = y1_{ρ2(v)} + γ1(y2_v): the corrections realising σ(d1)∘σ(d2)."""
    m, n = d1.model, d1.degree
    names = m.names_of_degree(n)
    out = {}
    for j, v in enumerate(names):
        z = d1.gamma(y2[v])
        for i, w in enumerate(names):
            if d2.rho[i, j]:
                z = z + y1[w] * d2.rho[i, j]
        out[v] = z
    return out


def sigma_homomorphism_holds(d1: DnElement, d2: DnElement) -> bool:
    b1, b2 = sigma(d1), sigma(d2)
    z = explicit_product_corrections(d1, d2, corrections(b1, d1), corrections(b2, d2))
    return sigma(d1 * d2, corrections=z) == compose(b1, b2)
