"""
Seeded random self-equivalences, D^n elements and kernel elements.

Self-equivalences of ΛV^{≤k} are grown degree by degree: pick ρ compatible
with the map built so far, apply the section σ, then twist by a random kernel
element and a random coboundary.  Small integer entries in [-3, 3] keep the
rationals tame.
"""

from __future__ import annotations

import random

import numpy

from . import linalg
from .gca import Element, GradedPiece
from .maps import DgaMorphism
from .model import SullivanModel
from .whitehead import DnElement, KernelElement, b_matrix, induced_on_cohomology, sigma

LO, HI = -3, 3


def random_element(piece: GradedPiece, rng: random.Random, density: float = 0.5) -> Element:
    coeffs = [rng.randint(LO, HI) if rng.random() < density else 0 for _ in range(len(piece))]
    return piece.element_of(coeffs)


def random_invertible(p: int, rng: random.Random, tries: int = 100) -> numpy.ndarray:
    for _ in range(tries):
        A = linalg.matrix([[rng.randint(LO, HI) for _ in range(p)] for _ in range(p)], p)
        if linalg.is_invertible(A):
            return A
    return linalg.identity(p)


def sample_rho(m: SullivanModel, n: int, gamma: DgaMorphism, rng: random.Random, tries: int = 50) -> numpy.ndarray | None:
    """A random invertible ρ with b^n ρ = H^{n+1}(γ) b^n, or None if γ admits none."""
    p = m.dim_v(n)
    if p == 0:
        return linalg.zeros(0, 0)
    b = b_matrix(m, n)
    if b.shape[0] == 0 or linalg.is_zero(b):
        return random_invertible(p, rng)
    M = linalg.matmul(induced_on_cohomology(gamma, n + 1), b)
    solver = linalg.Solver(b)
    particular = []
    for j in range(p):
        x = solver.solve(M[:, j])
        if x is None:
            return None
        particular.append(x)
    ker = solver.kernel()
    for _ in range(tries):
        cols = []
        for x in particular:
            col = x.copy()
            for k in ker:
                c = rng.randint(LO, HI)
                if c:
                    col = col + k * c
            cols.append(col)
        rho = linalg.from_columns(cols, p)
        if linalg.is_invertible(rho):
            return rho
    return None


def random_kernel_matrix(m: SullivanModel, n: int, rng: random.Random) -> numpy.ndarray:
    h = m.truncate(n - 1).cohomology(n).dim
    p = m.dim_v(n)
    return linalg.matrix([[rng.randint(LO, HI) for _ in range(p)] for _ in range(h)], p)


def sample_equivalence(m: SullivanModel, k: int, rng: random.Random, *, noise: bool = True) -> DgaMorphism:
    """A random self-equivalence of ΛV^{≤k}."""
    root = m.root
    current = DgaMorphism.identity(root.truncate(0))
    for d in [d for d in root.generator_degrees() if d <= k]:
        low = root.truncate(d - 1)
        rho = sample_rho(root, d, current, rng)
        if rho is None:
            current = DgaMorphism.identity(low)
            rho = linalg.identity(root.dim_v(d))
        beta = sigma(DnElement(root, d, rho, current))
        H = low.cohomology(d)
        f = random_kernel_matrix(root, d, rng)
        images = dict(beta.images)
        for j, v in enumerate(root.names_of_degree(d)):
            extra = H.element_of(f[:, j]) if H.dim else root.algebra.zero()
            if noise:
                extra = extra + low.d(random_element(low.piece(d - 1), rng, density=0.3))
            images[v] = images[v] + extra
        top = root.truncate(d)
        current = DgaMorphism(top, top, images)
    return current


def sample_dn(m: SullivanModel, n: int, rng: random.Random, tries: int = 20) -> DnElement:
    """A random element of D^n (falls back to ρ = id, γ = id after ``tries`` misses)."""
    root = m.root
    for _ in range(tries):
        gamma = sample_equivalence(root, n - 1, rng)
        rho = sample_rho(root, n, gamma, rng)
        if rho is not None:
            return DnElement(root, n, rho, gamma)
    low = root.truncate(n - 1)
    return DnElement(root, n, linalg.identity(root.dim_v(n)), DgaMorphism.identity(low))


def sample_kernel(m: SullivanModel, n: int, rng: random.Random) -> KernelElement:
    return KernelElement(m.root, n, random_kernel_matrix(m.root, n, rng))
