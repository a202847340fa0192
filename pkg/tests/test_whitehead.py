import random

import pytest

from conftest import SUITE, load
from helpers import sigma_homomorphism_holds
from sullivan import linalg
from sullivan.maps import DgaMorphism, MorphismError, compose, verify_homotopy, lemma_l3_homotopy
from sullivan.sampling import sample_dn, sample_equivalence, sample_kernel
from sullivan.whitehead import (DnElement, ExactnessError, KernelElement, SectionError, b_matrix, decompose,
                                difference_class, dn_membership, induced_on_cohomology, psi, sigma,
                                sigma_targets, theta, theta_prime, whitehead_sequence)
from sullivan.model import SullivanModel

M = linalg.matrix


def test_b_matrices():
    assert linalg.equal(b_matrix(load("s2"), 3), M([[1]], 1))
    assert linalg.equal(b_matrix(load("cp2"), 5), M([[1]], 1))
    assert b_matrix(load("s3s3"), 3).shape == (0, 2)
    # gr24: H^6(ΛV^{≤4}) is spanned by c^3, c*e and ∂u = c^3 - 2ce hits one line
    assert linalg.rank(b_matrix(load("gr24"), 5)) == 1


@pytest.mark.parametrize("name", SUITE + ["gr24", "cp3", "hp2", "s2s2s2", "cp2s3", "abw"])
def test_whitehead_sequence_exact(name):
    m = load(name)
    for w in whitehead_sequence(m, 12):
        assert w.exact
        for c in w.certificates:
            assert c.composite_zero and c.rank_image == c.dim_kernel


def test_broken_differential_breaks_a_certificate():
    m = SullivanModel.build({"x": 2, "y": 3, "a": 4, "b": 7}, {"y": "x^2", "a": "x*y", "b": "a^2"})
    with pytest.raises(ExactnessError):
        whitehead_sequence(m, 8)
    assert not all(w.exact for w in whitehead_sequence(m, 8, strict=False))


def s2_pair(lam, mu):
    m = load("s2")
    low = m.truncate(2)
    gamma = DgaMorphism.from_images(low, {"x": mu * low.gen("x")})
    return m, M([[lam]], 1), gamma


@pytest.mark.parametrize("mu", [1, 2, -3])
def test_dn_on_s2_requires_lambda_mu_squared(mu):
    m, rho, gamma = s2_pair(mu * mu, mu)
    assert dn_membership(m, 3, rho, gamma)
    m, rho, gamma = s2_pair(mu * mu + 1, mu)
    assert not dn_membership(m, 3, rho, gamma)


def test_sigma_on_s2_and_psi_splits():
    m, rho, gamma = s2_pair(4, 2)
    d = DnElement(m, 3, rho, gamma)
    beta = sigma(d)
    assert beta.images["y"] == 4 * m.gen("y")
    assert psi(beta, 3) == d


def test_sigma_rejects_non_members():
    m, rho, gamma = s2_pair(3, 2)
    with pytest.raises(SectionError):
        sigma(DnElement(m, 3, rho, gamma))


def test_s2s4_sigma_correction():
    m = load("s2s4")
    x, y, a = m.gen("x"), m.gen("y"), m.gen("a")
    low = m.truncate(6)
    gamma = DgaMorphism.from_images(low, {"a": a + x ** 2})
    d = DnElement(m, 7, M([[1]], 1), gamma)
    assert sigma_targets(d)["b"] == 2 * a * x ** 2 + x ** 4
    beta = sigma(d)
    assert beta.images["b"] == m.gen("b") + 2 * a * y + x ** 2 * y


def test_theta_on_product_class():
    m = load("abw")
    a, b = m.gen("a"), m.gen("b")
    beta = DgaMorphism.from_images(m, {"w": m.gen("w") + a * b})
    f = theta(beta, 6)
    H = m.truncate(5).cohomology(6)
    assert H.dim == 1
    assert linalg.equal(f.f, M([H.class_of(a * b)], 1))
    assert difference_class(theta_prime(f), beta, 6).shape == (1, 1)
    assert linalg.is_zero(difference_class(theta_prime(f), beta, 6))


def test_theta_rejects_non_kernel_maps():
    m = load("abw")
    beta = DgaMorphism.from_images(m, {"w": 2 * m.gen("w")})
    with pytest.raises(MorphismError):
        theta(beta, 6)


def test_theta_is_additive_on_compositions():
    m = load("abw")
    a, b = m.gen("a"), m.gen("b")
    f = KernelElement(m, 6, M([[2]], 1))
    g = KernelElement(m, 6, M([[-5]], 1))
    assert theta(compose(theta_prime(f), theta_prime(g)), 6) == f + g


@pytest.mark.parametrize("name", SUITE + ["gr24", "abw"])
def test_splitting_and_round_trips(name):
    m = load(name)
    rng = random.Random(7)
    for n in m.generator_degrees():
        for _ in range(10):
            d = sample_dn(m, n, rng)
            assert psi(sigma(d), n) == d
            k = sample_kernel(m, n, rng)
            assert theta(theta_prime(k), n) == k


def test_theta_prime_theta_up_to_homotopy():
    m = load("s2w6")
    x, y = m.gen("x"), m.gen("y")
    beta = DgaMorphism.from_images(m, {"w": m.gen("w") + x ** 3})
    back = theta_prime(theta(beta, 6))
    F = lemma_l3_homotopy(m, 3, 6, {"w": back.images["w"] - m.gen("w")}, {"w": x ** 3})
    assert verify_homotopy(F, back, beta).ok


@pytest.mark.parametrize("name", ["s2", "cp2", "s2s4", "s3s3", "s2s2"])
def test_sigma_homomorphism_with_explicit_corrections(name):
    m = load(name)
    rng = random.Random(11)
    for n in m.generator_degrees():
        for _ in range(5):
            assert sigma_homomorphism_holds(sample_dn(m, n, rng), sample_dn(m, n, rng))


def test_induced_on_cohomology_is_functorial():
    m = load("s2s2")
    rng = random.Random(3)
    for _ in range(10):
        g1 = sample_equivalence(m, 3, rng)
        g2 = sample_equivalence(m, 3, rng)
        for k in range(7):
            lhs = induced_on_cohomology(compose(g1, g2), k)
            rhs = linalg.matmul(induced_on_cohomology(g1, k), induced_on_cohomology(g2, k))
            assert linalg.equal(lhs, rhs)


def test_sharp_membership():
    m, rho, gamma = s2_pair(1, 1)
    assert dn_membership(m, 3, rho, gamma, sharp=True)
    m, rho, gamma = s2_pair(4, 2)
    assert dn_membership(m, 3, rho, gamma)
    assert not dn_membership(m, 3, rho, gamma, sharp=True)


def test_decompose_reports():
    assert decompose(load("s3s3"), 3).summary() == "Hom part dim 0; b³ = 0; D³ ≅ GL(2,ℚ)"
    assert decompose(load("s2"), 3).group == "GL(1,ℚ)"
    dec = decompose(load("abw"), 6)
    assert dec.hom_dim == 1
    assert dec.group == "ℚ^1 ⋊ (GL(1,ℚ) × GL(2,ℚ))"
