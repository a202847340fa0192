import pytest

from conftest import SUITE, load
from sullivan.maps import (Cylinder, DgaMorphism, HomotopyError, MorphismError, bar, compose,
                           constant_homotopy, hat, lemma_l3_homotopy, normalize_top, restrict_homotopy,
                           verify_homotopy)


def test_chain_condition_enforced():
    m = load("s2")
    with pytest.raises(MorphismError):
        DgaMorphism.from_images(m, {"x": 2 * m.gen("x")})  # would need y ↦ 4y
    f = DgaMorphism.from_images(m, {"x": 2 * m.gen("x"), "y": 4 * m.gen("y")})
    assert f.is_equivalence()


def test_compose_and_identity():
    m = load("s2")
    f = DgaMorphism.from_images(m, {"x": 2 * m.gen("x"), "y": 4 * m.gen("y")})
    g = DgaMorphism.from_images(m, {"x": -m.gen("x"), "y": m.gen("y")})
    assert compose(g, f).images == {"x": -2 * m.gen("x"), "y": 4 * m.gen("y")}
    ident = DgaMorphism.identity(m)
    assert compose(f, ident) == f == compose(ident, f)


def test_zero_map_is_not_an_equivalence():
    m = load("s3")
    z = DgaMorphism.from_images(m, {"a": m.algebra.zero()})
    assert not z.is_equivalence()


@pytest.mark.parametrize("name", SUITE + ["gr24", "cp3", "s2s2s2", "hp2"])
def test_e_theta_is_a_dga_map(name):
    c = Cylinder(load(name))
    assert c.check() == []
    assert c.e_theta_failures() == []


def test_e_theta_on_s2():
    m = load("s2")
    c = Cylinder(m)
    A = c.algebra
    x, y = A.gen("x"), A.gen("y")
    # (SD)(y) = 2x·x̄ and (SD)^2(y)/2 = x̄·x̂; higher powers vanish
    assert c.e_theta("x") == x + A.gen(hat("x"))
    tail = c.theta_tail("y")
    assert c.e_theta("y") == y + A.gen(hat("y")) + tail
    assert tail == 2 * x * A.gen(bar("x")) + A.gen(hat("x")) * A.gen(bar("x"))


def test_constant_homotopy_verifies():
    m = load("cp2")
    f = DgaMorphism.from_images(m, {"x": 2 * m.gen("x"), "y": 8 * m.gen("y")})
    F = constant_homotopy(f)
    assert verify_homotopy(F, f, f).ok
    g = DgaMorphism.identity(m)
    assert not verify_homotopy(F, f, g).ok


def s2w6_maps():
    m = load("s2w6")
    x = m.gen("x")
    alpha = DgaMorphism.identity(m)
    beta = DgaMorphism.from_images(m, {"w": m.gen("w") + x ** 3})
    return m, alpha, beta


def test_witness_homotopy_with_and_without_witness():
    m, alpha, beta = s2w6_maps()
    x, y = m.gen("x"), m.gen("y")
    z, zp = {"w": m.algebra.zero()}, {"w": x ** 3}
    F = lemma_l3_homotopy(m, 3, 6, z, zp)
    assert verify_homotopy(F, alpha, beta).ok
    F2 = lemma_l3_homotopy(m, 3, 6, z, zp, witnesses={"w": -(x * y)})
    assert verify_homotopy(F2, alpha, beta).ok
    assert F2.images[bar("w")] == x * y
    assert F2.images[hat("w")] == x ** 3


def test_witness_homotopy_rejects_non_exact_difference():
    m = load("abw")
    a, b = m.gen("a"), m.gen("b")
    with pytest.raises(HomotopyError, match="not a coboundary"):
        lemma_l3_homotopy(m, 3, 6, {"w": m.algebra.zero()}, {"w": a * b})


def test_witness_homotopy_rejects_wrong_witness():
    m, _, _ = s2w6_maps()
    x, y = m.gen("x"), m.gen("y")
    with pytest.raises(HomotopyError):
        lemma_l3_homotopy(m, 3, 6, {"w": m.algebra.zero()}, {"w": x ** 3}, witnesses={"w": x * y})


def s2s4_normalization_data():
    m = load("s2s4")
    x, y, a = m.gen("x"), m.gen("y"), m.gen("a")
    alpha = DgaMorphism.from_images(m, {"a": a + x ** 2, "b": m.gen("b") + 2 * a * y + x ** 2 * y})
    beta = DgaMorphism.identity(m)
    low = m.truncate(6)
    F_below = lemma_l3_homotopy(low, 3, 4, {"a": low.algebra.zero()}, {"a": x ** 2}, witnesses={"a": -y})
    return m, alpha, beta, F_below


def test_normalize_top_with_homotopy_below():
    m, alpha, beta, F_below = s2s4_normalization_data()
    norm = normalize_top(alpha, beta, 7, F_below)
    assert m.d(norm.y_prime["b"]) == 0
    assert norm.y_prime["b"] == 0
    assert norm.alpha_prime == beta
    assert verify_homotopy(norm.homotopy, norm.alpha_prime, alpha).ok


def test_normalize_top_same_below():
    m, _, beta = s2w6_maps()
    x = m.gen("x")
    alpha = DgaMorphism.from_images(m, {"w": m.gen("w") + x ** 3})
    norm = normalize_top(alpha, DgaMorphism.identity(m), 6)
    assert norm.y_prime["w"] == x ** 3
    assert m.d(norm.y_prime["w"]) == 0


def test_normalize_top_rejects_bad_homotopy():
    m, alpha, beta, F_below = s2s4_normalization_data()
    with pytest.raises(HomotopyError):
        normalize_top(beta, alpha, 7, F_below)  # F_below runs the other way


def test_restrict_homotopy():
    m, alpha, beta, F_below = s2s4_normalization_data()
    norm = normalize_top(alpha, beta, 7, F_below)
    G = restrict_homotopy(norm.homotopy, 4)
    assert verify_homotopy(G, beta.restrict(4), alpha.restrict(4)).ok
    assert set(G.images) == {n for v in ("x", "y", "a") for n in (v, bar(v), hat(v))}
