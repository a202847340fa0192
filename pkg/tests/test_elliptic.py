import pytest

from conftest import SUITE, load
from sullivan.elliptic import EllipticError, default_cap, elliptic_check, embedding_report, f0_check, l_dimension

FORMAL = {"s2": 2, "s3": 3, "cp2": 4, "s3s3": 6, "s2s4": 6, "gr24": 8, "su3": 8, "hp2": 8, "cp2s3": 7, "s2s2s2": 6}


@pytest.mark.parametrize("name", sorted(FORMAL))
def test_elliptic_models_pass(name):
    rep = elliptic_check(load(name))
    assert rep.consistent, rep.checks
    assert rep.formal_dimension == FORMAL[name]
    assert [c.name for c in rep.checks] == ["window", "top_class", "generator_bound", "top_generators", "duality"]


def test_polynomial_algebra_fails():
    rep = elliptic_check(load("poly_x2"))
    assert not rep.consistent
    assert not rep.check("window").ok
    assert rep.formal_dimension is None


def test_cap_too_small():
    with pytest.raises(EllipticError):
        elliptic_check(load("s2s4"), 5)


def test_default_cap_covers_odd_degree_sum():
    m = load("su3")
    assert default_cap(m) >= 3 + 5 + 5
    assert elliptic_check(m).check("window").ok


def test_explicit_cap_too_close_fails_window():
    # formal dimension 8 but only a window up to 9 with top generator degree 5
    assert not elliptic_check(load("su3"), 9).consistent


@pytest.mark.parametrize("name,expected", [("s2", True), ("cp2", True), ("s2s4", True), ("gr24", True), ("cp2s3", False),
                                           ("s3s3", False), ("s2s2", True), ("hp2", True), ("su3", False)])
def test_f0_purity_agrees_with_odd_cohomology(name, expected):
    rep = f0_check(load(name))
    assert rep.f0_by_purity == expected
    assert rep.agree


def test_embedding_s3s3():
    rep = embedding_report(load("s3s3"))
    assert rep.ambient() == "GL(2,ℚ)"


def test_embedding_s2():
    rep = embedding_report(load("s2"))
    assert rep.text().splitlines()[0] == "E(X) ⊆ L³⋊GL(1,ℚ) × GL(1,ℚ); dim L³ = 0"
    assert rep.reduced() == "GL(1,ℚ) × GL(1,ℚ)"
    assert rep.finite_form() == "GL(1,ℚ) × GL(1,ℚ)"


def test_embedding_s2s4_odd_l_dims_vanish():
    m = load("s2s4")
    rep = embedding_report(m)
    odd = {f.degree: f.dim_l for f in rep.factors if f.degree % 2}
    assert odd == {3: 0, 7: 0}
    assert l_dimension(m, 7) == m.dim_v(7) * m.truncate(6).cohomology(7).dim == 0
    assert rep.f0
    assert rep.f0_form() is not None


def test_embedding_assume_finite():
    rep = embedding_report(load("cp2"), assume_finite=True)
    assert rep.ambient() == "GL(1,ℚ) × GL(1,ℚ)"


def test_embedding_refuses_non_elliptic_unless_forced():
    m = load("poly_x2")
    with pytest.raises(EllipticError):
        embedding_report(m)
    assert embedding_report(m, force=True).ambient() == "GL(1,ℚ)"


@pytest.mark.parametrize("name", SUITE)
def test_l_dimensions_nonnegative_and_computed(name):
    m = load(name)
    for f in embedding_report(m).factors:
        assert f.dim_l == l_dimension(m, f.degree)
