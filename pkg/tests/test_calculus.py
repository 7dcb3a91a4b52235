import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import scalars
from qdisc import calculus
from qdisc.calculus import (
    CALCULI, FORMS, DolbeaultElement, act_forms, dbar, dbar_mu, dolbeault_product, dtot,
    form_monomial, form_product, form_table, from_pol, partial, rmatrix_reorder,
    uq_action_dolbeault, verify_dolbeault, verify_first_order,
)
from qdisc.covalg import a_minus, a_plus, pol_product, z, z_star
from qdisc.hopf import default_uqsl2
from qdisc.ncpoly import NCPoly
from qdisc.scalar import q, q_integer, qpow

W = NCPoly.word
H = default_uqsl2()


@st.composite
def forms(draw, max_len=4):
    out = NCPoly.zero()
    for _ in range(draw(st.integers(0, 3))):
        a, b = draw(st.integers(0, max_len)), draw(st.integers(0, max_len))
        e, f = draw(st.integers(0, 1)), draw(st.integers(0, 1))
        out = out + form_monomial(a, b, e, f).scale(draw(scalars()))
    return FORMS.normal_form(out)


def homogeneous_parity(p):
    return len({sum(FORMS.letters[a].parity for a in w) % 2 for w in p.terms}) <= 1


def test_product_examples():
    assert form_product(W("dz"), W("z")) == W("z", "dz", coeff=q * q)
    assert form_product(W("dzs"), W("dz")) == W("dz", "dzs", coeff=-q * q)
    assert form_product(W("dz"), W("dz")) == NCPoly.zero()


def test_derivation_examples():
    assert partial(W("z", "z")) == W("z", "dz", coeff=1 + q * q)
    assert dtot(dtot(W("z", "zs"))) == NCPoly.zero()
    assert dbar(W("z")) == NCPoly.zero()
    assert partial(W("zs")) == NCPoly.zero()


@pytest.mark.parametrize("a", range(5))
@pytest.mark.parametrize("b", range(5))
def test_derivatives_match_q_integer_formulas(a, b):
    """partial(z^a z*^b) = [a]_{q^2} q^(-2b) z^(a-1) z*^b dz and
    dbar(z^a z*^b) = [b]_{q^-2} z^a z*^(b-1) dz*."""
    x = form_monomial(a, b)
    want_p = form_monomial(a - 1, b, 1, 0).scale(q_integer(a) * qpow(-2 * b)) if a else NCPoly.zero()
    want_d = form_monomial(a, b - 1, 0, 1).scale(q_integer(b, qpow(-2))) if b else NCPoly.zero()
    assert partial(x) == want_p
    assert dbar(x) == want_d


def test_disc_relation_differentiates_to_form_relation():
    disc = W("zs", "z") - W("z", "zs", coeff=q * q) - NCPoly.scalar(1 - q * q)
    raw = calculus.leibniz(disc, {"z": W("dz")}, FORMS, normalize=False)
    assert raw == W("zs", "dz") - W("dz", "zs", coeff=q * q)
    assert FORMS.normal_form(raw) == NCPoly.zero()


def test_form_table_and_from_pol():
    x = from_pol(pol_product(z_star, z))
    assert form_table(x) == {(1, 1, 0, 0): q * q, (0, 0, 0, 0): 1 - q * q}
    assert from_pol(a_plus) == W("z", coeff=qpow(-0.5))
    assert from_pol(a_minus) == W("zs", coeff=qpow(1.5))


@given(forms())
def test_square_zero(x):
    assert dtot(dtot(x)) == NCPoly.zero()
    assert partial(partial(x)) == NCPoly.zero()
    assert dbar(dbar(x)) == NCPoly.zero()
    assert dtot(x) == partial(x) + dbar(x)


@given(forms(3), forms(3))
def test_graded_leibniz(x, y):
    if not homogeneous_parity(x):
        return
    sign = -1 if x and sum(FORMS.letters[a].parity for a in next(iter(x.terms))) % 2 else 1
    for der in (partial, dbar, dtot):
        lhs = der(form_product(x, y))
        rhs = FORMS.normal_form(der(x) * y + (x * der(y)).scale(sign))
        assert lhs == rhs


@given(forms(3), st.sampled_from(["E", "F", "K"]))
def test_derivations_commute_with_action(x, g):
    for der in (partial, dbar):
        assert der(act_forms(W(g), x)) == act_forms(W(g), der(x))


@given(forms(2), forms(2), st.sampled_from(["E", "F", "K"]))
def test_forms_are_a_module_algebra(x, y, g):
    from qdisc.ncpoly import split_tensor
    lhs = act_forms(W(g), form_product(x, y))
    rhs = NCPoly.zero()
    for (a, b), c in split_tensor(H.coproduct(W(g)), 2).items():
        rhs = rhs + form_product(act_forms(W(*a), x), act_forms(W(*b), y)).scale(c)
    assert lhs == FORMS.normal_form(rhs)


def test_action_agrees_with_pol_on_functions():
    from qdisc.covalg import pol_action
    for x in (a_plus, a_minus, pol_product(a_plus, a_minus)):
        for g in ("E", "F", "K"):
            assert act_forms(W(g), from_pol(x)) == from_pol(pol_action(W(g), x))


@pytest.mark.parametrize("f", ["zs", "dzs"])
@pytest.mark.parametrize("g", ["z", "dz"])
def test_braiding_predicts_mixed_relations(f, g):
    assert rmatrix_reorder(W(f), W(g)) == FORMS.mul(W(f), W(g))


def test_braiding_on_longer_words():
    f, g = W("zs", "zs"), W("z", "dz")
    assert rmatrix_reorder(f, g) == FORMS.mul(f, g)


# -- first-order calculi --------------------------------------------------------


@pytest.mark.parametrize("calc", ["lambda1_holo", "lambda1_anti"])
def test_lambda1_components_are_lines(calc):
    rep = verify_first_order(calc, 8)
    assert rep.passed, str(rep)
    assert set(rep.data["dimensions"].values()) == {1}
    assert len(rep.data["dimensions"]) == 8
    for kind in ("A.dA", "dA.A", "A.dA.A"):
        assert set(rep.data[kind].values()) == {1}


@pytest.mark.parametrize("calc", ["omega10", "omega01", "omega1"])
def test_omega_calculi_spanned(calc):
    rep = verify_first_order(calc, 6)
    assert rep.passed, str(rep)


def test_omega10_total_degree_zero():
    rep = verify_first_order("omega10", 2)
    assert rep.data["dimensions"]["degree 0, length <= 2"] == 1
    assert rep.passed


def test_zero_bound_is_vacuous():
    for calc in CALCULI:
        rep = verify_first_order(calc, 0)
        assert rep.passed and not rep.checks


def test_unknown_calculus():
    with pytest.raises(ValueError):
        verify_first_order("omega2", 3)


# -- Dolbeault modules -----------------------------------------------------------


@pytest.mark.parametrize("mu", range(-2, 4))
def test_dolbeault_relations(mu):
    m = DolbeaultElement.generator(mu)
    assert dolbeault_product(W("z"), m) == DolbeaultElement(mu, W("m", "z", coeff=qpow(-mu)))
    assert dolbeault_product(W("dzs"), m) == DolbeaultElement(mu, W("m", "dzs", coeff=qpow(mu)))
    assert dolbeault_product(NCPoly.one(), m) == m
    assert dbar_mu(m) == DolbeaultElement(mu, NCPoly.zero())
    assert dbar_mu(DolbeaultElement(mu, W("m", "zs"))) == DolbeaultElement(mu, W("m", "dzs"))
    assert dbar_mu(dolbeault_product(W("zs"), m)) == DolbeaultElement(mu, W("m", "dzs", coeff=qpow(mu)))
    x = DolbeaultElement(mu, W("m", "zs", "z"))
    assert not dbar_mu(dbar_mu(x))


@pytest.mark.parametrize("mu", range(-2, 4))
def test_dolbeault_action_on_generator(mu):
    m = DolbeaultElement.generator(mu)
    assert not uq_action_dolbeault(W("F"), m)
    assert uq_action_dolbeault(W("K"), m) == m.scale(qpow(mu))
    coeff = -qpow(0.5) * (1 - qpow(2 * mu)) / (1 - q * q)
    assert uq_action_dolbeault(W("E"), m) == DolbeaultElement(mu, W("z", "m", coeff=coeff))


@pytest.mark.parametrize("mu", [-1, 0, 2])
def test_dolbeault_action_is_a_representation(mu):
    qi = q.inv()
    for w in (W("m"), W("m", "z"), W("m", "zs", "dzs"), W("m", "z", "zs")):
        x = DolbeaultElement(mu, w)
        ef = uq_action_dolbeault(W("E", "F"), x) - uq_action_dolbeault(W("F", "E"), x)
        cart = (uq_action_dolbeault(W("K"), x) - uq_action_dolbeault(W("Ki"), x)).scale((q - qi).inv())
        assert ef == cart


def test_weight_zero_module_is_trivial_on_m():
    m = DolbeaultElement.generator(0)
    assert not uq_action_dolbeault(W("E"), m)


def test_dolbeault_rejects_bad_input():
    with pytest.raises(ValueError):
        DolbeaultElement(0, W("z"))
    with pytest.raises(ValueError):
        dolbeault_product(W("dz"), DolbeaultElement.generator(0))
    with pytest.raises(ValueError):
        DolbeaultElement.generator(0) + DolbeaultElement.generator(1)


def test_dolbeault_render():
    x = dolbeault_product(W("z"), DolbeaultElement.generator(2))
    assert x.render() == "q^-2*m[2]*z"


def test_calculus_suite():
    rep = calculus.verify_calculus(6)
    assert rep.passed, str(rep)


def test_dolbeault_suite():
    rep = verify_dolbeault(4, mus=(-1, 2), mult_power=2)
    assert rep.passed, str(rep)


def test_star_relation_read_from_either_side():
    # z* dz* = q^2 dz* z* and dz* z* = q^-2 z* dz* are one relation
    left = form_product(W("zs"), W("dzs"))
    right = form_product(W("dzs"), W("zs"))
    assert left == right.scale(qpow(2))
    assert right == left.scale(qpow(-2))
