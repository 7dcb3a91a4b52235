import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import scalars
from oracles import pol_normal_order
from qdisc import covalg, fock
from qdisc.covalg import (
    ANTI, HOLO, DualFunctional, PolElement, a_minus, a_plus, closed_form_action, dual_action,
    dual_product, generator, pair, pol_action, pol_involution, pol_product, pol_product_rewrite,
    power, rmatrix_flip, solve_invariant_integral, unit, verify_invariant_integral, z, z_star,
)
from qdisc.hopf import default_uqsl2
from qdisc.ncpoly import NCPoly, split_tensor
from qdisc.scalar import ONE, ZERO, q, q_product, qpow
from qdisc.verma import VermaModule, act

W = NCPoly.word
H = default_uqsl2()
VP, VM = VermaModule("+", 0), VermaModule("-", 0)
qi = q.inv()


def mono(i, j, c=ONE):
    return PolElement.monomial(i, j, c)


@st.composite
def pol_elements(draw, max_deg=3):
    terms = draw(st.lists(st.tuples(st.integers(0, max_deg), st.integers(0, max_deg), scalars()), max_size=3))
    out = PolElement()
    for i, j, c in terms:
        out = out + mono(i, j, c)
    return out


# -- pairing and dual action ----------------------------------------------------


def test_generator_normalization():
    am = generator(ANTI)
    assert pair(am, act(H.antipode(W("E")), VP.generator)) == ONE
    assert pair(am, act(H.antipode(W("E", "E")), VP.generator)) == ZERO
    assert pair(unit(ANTI), VP.generator) == ONE
    ap = generator(HOLO)
    assert pair(ap, act(H.antipode(W("F")), VM.generator)) == ONE


def test_generator_values_on_basis():
    # a-(E v+) = -q^2 and a+(F v-) = -1
    assert pair(generator(ANTI), VP.basis(1)) == -q * q
    assert pair(generator(HOLO), VM.basis(1)) == -ONE


def test_pairing_rejects_wrong_module():
    with pytest.raises(ValueError):
        pair(generator(ANTI), VM.generator)


def test_dual_action_examples():
    am = generator(ANTI)
    assert dual_action(W("E"), am).power_coeffs() == {0: ONE}
    assert dual_action(W("F"), am).power_coeffs() == {2: -q}
    assert dual_action(W("E"), power(ANTI, 3)).power_coeffs() == {2: 1 + qpow(-2) + qpow(-4)}


@pytest.mark.parametrize("k", range(6))
def test_dual_action_by_direct_pairing(k):
    """(xi f)(v) = f(S(xi) v), evaluated basis vector by basis vector."""
    f = power(ANTI, 3)
    for g in ("E", "F", "K"):
        lhs = pair(dual_action(W(g), f), VP.basis(k))
        rhs = pair(f, act(H.antipode(W(g)), VP.basis(k)))
        assert lhs == rhs


def test_powers_do_not_vanish():
    for j in range(1, 7):
        assert pair(power(ANTI, j), VP.basis(j)) != ZERO


def test_unit_is_neutral():
    f = power(ANTI, 2) + generator(ANTI).scale(q)
    assert dual_product(unit(ANTI), f) == f


@pytest.mark.parametrize("j", range(9))
def test_e_power_on_a_minus_power(j):
    got = dual_action(W(*("E",) * j), power(ANTI, j)).power_coeffs()
    assert got == {0: q_product(j)}


@pytest.mark.parametrize("side", [ANTI, HOLO])
@pytest.mark.parametrize("letter", ["K", "Ki", "E", "F"])
def test_closed_forms(side, letter):
    for j in range(11):
        got = dual_action(W(letter), power(side, j)).power_coeffs()
        assert got == closed_form_action(letter, side, {j: ONE}), j


def test_dual_functional_errors():
    with pytest.raises(ValueError):
        DualFunctional("sideways", {})
    with pytest.raises(ValueError):
        dual_product(generator(ANTI), generator(HOLO))


# -- R-matrix and the product ----------------------------------------------------


def test_rmatrix_flip_examples():
    assert rmatrix_flip(generator(ANTI), generator(HOLO)) == {(1, 1): q * q, (0, 0): q * (1 - q * q)}
    g = power(HOLO, 2)
    assert rmatrix_flip(unit(ANTI), g) == {(2, 0): ONE}
    assert rmatrix_flip(power(ANTI, 2), generator(HOLO)) == pol_normal_order(2, 1)


def test_rmatrix_flip_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        rmatrix_flip(unit(ANTI) + generator(ANTI), generator(HOLO))
    with pytest.raises(ValueError):
        rmatrix_flip(generator(HOLO), generator(ANTI))


def test_basic_product():
    want = mono(1, 1, q * q) + PolElement.scalar(q * (1 - q * q))
    assert pol_product(a_minus, a_plus) == want
    assert pol_product_rewrite(a_minus, a_plus) == want


def test_disc_relation():
    rel = pol_product(z_star, z) - pol_product(z, z_star).scale(q * q)
    assert rel == PolElement.scalar(1 - q * q)


def test_associativity_instance():
    ap, am = a_plus, a_minus
    assert pol_product(pol_product(ap, am), ap) == pol_product(ap, pol_product(am, ap))


@pytest.mark.parametrize("j", range(5))
@pytest.mark.parametrize("k", range(5))
def test_rmatrix_product_matches_closed_normal_ordering(j, k):
    assert pol_product(mono(0, j), mono(k, 0)).coeffs == pol_normal_order(j, k)


@given(pol_elements(), pol_elements())
def test_two_product_routes_agree(x, y):
    assert pol_product(x, y) == pol_product_rewrite(x, y)


@given(pol_elements(2), pol_elements(2), pol_elements(2))
def test_product_associative(x, y, w):
    assert pol_product(pol_product(x, y), w) == pol_product(x, pol_product(y, w))


@pytest.mark.parametrize("q0", [0.3, 0.7])
def test_product_in_fock_representation(q0):
    """T(xy) = T(x) T(y) on the block untouched by the truncation."""
    rep = fock.build(40, q0)
    xs = [a_plus, a_minus, mono(2, 1), mono(1, 2, q) + mono(0, 1)]
    for x in xs:
        for y in xs:
            lhs = fock.eval_rep(rep, pol_product(x, y))[:30, :30]
            rhs = (fock.eval_rep(rep, x) @ fock.eval_rep(rep, y))[:30, :30]
            assert np.allclose(lhs, rhs, atol=1e-12)


# -- involution and action -------------------------------------------------------


def test_involution_examples():
    assert pol_involution(a_plus) == a_minus.scale(qpow(-2))
    assert pol_involution(a_minus) == a_plus.scale(qpow(2))
    x = pol_product(a_plus, a_minus)
    assert pol_involution(x) == pol_product(pol_involution(a_minus), pol_involution(a_plus))
    assert pol_involution(z) == z_star


@given(pol_elements(), pol_elements())
def test_involution_is_antimultiplicative(x, y):
    lhs = pol_involution(pol_product(x, y))
    assert lhs == pol_product(pol_involution(y), pol_involution(x))
    assert pol_involution(pol_involution(x)) == x


def test_pol_action_examples():
    assert pol_action(W("E"), a_plus) == mono(2, 0, -q)
    assert pol_action(W("F"), a_plus) == PolElement.scalar(1)
    zz = pol_product(z, z_star)
    assert pol_action(W("K"), zz) == zz


@given(pol_elements(2), pol_elements(2), st.sampled_from(["E", "F", "K", "Ki"]))
def test_product_is_covariant(x, y, g):
    """xi(xy) = sum (xi' x)(xi'' y)."""
    lhs = pol_action(W(g), pol_product(x, y))
    rhs = PolElement()
    for (a, b), c in split_tensor(H.coproduct(W(g)), 2).items():
        rhs = rhs + pol_product(pol_action(W(*a), x), pol_action(W(*b), y)).scale(c)
    assert lhs == rhs


@given(pol_elements(2))
def test_action_is_a_representation(x):
    assert pol_action(W("E", "F"), x) == pol_action(W("E"), pol_action(W("F"), x))
    ef = pol_action(W("E", "F"), x) - pol_action(W("F", "E"), x)
    cart = (pol_action(W("K"), x) - pol_action(W("Ki"), x)).scale((q - qi).inv())
    assert ef == cart


@pytest.mark.parametrize("g", ["E", "F", "K", "EF"])
def test_involution_compatible_with_action(g):
    xi = W(*g)
    xs = [mono(i, j) for i in range(3) for j in range(3)]
    for x in xs:
        lhs = pol_involution(pol_action(xi, x))
        rhs = pol_action(H.star(H.antipode(xi)), pol_involution(x))
        assert lhs == rhs, x


# -- invariant integral ----------------------------------------------------------


def test_counit_functional_is_not_invariant():
    rep = verify_invariant_integral({(0, 0): ONE}, 4)
    assert not rep.passed
    assert rep.failures()[0].witness


def test_invariant_integral_solution():
    sols = solve_invariant_integral(4)
    assert len(sols) == 1
    nu = sols[0]
    assert all(i == j for i, j in nu)
    assert (0, 0) not in nu  # nu(1) = nu(F a+) = 0
    assert verify_invariant_integral(nu, 4).passed
    # scaling stays invariant
    assert verify_invariant_integral({k: c * (q + 3) for k, c in nu.items()}, 4).passed


def test_k_invariance_forces_weight_zero():
    for nu in solve_invariant_integral(3):
        assert all(i == j for i, j in nu)
    bad = {(1, 0): ONE}
    assert not verify_invariant_integral(bad, 2).passed


def test_parse_pol_round_trip():
    for x in [mono(2, 1, q + 1), a_minus - a_plus, pol_product(z_star, z)]:
        assert covalg.parse_pol(x.render()) == x


def test_verify_covalg_suite():
    rep = covalg.verify_covalg(4, dual_max=6)
    assert rep.passed, str(rep)
