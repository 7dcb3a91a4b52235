import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import scalars
from oracles import rep_eval, spin_rep
from qdisc.calculus import FORMS, dolbeault_system
from qdisc.covalg import POL
from qdisc.hopf import CARTAN_COEFF, uqsl2_rules, uqsl2_system
from qdisc.ncpoly import (
    Generator, NCPoly, RewriteError, RewriteSystem, check_confluence, graded_component,
    is_homogeneous, join_tensor, split_tensor, tensor_power, verify_rewrite_system,
)

W = NCPoly.word
UQ = uqsl2_system("FKE")
SHIPPED = [UQ, uqsl2_system("EKF"), POL, FORMS] + [dolbeault_system(mu) for mu in range(-2, 4)]


def words(sys, max_len=5):
    names = [g.name for g in sys.alphabet]
    return st.lists(st.sampled_from(names), max_size=max_len).map(tuple)


def polys(sys, max_len=4):
    return st.lists(st.tuples(words(sys, max_len), scalars()), min_size=0, max_size=3).map(
        lambda ts: sum((W(*w, coeff=c) for w, c in ts), NCPoly.zero()))


def test_ef_normal_form():
    want = W("F", "E") + (W("K") - W("Ki")).scale(CARTAN_COEFF)
    assert UQ.normal_form(W("E", "F")) == want


def test_pol_normal_form():
    from qdisc.scalar import q, qpow
    assert POL.normal_form(W("am", "ap")) == W("ap", "am", coeff=qpow(2)) + NCPoly.scalar(q * (1 - q * q))


def test_empty_word_is_normal():
    assert UQ.normal_form(NCPoly.one()) == NCPoly.one()
    assert UQ.normal_form(NCPoly.zero()) == NCPoly.zero()


@pytest.mark.parametrize("sys", SHIPPED, ids=lambda s: s.name)
def test_shipped_systems_are_confluent(sys):
    assert check_confluence(sys) == []


def test_commutative_ef_rule_is_still_confluent():
    # E F -> F E together with the K-rules is a consistent (commutative) quotient
    rules = uqsl2_rules("FKE", commutator=NCPoly.zero())
    sys = RewriteSystem(UQ.alphabet, rules, name="ef-commute")
    assert check_confluence(sys) == []


def test_wrong_cartan_sign_is_not_confluent():
    from qdisc.scalar import qpow
    rules = [(l, r) for l, r in uqsl2_rules("FKE") if l != ("E", "Ki")]
    rules.append((("E", "Ki"), W("Ki", "E", coeff=qpow(-2))))
    sys = RewriteSystem(UQ.alphabet, rules, name="broken")
    bad = check_confluence(sys)
    assert bad
    assert bad[0].overlap in {("E", "K", "Ki"), ("E", "Ki", "K")}


def test_graded_component():
    z, zs = W("z"), W("zs")
    assert graded_component(z + z * zs, 0, FORMS) == z * zs
    assert graded_component(NCPoly.one(), 0, FORMS) == NCPoly.one()
    assert graded_component(W("E", "F"), 0, UQ) == W("E", "F")
    assert graded_component(W("E", "F"), 1, UQ) == NCPoly.zero()


def test_rules_must_decrease():
    a, b = Generator("a"), Generator("b")
    with pytest.raises(RewriteError):
        RewriteSystem([a, b], [(("a", "b"), W("b", "a", "a"))])
    with pytest.raises(RewriteError):
        RewriteSystem([a, b], [(("a",), W("c"))])


def test_rules_must_be_homogeneous():
    a, b = Generator("a", 1), Generator("b", 0)
    with pytest.raises(RewriteError):
        RewriteSystem([a, b], [(("b", "a"), W("b"))])


def test_tensor_split_join_round_trip():
    sq = tensor_power(UQ, 2)
    p = W("E_1", "K_2") + W("F_1", coeff=3)
    parts = split_tensor(sq.normal_form(p), 2)
    assert parts == {(("E",), ("K",)): 1, (("F",), ()): 3}
    assert join_tensor(parts) == sq.normal_form(p)


def test_tensor_factors_commute():
    sq = tensor_power(UQ, 2)
    assert sq.normal_form(W("E_2", "F_1")) == W("F_1", "E_2")


@pytest.mark.parametrize("sys", SHIPPED[:4], ids=lambda s: s.name)
def test_verify_rewrite_system(sys):
    rep = verify_rewrite_system(sys, 6, samples=20)
    assert rep.passed, str(rep)


@given(polys(UQ))
def test_normal_form_idempotent(p):
    n = UQ.normal_form(p)
    assert UQ.normal_form(n) == n
    assert all(UQ.is_normal(w) for w in n.terms)


@given(polys(POL), polys(POL), scalars(), scalars())
def test_normal_form_linear(p, r, a, b):
    lhs = POL.normal_form(p.scale(a) + r.scale(b))
    assert lhs == POL.normal_form(p).scale(a) + POL.normal_form(r).scale(b)


@given(polys(FORMS, 3), polys(FORMS, 3))
def test_normal_form_compatible_with_products(p, r):
    assert FORMS.normal_form(p * r) == FORMS.normal_form(FORMS.normal_form(p) * FORMS.normal_form(r))


@given(words(UQ, 6))
def test_homogeneity_preserved(w):
    p = W(*w)
    assert is_homogeneous(p, UQ)
    n = UQ.normal_form(p)
    assert all(UQ.labels(u) == UQ.labels(w) for u in n.terms)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("order", ["FKE", "EKF"])
def test_normal_form_agrees_in_matrix_representations(n, order):
    """nf(w) and w have the same image in every finite-dimensional module."""
    sys = uqsl2_system(order)
    rep = spin_rep(n)
    rng = random.Random(n)
    names = [g.name for g in sys.alphabet]
    for _ in range(25):
        w = tuple(rng.choice(names) for _ in range(rng.randint(0, 6)))
        p = W(*w)
        assert (rep_eval(sys.normal_form(p), rep) == rep_eval(p, rep)).all(), w


def test_serialize_lists_rules():
    text = POL.serialize()
    assert "a-*a+ -> q^2*a+*a- + (q-q^3)" in text
    assert text.startswith("# rewrite system pol")
