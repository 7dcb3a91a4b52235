import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdisc import fock
from qdisc.covalg import PolElement, pol_product, z, z_star
from qdisc.scalar import q


def test_build_shapes():
    rep = fock.build(5, 0.5)
    assert rep.Z.shape == (5, 5)
    assert rep.Z[1, 0] == pytest.approx(math.sqrt(1 - 0.25))
    assert np.array_equal(rep.Zs, rep.Z.T)


def test_build_rejects_bad_input():
    with pytest.raises(ValueError):
        fock.build(1, 0.5)
    with pytest.raises(ValueError):
        fock.build(8, 1.0)


def test_relation_residual_examples():
    assert fock.relation_residual(fock.build(64, 0.5)) <= 1e-12
    # the full block sees the truncated shift on its last coordinate
    full = fock.relation_residual(fock.build(2, 0.5), full=True)
    assert full == pytest.approx(1.0 - 0.25 * 0.75 - 0.75 + 0.75, abs=0.5)
    assert full > 0.1


@given(st.floats(0.01, 0.99))
def test_relation_residual_random_q(q0):
    assert fock.relation_residual(fock.build(128, q0)) <= 1e-12


def test_eval_rep_matches_generators():
    rep = fock.build(16, 0.4)
    assert np.allclose(fock.eval_rep(rep, z), rep.Z)
    assert np.allclose(fock.eval_rep(rep, z_star), rep.Zs)


def test_one_dimensional_representations():
    for phi in (0.0, 0.7, 2.0):
        zz = pol_product(z, z_star)
        assert fock.one_dim_rep(phi, zz, 0.5) == pytest.approx(1.0)
        rel = pol_product(z_star, z) - pol_product(z, z_star).scale(q * q)
        assert fock.one_dim_rep(phi, rel, 0.5) == pytest.approx(1 - 0.25)
        assert fock.one_dim_rep(phi, z, 0.5) == pytest.approx(cmath.exp(1j * phi))


def test_norm_estimates():
    assert fock.sup_norm_estimate(z, 256, 0.5) == pytest.approx(1.0, abs=1e-6)
    assert fock.sup_norm_estimate(PolElement.scalar(1), 32, 0.5) == 1.0
    zz = pol_product(z, z_star)
    assert fock.sup_norm_estimate(zz, 256, 0.5) == pytest.approx(1.0, abs=1e-6)


def test_zz_star_is_diagonal():
    rep = fock.build(20, 0.6)
    m = fock.eval_rep(rep, pol_product(z, z_star))
    want = np.diag([0.0] + [1 - 0.6 ** (2 * k) for k in range(1, 20)])
    assert np.allclose(m, want)


def test_spectrum_proxy():
    rep = fock.build(512, 0.5)
    assert fock.smallest_singular_value(rep, 0.7 * cmath.exp(0.4j)) <= 1e-2
    # points outside the closed unit disc stay away from the spectrum
    assert fock.smallest_singular_value(fock.build(64, 0.5), 1.5) > 0.4


def test_verify_fock_suite():
    rep = fock.verify_fock()
    assert rep.passed, str(rep)
