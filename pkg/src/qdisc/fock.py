"""Truncated Fock representation of the quantum disc and its one-dimensional
representations, evaluated numerically at a fixed q0 in (0, 1).

T(z) e_m = (1 - q0^(2(m+1)))^(1/2) e_(m+1) and T(z*) is its transpose.  The
truncation to span(e_0, ..., e_(N-1)) drops e_N, so identities only hold on
the leading block away from the boundary.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .covalg import PolElement
from .report import Report
from .scalar import QScalar


@dataclass(frozen=True)
class TruncatedRep:
    dim: int
    q0: float
    Z: np.ndarray
    Zs: np.ndarray


def _check_q0(q0: float):
    if not 0.0 < q0 < 1.0:
        raise ValueError(f"q0 must lie in (0, 1), got {q0}")


def build(N: int, q0: float) -> TruncatedRep:
    if N < 2:
        raise ValueError("truncation dimension must be >= 2")
    _check_q0(q0)
    m = np.arange(N - 1)
    Z = np.zeros((N, N))
    Z[m + 1, m] = np.sqrt(1.0 - q0 ** (2 * (m + 1)))
    return TruncatedRep(N, q0, Z, Z.T.copy())


def relation_residual(rep: TruncatedRep, full: bool = False) -> float:
    """Max-norm of z* z - q^2 z z* - (1 - q^2) on the leading (N-1) block."""
    q2 = rep.q0 ** 2
    R = rep.Zs @ rep.Z - q2 * rep.Z @ rep.Zs - (1.0 - q2) * np.eye(rep.dim)
    if not full:
        R = R[: rep.dim - 1, : rep.dim - 1]
    return float(np.max(np.abs(R)))


def _scalar(c: QScalar, q0: float) -> float:
    return c.eval(q0)


def _mpow(M: np.ndarray, k: int) -> np.ndarray:
    return np.linalg.matrix_power(M, k)


def eval_rep(rep: TruncatedRep, x: PolElement) -> np.ndarray:
    """T(x) for x = sum c_ij a+^i a-^j, using a+ = q^-1/2 z and a- = q^3/2 z*."""
    q0 = rep.q0
    out = np.zeros((rep.dim, rep.dim))
    for (i, j), c in x.coeffs.items():
        scale = _scalar(c, q0) * q0 ** (-0.5 * i + 1.5 * j)
        out += scale * (_mpow(rep.Z, i) @ _mpow(rep.Zs, j))
    return out


def one_dim_rep(phi: float, x: PolElement, q0: float) -> complex:
    """T_phi(z) = e^{i phi}, T_phi(z*) = e^{-i phi}."""
    _check_q0(q0)
    u = cmath.exp(1j * phi)
    total = 0j
    for (i, j), c in x.coeffs.items():
        total += _scalar(c, q0) * q0 ** (-0.5 * i + 1.5 * j) * u**i * u.conjugate() ** j
    return total


def sup_norm_estimate(x: PolElement, N: int, q0: float) -> float:
    """Operator 2-norm of the truncated Fock image."""
    return float(np.linalg.norm(eval_rep(build(N, q0), x), 2))


def smallest_singular_value(rep: TruncatedRep, w: complex) -> float:
    """sigma_min(T(z) - w), a finite proxy for w lying in the spectrum."""
    M = rep.Z.astype(complex) - w * np.eye(rep.dim)
    return float(np.linalg.svd(M, compute_uv=False)[-1])


def verify_fock(q_values=(0.3, 0.5, 0.9), N: int = 256, N_spec: int = 512, radius: float = 0.7) -> Report:
    from .covalg import z

    rep = Report(f"Fock representation (N={N})")
    for q0 in q_values:
        r = relation_residual(build(N, q0))
        rep.record("relation residual <= 1e-12", r <= 1e-12, f"q0={q0}: {r:.3e}")
    for q0 in q_values:
        norm = sup_norm_estimate(z, N, q0)
        rep.record("||T(z)|| within 1e-6 of 1", abs(norm - 1.0) <= 1e-6, f"q0={q0}: {norm!r}")
    big = build(N_spec, 0.5)
    for angle in (0.0, 1.0, 2.5):
        w = radius * cmath.exp(1j * angle)
        s = smallest_singular_value(big, w)
        rep.record(f"sigma_min(Z - w) <= 1e-2 at |w| = {radius}", s <= 1e-2, f"w={w:.3f}: {s:.3e}")
    return rep
