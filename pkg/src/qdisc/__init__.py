"""Exact computations for the quantum disc and the U_q(sl2) structures around it."""

from .scalar import ONE, ZERO, QScalar, q, qpow, sqrt_q

__all__ = ["QScalar", "ONE", "ZERO", "q", "qpow", "sqrt_q"]
__version__ = "0.1.0"
