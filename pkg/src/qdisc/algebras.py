"""Parse contexts: which letters each algebra understands and how they evaluate."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import verma
from .calculus import FORMS, dolbeault_system
from .covalg import POL
from .hopf import uqsl2_system
from .ncpoly import NCPoly
from .parsing import Context, Letter, parse
from .scalar import qpow

ALGEBRAS = ("uqsl2", "pol", "forms", "dolbeault")

W = NCPoly.word


def _vector(name: str, m: int | None):
    return verma.VermaModule(name[1], m or 0).generator


def _uqsl2() -> Context:
    return Context(
        name="uqsl2",
        system=uqsl2_system("FKE"),
        letters={"E": W("E"), "F": W("F"), "K": W("K")},
        inverses={"K": W("Ki")},
        vectors=_vector,
        act=verma.act,
    )


def _pol() -> Context:
    return Context(
        name="pol",
        system=POL,
        letters={
            "a+": W("ap"),
            "a-": W("am"),
            # z = q^1/2 a+ and z* = q^-3/2 a-
            "z": W("ap", coeff=qpow(Fraction(1, 2))),
            "z*": W("am", coeff=qpow(Fraction(-3, 2))),
        },
    )


def _forms() -> Context:
    return Context(
        name="forms",
        system=FORMS,
        letters={"z": W("z"), "z*": W("zs"), "dz": W("dz"), "dz*": W("dzs")},
    )


def _dolbeault(mu: int) -> Context:
    def m(k: int) -> NCPoly:
        if k != mu:
            raise ValueError(f"m[{k}] does not belong to the mu = {mu} module")
        return W("m")

    return Context(
        name=f"dolbeault[{mu}]",
        system=dolbeault_system(mu),
        letters={"z": W("z"), "z*": W("zs"), "dz*": W("dzs")},
        params={"m": m},
    )


@lru_cache(maxsize=None)
def context(name: str, mu: int | None = None) -> Context:
    if name == "uqsl2":
        return _uqsl2()
    if name == "pol":
        return _pol()
    if name == "forms":
        return _forms()
    if name == "dolbeault":
        return _dolbeault(0 if mu is None else mu)
    raise ValueError(f"unknown algebra {name!r}; choose from {', '.join(ALGEBRAS)}")


def find_mu(text: str) -> int | None:
    """The parameter of the first ``m[mu]`` in ``text``, if any."""
    node = parse(text)
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Letter):
            if n.name == "m" and n.param is not None:
                return n.param
            continue
        kids = [v for v in vars(n).values() if hasattr(v, "__dataclass_fields__")]
        stack.extend(reversed(kids))
    return None
