"""Verma modules V+(m), V-(m) over U_q(sl2).

V+(m) is spanned by E^j v+ (j >= 0) with F v+ = 0 and K v+ = q^m v+;
V-(m) is spanned by F^j v- with E v- = 0 and K v- = q^m v-.  Here ``m`` is
the integer lambda(H).  Tensor products of modules use the opposite
coproduct, Delta^op(E) = 1(x)E + E(x)K, Delta^op(F) = Ki(x)F + F(x)1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hopf import default_uqsl2, uqsl2_system
from .ncpoly import NCPoly, split_tensor
from .parsing import join_terms, render_term
from .report import Report
from .scalar import ONE, ZERO, QScalar, qpow


@dataclass(frozen=True)
class VermaModule:
    sign: str  # "+" or "-"
    m: int = 0

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be '+' or '-'")

    @property
    def raising(self) -> str:
        """The letter that moves along the basis (E for V+, F for V-)."""
        return "E" if self.sign == "+" else "F"

    @property
    def killing(self) -> str:
        return "F" if self.sign == "+" else "E"

    @property
    def system(self):
        # PBW order with the annihilating letter rightmost
        return uqsl2_system("EKF" if self.sign == "+" else "FKE")

    def basis(self, j: int) -> "VermaVector":
        if j < 0:
            raise ValueError("basis index must be >= 0")
        return VermaVector(self, {j: ONE})

    @property
    def generator(self) -> "VermaVector":
        return self.basis(0)

    def zero(self) -> "VermaVector":
        return VermaVector(self, {})

    def weight(self, j: int) -> int:
        return self.m + (2 * j if self.sign == "+" else -2 * j)

    def absolute_degree(self, j: int) -> Fraction:
        """Absolute degree m/2 +- j (the generator sits in degree lambda(H)/2)."""
        return Fraction(self.m, 2) + (j if self.sign == "+" else -j)

    def dual_sign(self) -> "VermaModule":
        return VermaModule("-" if self.sign == "+" else "+", -self.m)

    def label(self) -> str:
        return f"v{self.sign}" if self.m == 0 else f"v{self.sign}[{self.m}]"

    def __str__(self):
        return f"V{self.sign}({self.m})"


class VermaVector:
    """A finite combination sum_j c_j X^j v of basis vectors of one module."""

    __slots__ = ("module", "coeffs")

    def __init__(self, module: VermaModule, coeffs: dict):
        self.module = module
        self.coeffs = {j: c for j, c in coeffs.items() if c}
        for j in self.coeffs:
            if j < 0:
                raise ValueError("basis index must be >= 0")

    def __add__(self, other: "VermaVector") -> "VermaVector":
        if other.module != self.module:
            raise ValueError(f"cannot add vectors of {self.module} and {other.module}")
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, ZERO) + c
        return VermaVector(self.module, out)

    def __sub__(self, other):
        return self + other.scale(QScalar(-1))

    def __neg__(self):
        return self.scale(QScalar(-1))

    def scale(self, c) -> "VermaVector":
        c = c if isinstance(c, QScalar) else QScalar(c)
        return VermaVector(self.module, {j: a * c for j, a in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, VermaVector):
            return NotImplemented
        return self.module == other.module and self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, j: int) -> QScalar:
        return self.coeffs.get(j, ZERO)

    def render(self) -> str:
        mod = self.module
        alone = len(self.coeffs) == 1
        pieces = []
        for j in sorted(self.coeffs, reverse=True):
            x = mod.raising
            body = mod.label() if j == 0 else (f"{x}.{mod.label()}" if j == 1 else f"{x}^{j}.{mod.label()}")
            pieces.append(render_term(self.coeffs[j], body, alone))
        return join_terms(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"VermaVector({self.module}, {self.render()})"


def act(xi: NCPoly, v: VermaVector) -> VermaVector:
    """The U_q(sl2) action xi . v."""
    mod = v.module
    sys = mod.system
    x, k = mod.raising, mod.killing
    out: dict = {}
    for w, c in xi.terms.items():
        for j, a in v.coeffs.items():
            for u, b in sys.reduce_word(tuple(w) + (x,) * j).terms.items():
                # normal words read X^a K^b Y^c with Y the annihilator
                if k in u:
                    continue
                power = u.count("K") - u.count("Ki")
                idx = u.count(x)
                out[idx] = out.get(idx, ZERO) + c * a * b * qpow(mod.m * power)
    return VermaVector(mod, out)


def act_word(letters, v: VermaVector) -> VermaVector:
    return act(NCPoly.word(*letters), v)


# -- tensor products ----------------------------------------------------------


class TensorVector:
    """An element of V_1 (x) ... (x) V_n keyed by tuples of basis indices."""

    __slots__ = ("modules", "coeffs")

    def __init__(self, modules: tuple, coeffs: dict):
        self.modules = tuple(modules)
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def __add__(self, other):
        if other.modules != self.modules:
            raise ValueError("tensor factors differ")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return TensorVector(self.modules, out)

    def scale(self, c):
        c = c if isinstance(c, QScalar) else QScalar(c)
        return TensorVector(self.modules, {k: a * c for k, a in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.modules == other.modules and self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def render(self) -> str:
        pieces = []
        alone = len(self.coeffs) == 1
        for key in sorted(self.coeffs, reverse=True):
            slots = []
            for mod, j in zip(self.modules, key):
                slots.append(mod.basis(j).render())
            pieces.append(render_term(self.coeffs[key], " (x) ".join(slots), alone))
        return join_terms(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TensorVector({self.render()})"


def tensor(*vectors: VermaVector) -> TensorVector:
    coeffs = {(): ONE}
    for v in vectors:
        coeffs = {k + (j,): c * a for k, c in coeffs.items() for j, a in v.coeffs.items()}
    return TensorVector(tuple(v.module for v in vectors), coeffs)


def act_tensor(xi: NCPoly, t: TensorVector) -> TensorVector:
    """xi acting on a two-fold tensor product through Delta^op."""
    if len(t.modules) != 2:
        raise ValueError("act_tensor handles two tensor factors")
    h = default_uqsl2()
    m1, m2 = t.modules
    out = TensorVector(t.modules, {})
    for (a, b), c in split_tensor(h.coproduct(h.nf(xi)), 2).items():
        # Delta(xi) = sum a (x) b, so Delta^op(xi) = sum b (x) a
        for (i, j), d in t.coeffs.items():
            left = act_word(b, m1.basis(i))
            if not left:
                continue
            right = act_word(a, m2.basis(j))
            out = out + tensor(left, right).scale(c * d)
    return out


def _generated(module: VermaModule, v: VermaVector, image_of_generator: TensorVector) -> TensorVector:
    """Unique morphism extension: X^j v0 -> Delta^op(X^j) applied to the image of v0."""
    if v.module != module:
        raise ValueError(f"expected a vector of {module}, got {v.module}")
    out = TensorVector(image_of_generator.modules, {})
    for j, c in v.coeffs.items():
        out = out + act_tensor(NCPoly.word(*(module.raising,) * j), image_of_generator).scale(c)
    return out


def coproduct_v0(v: VermaVector) -> TensorVector:
    """Delta+- on V+-(0): the morphism extending v0 -> v0 (x) v0."""
    mod = v.module
    if mod.m != 0:
        raise ValueError("the coalgebra structure lives on V+(0) and V-(0)")
    return _generated(mod, v, tensor(mod.generator, mod.generator))


def counit_v0(v: VermaVector) -> QScalar:
    if v.module.m != 0:
        raise ValueError("the counit lives on V+(0) and V-(0)")
    return v.coeff(0)


def apply_slot(t: TensorVector, slot: int, fn) -> TensorVector:
    """Apply a linear map (basis vector -> TensorVector or VermaVector) to one slot."""
    out = None
    for key, c in t.coeffs.items():
        img = fn(t.modules[slot].basis(key[slot]))
        if isinstance(img, VermaVector):
            img = TensorVector((img.module,), {(j,): a for j, a in img.coeffs.items()})
        mods = t.modules[:slot] + img.modules + t.modules[slot + 1:]
        piece = TensorVector(mods, {key[:slot] + k + key[slot + 1:]: a * c for k, a in img.coeffs.items()})
        out = piece if out is None else out + piece
    if out is None:
        raise ValueError("apply_slot on zero tensor needs explicit modules")
    return out


def counit_slot(t: TensorVector, slot: int) -> VermaVector:
    """(eps (x) id) or (id (x) eps) on a two-fold tensor."""
    other = t.modules[1 - slot]
    out = other.zero()
    for key, c in t.coeffs.items():
        out = out + other.basis(key[1 - slot]).scale(c * counit_v0(t.modules[slot].basis(key[slot])))
    return out


def delta_plus(v: VermaVector) -> VermaVector:
    """V+(2) -> V+(0), v+(2) -> E v+(0)."""
    if v.module != VermaModule("+", 2):
        raise ValueError("delta_plus is defined on V+(2)")
    return VermaVector(VermaModule("+", 0), {j + 1: c for j, c in v.coeffs.items()})


def delta_minus(v: VermaVector) -> VermaVector:
    """V-(-2) -> V-(0), v-(-2) -> F v-(0)."""
    if v.module != VermaModule("-", -2):
        raise ValueError("delta_minus is defined on V-(-2)")
    return VermaVector(VermaModule("-", 0), {j + 1: c for j, c in v.coeffs.items()})


def comodule_left(v: VermaVector) -> TensorVector:
    """Delta_L: V-(mu) -> V-(0) (x) V-(mu), v-(mu) -> v-(0) (x) v-(mu)."""
    mod = v.module
    if mod.sign != "-":
        raise ValueError("comodule maps are defined on V-(mu)")
    return _generated(mod, v, tensor(VermaModule("-", 0).generator, mod.generator))


def comodule_right(v: VermaVector) -> TensorVector:
    mod = v.module
    if mod.sign != "-":
        raise ValueError("comodule maps are defined on V-(mu)")
    return _generated(mod, v, tensor(mod.generator, VermaModule("-", 0).generator))


def involution_v(v: VermaVector) -> VermaVector:
    """(xi v)* = (S^-1(xi))* v*, with v+(m)* = v-(-m) and back."""
    h = default_uqsl2()
    mod = v.module
    target = mod.dual_sign()
    out = target.zero()
    for j, c in v.coeffs.items():
        xi = NCPoly.word(*(mod.raising,) * j)
        op = h.star(h.antipode_inverse(xi))
        out = out + act(op, target.generator).scale(c.conjugate())
    return out


def first_slot_is_generator(t: TensorVector) -> bool:
    """True when every term of ``t`` has the generator in the first slot."""
    return all(k[0] == 0 for k in t.coeffs)


def verify_verma(degree: int = 6, word_len: int = 3) -> Report:
    """Module axiom, coassociativity, counit, morphism and comodule checks."""
    import itertools


    rep = Report(f"Verma modules (degree {degree})")
    letters = ("E", "F", "K", "Ki")
    words = [w for n in range(1, word_len + 1) for w in itertools.product(letters, repeat=n)]
    for mod in (VermaModule("+", 0), VermaModule("-", 0), VermaModule("+", 3), VermaModule("-", -1)):
        for j in range(degree + 1):
            v = mod.basis(j)
            for w in words:
                if len(w) < 2:
                    continue
                for cut in range(1, len(w)):
                    xi, eta = w[:cut], w[cut:]
                    ok = act_word(w, v) == act_word(xi, act_word(eta, v))
                    rep.record("module axiom", ok, f"{''.join(w)} on {v} ({mod})")
            rep.record("annihilator kills the generator", not act_word((mod.killing,), mod.generator), str(mod))
            rep.record("K eigenvalue", act_word(("K",), v) == v.scale(qpow(mod.weight(j))), f"{v} ({mod})")
    for mod in (VermaModule("+", 0), VermaModule("-", 0)):
        for j in range(min(degree, 5) + 1):
            v = mod.basis(j)
            d = coproduct_v0(v)
            left = apply_slot(d, 0, coproduct_v0)
            right = apply_slot(d, 1, coproduct_v0)
            rep.record("coassociativity", left == right, f"{v}")
            rep.record("counit (eps (x) id)", counit_slot(d, 0) == v, f"{v}")
            rep.record("counit (id (x) eps)", counit_slot(d, 1) == v, f"{v}")
            for g in ("E", "F", "K"):
                xi = NCPoly.word(g)
                rep.record("Delta is a module morphism", act_tensor(xi, d) == coproduct_v0(act(xi, v)), f"{g}, {v}")
        for j in range(degree + 1):
            v = mod.basis(j)
            back = involution_v(involution_v(v))
            rep.record("involution is involutive", back == v, f"{v}")
    for j in range(min(degree, 5) + 1):
        for g in ("E", "F", "K"):
            xi = NCPoly.word(g)
            v = VermaModule("+", 2).basis(j)
            rep.record("delta+ is a morphism", act(xi, delta_plus(v)) == delta_plus(act(xi, v)), f"{g}, {v}")
            v = VermaModule("-", -2).basis(j)
            rep.record("delta- is a morphism", act(xi, delta_minus(v)) == delta_minus(act(xi, v)), f"{g}, {v}")
    # Delta-(v) in v-(0) (x) V-(0) exactly when v is a multiple of v-(0)
    vm = VermaModule("-", 0)
    for v in _test_vectors(vm, degree):
        expect = set(v.coeffs) <= {0}
        rep.record("Delta-(v) in v0 (x) V iff v in C v0", first_slot_is_generator(coproduct_v0(v)) == expect, f"{v}")
    lm = VermaModule("-", -2)
    for v in _test_vectors(lm, degree):
        expect = set(v.coeffs) <= {0}
        rep.record("Delta_L(v) in v0 (x) V iff v lowest", first_slot_is_generator(comodule_left(v)) == expect, f"{v}")
    for mu in (-2, 0, 3):
        mod = VermaModule("-", mu)
        for j in range(degree + 1):
            v = mod.basis(j)
            rep.record("comodule counit", counit_slot(comodule_left(v), 0) == v, f"{v}")
            rep.record("comodule counit (right)", counit_slot(comodule_right(v), 1) == v, f"{v}")
    return rep


def _test_vectors(mod: VermaModule, degree: int):
    """Basis vectors plus a few mixed combinations."""
    for j in range(degree + 1):
        yield mod.basis(j)
    yield mod.basis(0) + mod.basis(1).scale(qpow(1))
    yield mod.basis(0).scale(QScalar(3)) + mod.basis(degree)
    yield mod.basis(1) + mod.basis(2)
