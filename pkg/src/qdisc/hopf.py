"""The Hopf *-algebra U_q(sl2) and presentation data for general Cartan type.

U_q(sl2) has generators ``E, F, K, Ki`` (``Ki`` is K^{-1}) with

    K Ki = Ki K = 1,  K E = q^2 E K,  K F = q^-2 F K,
    E F - F E = (K - Ki)/(q - q^-1),

    Delta(E) = E(x)1 + K(x)E,  Delta(F) = F(x)Ki + 1(x)F,  Delta(K) = K(x)K,
    S(E) = -Ki E,  S(F) = -F K,  S(K) = Ki,
    E* = -K F,  F* = -E Ki,  K* = K.

Two PBW rewrite systems are shipped: ``"FKE"`` (normal form F^a K^b E^c,
the default) and ``"EKF"`` (E^a K^b F^c), which is the convenient one for
highest-weight modules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .ncpoly import (
    Generator,
    NCPoly,
    RewriteSystem,
    check_confluence,
    join_tensor,
    split_tensor,
    tensor_power,
    tensor_word,
)
from .report import Report
from .scalar import ONE, ZERO, QScalar, q, qpow

GENERATORS = ("E", "F", "K", "Ki")

# (q - q^-1)^-1, the coefficient of the Cartan term in [E, F]
CARTAN_COEFF = (q - q.inv()).inv()


def _alphabet(order: str) -> list[Generator]:
    gens = {
        "E": Generator("E", 1, 2),
        "F": Generator("F", -1, -2),
        "K": Generator("K", 0, 0),
        "Ki": Generator("Ki", 0, 0, display="K^-1"),
    }
    if order == "FKE":
        names = ["F", "Ki", "K", "E"]
    elif order == "EKF":
        names = ["E", "K", "Ki", "F"]
    else:
        raise ValueError(f"unknown PBW order {order!r}")
    return [gens[n] for n in names]


def uqsl2_rules(order: str = "FKE", commutator=None) -> list:
    """Defining relations oriented for the chosen PBW order.

    ``commutator`` overrides the right side of E F - F E (used to build
    deliberately broken systems in tests)."""
    W = NCPoly.word
    cart = (W("K") - W("Ki")).scale(CARTAN_COEFF) if commutator is None else commutator
    inverse = [(("K", "Ki"), NCPoly.one()), (("Ki", "K"), NCPoly.one())]
    if order == "FKE":
        return inverse + [
            (("E", "K"), W("K", "E", coeff=qpow(-2))),
            (("E", "Ki"), W("Ki", "E", coeff=qpow(2))),
            (("K", "F"), W("F", "K", coeff=qpow(-2))),
            (("Ki", "F"), W("F", "Ki", coeff=qpow(2))),
            (("E", "F"), W("F", "E") + cart),
        ]
    return inverse + [
        (("K", "E"), W("E", "K", coeff=qpow(2))),
        (("Ki", "E"), W("E", "Ki", coeff=qpow(-2))),
        (("F", "K"), W("K", "F", coeff=qpow(2))),
        (("F", "Ki"), W("Ki", "F", coeff=qpow(-2))),
        (("F", "E"), W("E", "F") - cart),
    ]


def uqsl2_system(order: str = "FKE") -> RewriteSystem:
    return _SYSTEMS[order]


_SYSTEMS = {o: RewriteSystem(_alphabet(o), uqsl2_rules(o), name=f"uqsl2[{o}]") for o in ("FKE", "EKF")}


def _t(*parts):
    return NCPoly.word(*tensor_word(parts))


@dataclass
class HopfPresentation:
    rewrite: RewriteSystem
    coproduct_on_gens: dict
    counit_on_gens: dict
    antipode_on_gens: dict
    star_on_gens: dict
    cartan_matrix: tuple = ((2,),)
    d: tuple = (1,)
    j0: int = 1
    relations_text: tuple = ()
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def is_sl2(self) -> bool:
        return tuple(map(tuple, self.cartan_matrix)) == ((2,),)

    @cached_property
    def square(self) -> RewriteSystem:
        return tensor_power(self.rewrite, 2)

    @cached_property
    def cube(self) -> RewriteSystem:
        return tensor_power(self.rewrite, 3)

    def nf(self, x: NCPoly) -> NCPoly:
        return self.rewrite.normal_form(x)

    def degree(self, x: NCPoly) -> set[int]:
        return {self.rewrite.labels(w)[0] for w in x.terms}

    # -- structure maps -----------------------------------------------------

    def coproduct(self, x: NCPoly) -> NCPoly:
        """Delta(x) as a normal-form element of the tensor square."""
        out = NCPoly.zero()
        for w, c in x.terms.items():
            out = out + self._coproduct_word(w).scale(c)
        return out

    def _coproduct_word(self, w):
        key = ("cop", w)
        hit = self._memo.get(key)
        if hit is None:
            if len(w) <= 1:
                img = self.coproduct_on_gens[w[0]] if w else _t((), ())
                hit = self.square.normal_form(img)
            else:
                hit = self.square.mul(self._coproduct_word(w[:-1]), self._coproduct_word(w[-1:]))
            self._memo[key] = hit
        return hit

    def coproduct_op(self, x: NCPoly) -> NCPoly:
        return join_tensor({(b, a): c for (a, b), c in split_tensor(self.coproduct(x), 2).items()})

    def counit(self, x: NCPoly) -> QScalar:
        total = ZERO
        for w, c in x.terms.items():
            v = c
            for a in w:
                v = v * self.counit_on_gens[a]
            total = total + v
        return total

    def antipode(self, x: NCPoly) -> NCPoly:
        return self._anti_map(x, "S", self.antipode_on_gens)

    def star(self, x: NCPoly) -> NCPoly:
        # antilinear, but conjugation is trivial on Q(q^{1/2})
        return self._anti_map(x, "*", self.star_on_gens)

    def _anti_map(self, x, tag, table):
        out = NCPoly.zero()
        for w, c in x.terms.items():
            key = (tag, w)
            img = self._memo.get(key)
            if img is None:
                if len(w) <= 1:
                    img = self.nf(table[w[0]]) if w else NCPoly.one()
                else:
                    img = self.nf(self._anti_map(NCPoly.word(*w[1:]), tag, table)
                                  * self._anti_map(NCPoly.word(w[0]), tag, table))
                self._memo[key] = img
            out = out + img.scale(c.conjugate() if tag == "*" else c)
        return out

    def antipode_inverse(self, x: NCPoly) -> NCPoly:
        """S^{-1}, obtained from S: on each normal monomial S^2 is diagonal."""
        out = NCPoly.zero()
        for w, c in self.nf(x).terms.items():
            key = ("S-1", w)
            img = self._memo.get(key)
            if img is None:
                s1 = self.antipode(NCPoly.word(*w))
                s2 = self.antipode(s1)
                if set(s2.terms) != {w}:
                    raise ValueError(f"S^2 is not diagonal on {w}; cannot invert")
                img = s1.scale(s2.terms[w].inv())
                self._memo[key] = img
            out = out + img.scale(c)
        return out

    # -- tensor helpers -----------------------------------------------------

    def tensor_star(self, t: NCPoly, n: int = 2) -> NCPoly:
        parts = split_tensor(t, n)
        sys = self.square if n == 2 else self.cube
        acc = NCPoly.zero()
        for key, c in parts.items():
            imgs = [self.star(NCPoly.word(*w)) for w in key]
            acc = acc + _tensor_product(imgs).scale(c.conjugate())
        return sys.normal_form(acc)

    def multiply_out(self, t: NCPoly, left=None, right=None) -> NCPoly:
        """m((left (x) right)(t)) for a tensor-square element ``t``."""
        acc = NCPoly.zero()
        for (a, b), c in split_tensor(t, 2).items():
            x, y = NCPoly.word(*a), NCPoly.word(*b)
            if left:
                x = left(x)
            if right:
                y = right(y)
            acc = acc + (x * y).scale(c)
        return self.nf(acc)

    def coproduct_left(self, t: NCPoly) -> NCPoly:
        """(Delta (x) id) t, landing in the tensor cube."""
        acc = NCPoly.zero()
        for (a, b), c in split_tensor(t, 2).items():
            d = split_tensor(self.coproduct(NCPoly.word(*a)), 2)
            for (a1, a2), c2 in d.items():
                acc = acc + _t(a1, a2, b).scale(c * c2)
        return self.cube.normal_form(acc)

    def coproduct_right(self, t: NCPoly) -> NCPoly:
        acc = NCPoly.zero()
        for (a, b), c in split_tensor(t, 2).items():
            d = split_tensor(self.coproduct(NCPoly.word(*b)), 2)
            for (b1, b2), c2 in d.items():
                acc = acc + _t(a, b1, b2).scale(c * c2)
        return self.cube.normal_form(acc)

    # -- verification -------------------------------------------------------

    def words(self, depth: int):
        letters = [g.name for g in self.rewrite.alphabet]
        for n in range(depth + 1):
            yield from itertools.product(letters, repeat=n)

    def verify_hopf_axioms(self, depth: int) -> Report:
        if not self.is_sl2:
            raise ValueError("axiom verification is only implemented for U_q(sl2)")
        if depth < 1:
            raise ValueError("depth must be >= 1")
        rep = Report(f"Hopf axioms (depth {depth})")
        sq = self.square
        for lhs, rhs in self.rewrite.rules:
            lw = NCPoly.word(*lhs)
            tag = "*".join(lhs)
            rep.record("Delta respects relations", sq.normal_form(self._free_coproduct(lhs))
                       == self.coproduct(rhs), tag)
            rep.record("counit respects relations", self.counit(lw) == self.counit(rhs), tag)
            rep.record("S respects relations", self.nf(self._free_anti(lhs, self.antipode_on_gens))
                       == self.antipode(rhs), tag)
            rep.record("* respects relations", self.nf(self._free_anti(lhs, self.star_on_gens))
                       == self.star(rhs), tag)
        for w in self.words(depth):
            tag = "*".join(w) or "1"
            x = self.nf(NCPoly.word(*w))
            dx = self.coproduct(x)
            rep.record("Delta is multiplicative", sq.normal_form(self._free_coproduct(w)) == dx, tag)
            rep.record("coassociativity", self.coproduct_left(dx) == self.coproduct_right(dx), tag)
            eps = self.counit(x)
            rep.record("counit (eps (x) id)", self._counit_slot(dx, 0) == x, tag)
            rep.record("counit (id (x) eps)", self._counit_slot(dx, 1) == x, tag)
            unit = NCPoly.scalar(eps)
            rep.record("antipode m(S (x) id)Delta", self.multiply_out(dx, left=self.antipode) == unit, tag)
            rep.record("antipode m(id (x) S)Delta", self.multiply_out(dx, right=self.antipode) == unit, tag)
            sx = self.antipode(x)
            rep.record("S is antimultiplicative",
                       self.nf(self._free_anti(w, self.antipode_on_gens)) == sx, tag)
            xs = self.star(x)
            rep.record("* is antimultiplicative", self.nf(self._free_anti(w, self.star_on_gens)) == xs, tag)
            rep.record("* is involutive", self.star(xs) == x, tag)
            rep.record("Delta commutes with *", self.coproduct(xs) == self.tensor_star(dx), tag)
            if x:
                deg = self.degree(x)
                rep.record("grading of Delta", _tensor_degrees(self, dx) <= deg, tag)
                rep.record("grading of S", self.degree(sx) <= deg, tag)
                rep.record("grading of *", self.degree(xs) <= {-d for d in deg}, tag)
        return rep

    def _free_coproduct(self, w) -> NCPoly:
        img = _t((), ())
        for a in w:
            img = img * self.coproduct_on_gens[a]
        return img

    def _free_anti(self, w, table) -> NCPoly:
        img = NCPoly.one()
        for a in reversed(w):
            img = img * table[a]
        return img

    def _counit_slot(self, t: NCPoly, slot: int) -> NCPoly:
        acc = NCPoly.zero()
        for key, c in split_tensor(t, 2).items():
            other = key[1 - slot]
            acc = acc + NCPoly.word(*other).scale(c * self.counit(NCPoly.word(*key[slot])))
        return self.nf(acc)

    def verify_star_antipode(self, depth: int) -> Report:
        if depth < 1:
            raise ValueError("depth must be >= 1")
        rep = Report(f"star/antipode compatibility (depth {depth})")
        for w in self.words(depth):
            tag = "*".join(w) or "1"
            x = self.nf(NCPoly.word(*w))
            rep.record("S((S x)*) = x*", self.antipode(self.star(self.antipode(x))) == self.star(x), tag)
            back = self.star(self.antipode_inverse(self.star(self.antipode_inverse(x))))
            rep.record("(S^-1((S^-1 x)*))* = x", back == x, tag)
            rep.record("S^-1 inverts S", self.antipode_inverse(self.antipode(x)) == x, tag)
        return rep


def _tensor_product(factors) -> NCPoly:
    out = NCPoly.one()
    for k, f in enumerate(factors, start=1):
        out = out * NCPoly({tuple(f"{a}_{k}" for a in w): c for w, c in f.terms.items()})
    return out


def _tensor_degrees(h: HopfPresentation, t: NCPoly) -> set[int]:
    return {h.square.labels(w)[0] for w in t.terms}


def uqsl2(order: str = "FKE") -> HopfPresentation:
    W = NCPoly.word
    sys = uqsl2_system(order)
    return HopfPresentation(
        rewrite=sys,
        coproduct_on_gens={
            "E": _t(("E",), ()) + _t(("K",), ("E",)),
            "F": _t(("F",), ("Ki",)) + _t((), ("F",)),
            "K": _t(("K",), ("K",)),
            "Ki": _t(("Ki",), ("Ki",)),
        },
        counit_on_gens={"E": ZERO, "F": ZERO, "K": ONE, "Ki": ONE},
        antipode_on_gens={
            "E": -W("Ki", "E"),
            "F": -W("F", "K"),
            "K": W("Ki"),
            "Ki": W("K"),
        },
        star_on_gens={
            "E": -W("K", "F"),
            "F": -W("E", "Ki"),
            "K": W("K"),
            "Ki": W("Ki"),
        },
        relations_text=(
            "K*K^-1 = 1", "K^-1*K = 1", "K*E = q^2*E*K", "K*F = q^-2*F*K",
            "E*F - F*E = (K - K^-1)/(q - q^-1)",
        ),
    )


_DEFAULT: dict = {}


def default_uqsl2(order: str = "FKE") -> HopfPresentation:
    """Shared instance (its memo tables make repeated calls cheap)."""
    if order not in _DEFAULT:
        _DEFAULT[order] = uqsl2(order)
    return _DEFAULT[order]


def coproduct(x: NCPoly) -> NCPoly:
    return default_uqsl2().coproduct(x)


def antipode(x: NCPoly) -> NCPoly:
    return default_uqsl2().antipode(x)


def counit(x: NCPoly) -> QScalar:
    return default_uqsl2().counit(x)


def star(x: NCPoly) -> NCPoly:
    return default_uqsl2().star(x)


def verify_hopf_axioms(depth: int, presentation: HopfPresentation | None = None) -> Report:
    return (presentation or default_uqsl2()).verify_hopf_axioms(depth)


def verify_star_antipode(depth: int, presentation: HopfPresentation | None = None) -> Report:
    return (presentation or default_uqsl2()).verify_star_antipode(depth)


# -- general Cartan type ----------------------------------------------------


def _qint_sym(n: int, base: QScalar) -> QScalar:
    return (base**n - base ** (-n)) / (base - base.inv())


def _qbinom_sym(n: int, k: int, base: QScalar) -> QScalar:
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * _qint_sym(n - k + i, base)
        den = den * _qint_sym(i, base)
    return num / den


@dataclass
class GeneralPresentation:
    """Relations, grading and involution of U_q(g) for a Cartan matrix.

    Only the data are carried: no rewrite system or normal forms are built
    for rank > 1, so :meth:`HopfPresentation.verify_hopf_axioms` is never
    available here.
    """

    cartan_matrix: tuple
    d: tuple
    j0: int
    alphabet: list
    relations: list
    star_table: dict

    def relations_text(self) -> list[str]:
        from .parsing import render_poly

        sys = RewriteSystem(self.alphabet, [])
        return [f"{name}: {render_poly(p, sys)} = 0" for name, p in self.relations]

    def homogeneity_report(self) -> Report:
        """Every defining relation and every involution image is homogeneous in
        the Z-grading (deg E_j0 = 1) and the root-lattice weight."""
        rep = Report("general presentation homogeneity")
        sys = RewriteSystem(self.alphabet, [])
        for name, p in self.relations:
            rep.record("relations homogeneous", len({sys.labels(w)[:1] for w in p.terms}) <= 1, name)
        for a, img in self.star_table.items():
            deg_a = sys.labels((a,))[0]
            rep.record("* reverses degree", {sys.labels(w)[0] for w in img.terms} <= {-deg_a}, a)
        return rep


def general_presentation(cartan_matrix, j0: int, d=None) -> GeneralPresentation:
    """Presentation of U_q(g) with ``a_ij = alpha_j(H_i)`` and 1-based node ``j0``."""
    A = tuple(tuple(int(x) for x in row) for row in cartan_matrix)
    n = len(A)
    if not 1 <= j0 <= n:
        raise ValueError(f"node {j0} out of range 1..{n}")
    if d is None:
        from .roots import CartanData

        d = CartanData(A).symmetrizer()
    d = tuple(d)
    alphabet = []
    for i in range(n):
        deg = 1 if i + 1 == j0 else 0
        alphabet += [Generator(f"E{i+1}", deg, 0), Generator(f"F{i+1}", -deg, 0),
                     Generator(f"K{i+1}", 0, 0), Generator(f"Ki{i+1}", 0, 0, display=f"K{i+1}^-1")]
    W = NCPoly.word
    rels = []
    for i in range(n):
        rels.append((f"K{i+1}K{i+1}^-1", W(f"K{i+1}", f"Ki{i+1}") - NCPoly.one()))
        for j in range(n):
            e = d[i] * A[i][j]
            rels.append((f"K{i+1}E{j+1}", W(f"K{i+1}", f"E{j+1}") - W(f"E{j+1}", f"K{i+1}", coeff=qpow(e))))
            rels.append((f"K{i+1}F{j+1}", W(f"K{i+1}", f"F{j+1}") - W(f"F{j+1}", f"K{i+1}", coeff=qpow(-e))))
            comm = W(f"E{i+1}", f"F{j+1}") - W(f"F{j+1}", f"E{i+1}")
            if i == j:
                qi = qpow(d[i])
                comm = comm - (W(f"K{i+1}") - W(f"Ki{i+1}")).scale((qi - qi.inv()).inv())
            rels.append((f"[E{i+1},F{j+1}]", comm))
            if i != j:
                m = 1 - A[i][j]
                for X in ("E", "F"):
                    serre = NCPoly.zero()
                    for k in range(m + 1):
                        c = _qbinom_sym(m, k, qpow(d[i])) * (-1) ** k
                        serre = serre + W(*([f"{X}{i+1}"] * k + [f"{X}{j+1}"] + [f"{X}{i+1}"] * (m - k)), coeff=c)
                    rels.append((f"serre {X}{i+1},{X}{j+1}", serre))
    star = {}
    for j in range(n):
        sign = -1 if j + 1 == j0 else 1
        star[f"E{j+1}"] = W(f"K{j+1}", f"F{j+1}", coeff=QScalar(sign))
        star[f"F{j+1}"] = W(f"E{j+1}", f"Ki{j+1}", coeff=QScalar(sign))
        star[f"K{j+1}"] = W(f"K{j+1}")
        star[f"Ki{j+1}"] = W(f"Ki{j+1}")
    return GeneralPresentation(A, d, j0, alphabet, rels, star)


def is_confluent(order: str = "FKE") -> bool:
    return not check_confluence(uqsl2_system(order))
