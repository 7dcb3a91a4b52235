"""Covariant algebras dual to the Verma modules, and the quantum disc Pol.

The antiholomorphic algebra is the graded dual of V+(0) with generator a-,
normalized by a-(S(E) v+) = 1; the holomorphic one is the graded dual of
V-(0) with generator a+, normalized by a+(S(F) v-) = 1.  Functionals are
stored by their values on the basis X^k v0 and multiplied through the
coproducts of V+-(0).

Pol is the cross product of the two, with the braiding computed from the
universal R-matrix; its normal order keeps a+ to the left of a-.
"""

from __future__ import annotations

from functools import lru_cache

from . import verma
from .hopf import default_uqsl2
from .linalg import nullspace
from .ncpoly import Generator, NCPoly, RewriteSystem, split_tensor
from .parsing import join_terms, render_poly, render_term
from .report import Report
from .scalar import ONE, ZERO, QScalar, q, qpow

ANTI = "anti"  # dual of V+(0), generated by a-
HOLO = "holo"  # dual of V-(0), generated by a+

_MODULE = {ANTI: verma.VermaModule("+", 0), HOLO: verma.VermaModule("-", 0)}
_LETTER = {ANTI: "a-", HOLO: "a+"}
_WEIGHT = {ANTI: -2, HOLO: 2}


class DualFunctional:
    """A functional on V+(0) (side ``anti``) or V-(0) (side ``holo``).

    ``values[k]`` is the value on the basis vector X^k v0.
    """

    __slots__ = ("side", "values")

    def __init__(self, side: str, values: dict):
        if side not in (ANTI, HOLO):
            raise ValueError(f"unknown side {side!r}")
        self.side = side
        self.values = {k: c for k, c in values.items() if c}

    @property
    def module(self) -> verma.VermaModule:
        return _MODULE[self.side]

    def __add__(self, other):
        _same_side(self, other)
        out = dict(self.values)
        for k, c in other.values.items():
            out[k] = out.get(k, ZERO) + c
        return DualFunctional(self.side, out)

    def __sub__(self, other):
        return self + other.scale(QScalar(-1))

    def scale(self, c) -> "DualFunctional":
        c = c if isinstance(c, QScalar) else QScalar(c)
        return DualFunctional(self.side, {k: a * c for k, a in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return dual_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, DualFunctional):
            return NotImplemented
        return self.side == other.side and self.values == other.values

    __hash__ = None

    def __bool__(self):
        return bool(self.values)

    def power_coeffs(self) -> dict:
        """Coefficients in the basis of powers of the generator."""
        return {k: c / power_norm(self.side, k) for k, c in self.values.items()}

    def weight_of(self, k: int) -> int:
        return _WEIGHT[self.side] * k

    def render(self) -> str:
        coeffs = self.power_coeffs()
        alone = len(coeffs) == 1
        letter = _LETTER[self.side]
        pieces = []
        for k in sorted(coeffs, reverse=True):
            body = "" if k == 0 else (letter if k == 1 else f"{letter}^{k}")
            pieces.append(render_term(coeffs[k], body, alone))
        return join_terms(pieces)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"DualFunctional({self.side}, {self.render()})"


def _same_side(f, g):
    if f.side != g.side:
        raise ValueError(f"side mismatch: {f.side} vs {g.side}")


def unit(side: str) -> DualFunctional:
    """The counit of V+-(0), which is the unit of the dual algebra."""
    return DualFunctional(side, {0: ONE})


def generator(side: str) -> DualFunctional:
    """a- (side ``anti``) or a+ (side ``holo``), fixed by f(S(X) v0) = 1."""
    h = default_uqsl2()
    mod = _MODULE[side]
    x = NCPoly.word(mod.raising)
    sv = verma.act(h.antipode(x), mod.generator)
    # S(X) v0 is a nonzero multiple of X v0
    return DualFunctional(side, {1: sv.coeff(1).inv()})


def pair(f: DualFunctional, v: verma.VermaVector) -> QScalar:
    if v.module != f.module:
        raise ValueError(f"functional on {f.module} paired with a vector of {v.module}")
    total = ZERO
    for k, c in v.coeffs.items():
        total = total + c * f.values.get(k, ZERO)
    return total


@lru_cache(maxsize=None)
def _delta_coeffs(side: str, n: int) -> dict:
    return verma.coproduct_v0(_MODULE[side].basis(n)).coeffs


def dual_product(f: DualFunctional, g: DualFunctional) -> DualFunctional:
    """(fg)(v) = (f (x) g)(Delta v)."""
    _same_side(f, g)
    out = {}
    for i, a in f.values.items():
        for j, b in g.values.items():
            n = i + j
            c = _delta_coeffs(f.side, n).get((i, j), ZERO)
            if c:
                out[n] = out.get(n, ZERO) + a * b * c
    return DualFunctional(f.side, out)


@lru_cache(maxsize=None)
def _power(side: str, k: int) -> DualFunctional:
    if k == 0:
        return unit(side)
    return dual_product(_power(side, k - 1), generator(side))


def power(side: str, k: int) -> DualFunctional:
    return _power(side, k)


def power_norm(side: str, k: int) -> QScalar:
    """Value of the k-th power of the generator on X^k v0."""
    val = _power(side, k).values.get(k)
    if val is None:
        raise ArithmeticError(f"power {k} of the generator vanishes")
    return val


def from_powers(side: str, coeffs: dict) -> DualFunctional:
    return DualFunctional(side, {k: c * power_norm(side, k) for k, c in coeffs.items()})


def dual_action(xi: NCPoly, f: DualFunctional) -> DualFunctional:
    """(xi f)(v) = f(S(xi) v)."""
    h = default_uqsl2()
    s = h.antipode(h.nf(xi))
    mod = f.module
    out = {}
    # S(xi) moves degree by a bounded amount, so only finitely many k can pair
    shifts = {sum(1 if a == mod.raising else -1 if a == mod.killing else 0 for a in w) for w in s.terms}
    for j, c in f.values.items():
        for d in shifts:
            k = j - d
            if k < 0:
                continue
            val = c * verma.act(s, mod.basis(k)).coeff(j)
            if val:
                out[k] = out.get(k, ZERO) + val
    return DualFunctional(f.side, out)


# -- closed q-difference forms -----------------------------------------------


def _dq(k: int, sign: int) -> QScalar:
    """(D_+- t^k) / t^(k-1) = (q^(+-2k) - 1)/(q^(+-2) - 1)."""
    return (qpow(2 * sign * k) - 1) / (qpow(2 * sign) - 1)


def closed_form_action(letter: str, side: str, coeffs: dict) -> dict:
    """Action of K, Ki, E, F on a polynomial given by power coefficients.

    On P(a-): K^+-1 P(t) = P(q^-+2 t), E = D_-, F = -q t^2 D_+.
    On P(a+): K^+-1 P(t) = P(q^+-2 t), F = D_-, E = -q t^2 D_+.
    """
    out: dict = {}

    def add(k, c):
        if c:
            out[k] = out.get(k, ZERO) + c

    w = -1 if side == ANTI else 1
    lower, upper = ("E", "F") if side == ANTI else ("F", "E")
    for k, c in coeffs.items():
        if letter == "K":
            add(k, c * qpow(2 * w * k))
        elif letter == "Ki":
            add(k, c * qpow(-2 * w * k))
        elif letter == lower:
            if k > 0:
                add(k - 1, c * _dq(k, -1))
        elif letter == upper:
            add(k + 1, -c * q * _dq(k, 1))
        else:
            raise ValueError(f"unknown generator {letter!r}")
    return out


# -- Pol: the R-matrix cross product -----------------------------------------


POL = RewriteSystem(
    [Generator("ap", 1, 2, display="a+"), Generator("am", -1, -2, display="a-")],
    [(("am", "ap"), NCPoly.word("ap", "am", coeff=qpow(2)) + NCPoly.scalar(q * (1 - q * q)))],
    name="pol",
)


class PolElement:
    """sum c_ij a+^i a-^j in normal order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, i: int, j: int, c=ONE) -> "PolElement":
        return cls({(i, j): c if isinstance(c, QScalar) else QScalar(c)})

    @classmethod
    def scalar(cls, c) -> "PolElement":
        return cls.monomial(0, 0, c)

    def __add__(self, other):
        other = _as_pol(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return PolElement(out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(QScalar(-1))

    def __sub__(self, other):
        return self + (-_as_pol(other))

    def __rsub__(self, other):
        return _as_pol(other) - self

    def scale(self, c) -> "PolElement":
        c = c if isinstance(c, QScalar) else QScalar(c)
        return PolElement({k: a * c for k, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return pol_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = PolElement.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, QScalar)):
            other = PolElement.scalar(other)
        if not isinstance(other, PolElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=0)

    def to_ncpoly(self) -> NCPoly:
        return NCPoly({("ap",) * i + ("am",) * j: c for (i, j), c in self.coeffs.items()})

    @classmethod
    def from_ncpoly(cls, p: NCPoly) -> "PolElement":
        p = POL.normal_form(p)
        out = {}
        for w, c in p.terms.items():
            i = w.count("ap")
            if w != ("ap",) * i + ("am",) * (len(w) - i):
                raise ValueError(f"{w} is not in normal order")
            out[(i, len(w) - i)] = c
        return cls(out)

    def render(self) -> str:
        return render_poly(self.to_ncpoly(), POL)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"PolElement({self.render()})"


def _as_pol(x) -> PolElement:
    if isinstance(x, PolElement):
        return x
    if isinstance(x, (int, QScalar)):
        return PolElement.scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Pol element")


a_plus = PolElement.monomial(1, 0)
a_minus = PolElement.monomial(0, 1)
z = PolElement.monomial(1, 0, qpow(0.5))
z_star = PolElement.monomial(0, 1, qpow(-1.5))


def rmatrix_coeff(k: int) -> QScalar:
    """(q^-1 - q)^k prod_{j=1..k} (1 - q^2)/(1 - q^2j)."""
    c = (q.inv() - q) ** k
    for j in range(1, k + 1):
        c = c * (1 - q * q) / (1 - qpow(2 * j))
    return c


def rmatrix_flip(f: DualFunctional, g: DualFunctional) -> dict:
    """Rcheck(f (x) g) for f antiholomorphic and g holomorphic.

    Returns {(i, j): c} meaning sum c * a+^i (x) a-^j.  Both arguments must be
    weight-homogeneous.
    """
    if f.side != ANTI or g.side != HOLO:
        raise ValueError("rmatrix_flip expects (antiholomorphic, holomorphic)")
    wf = {f.weight_of(k) for k in f.values}
    wg = {g.weight_of(k) for k in g.values}
    if len(wf) > 1 or len(wg) > 1:
        raise ValueError("rmatrix_flip needs weight-homogeneous arguments")
    if not f or not g:
        return {}
    cartan = qpow(-wf.pop() * wg.pop() // 2)
    E, F = NCPoly.word("E"), NCPoly.word("F")
    out: dict = {}
    ef, fg = f, g
    k = 0
    while ef and fg:
        c = cartan * rmatrix_coeff(k)
        for j, x in ef.power_coeffs().items():
            for i, y in fg.power_coeffs().items():
                out[(i, j)] = out.get((i, j), ZERO) + c * x * y
        ef, fg = dual_action(E, ef), dual_action(F, fg)
        k += 1
    return {key: c for key, c in out.items() if c}


@lru_cache(maxsize=None)
def _flip_powers(j: int, k: int) -> tuple:
    return tuple(rmatrix_flip(power(ANTI, j), power(HOLO, k)).items())


def pol_product(x: PolElement, y: PolElement) -> PolElement:
    """(f+ (x) f-)(g+ (x) g-) = f+ Rcheck(f- (x) g+) g-."""
    out: dict = {}
    for (i, j), a in x.coeffs.items():
        for (k, l), b in y.coeffs.items():
            for (k2, j2), c in _flip_powers(j, k):
                key = (i + k2, j2 + l)
                out[key] = out.get(key, ZERO) + a * b * c
    return PolElement(out)


def pol_product_rewrite(x: PolElement, y: PolElement) -> PolElement:
    """The same product, computed by rewriting with a- a+ -> q^2 a+ a- + q(1-q^2)."""
    return PolElement.from_ncpoly(POL.mul(x.to_ncpoly(), y.to_ncpoly()))


@lru_cache(maxsize=None)
def _star_power(side: str, k: int) -> tuple:
    """(generator^k)* as power coefficients on the opposite side."""
    f = power(side, k)
    other = HOLO if side == ANTI else ANTI
    mod = _MODULE[other]
    # f*(w) = conj f(w*)
    val = pair(f, verma.involution_v(mod.basis(k))).conjugate()
    return (k, val / power_norm(other, k))


def pol_involution(x: PolElement) -> PolElement:
    """(f+ f-)* = f-* f+*; the result is already in normal order."""
    out: dict = {}
    for (i, j), c in x.coeffs.items():
        ki, ci = _star_power(HOLO, i)  # (a+^i)* = ci a-^i
        kj, cj = _star_power(ANTI, j)  # (a-^j)* = cj a+^j
        key = (kj, ki)
        out[key] = out.get(key, ZERO) + c.conjugate() * ci * cj
    return PolElement(out)


@lru_cache(maxsize=None)
def _act_power(word: tuple, side: str, k: int) -> tuple:
    f = dual_action(NCPoly.word(*word), power(side, k))
    return tuple(f.power_coeffs().items())


def pol_action(xi: NCPoly, x: PolElement) -> PolElement:
    """xi(f+ f-) = sum (xi' f+)(xi'' f-) over Delta(xi)."""
    h = default_uqsl2()
    out: dict = {}
    for (w1, w2), c in split_tensor(h.coproduct(h.nf(xi)), 2).items():
        for (i, j), a in x.coeffs.items():
            left = _act_power(w1, HOLO, i)
            if not left:
                continue
            right = _act_power(w2, ANTI, j)
            for i2, b in left:
                for j2, d in right:
                    key = (i2, j2)
                    out[key] = out.get(key, ZERO) + c * a * b * d
    return PolElement(out)


# -- invariant integral -------------------------------------------------------


def monomials(depth: int):
    for n in range(depth + 1):
        for i in range(n + 1):
            yield (i, n - i)


INVARIANCE_GENERATORS = ("E", "F", "K")


def _invariance_equations(N: int, depth: int):
    """Rows of nu(xi f) - eps(xi) nu(f) = 0 that stay inside degree <= N."""
    h = default_uqsl2()
    for i, j in monomials(depth):
        f = PolElement.monomial(i, j)
        for g in INVARIANCE_GENERATORS:
            xi = NCPoly.word(g)
            lhs = pol_action(xi, f)
            if lhs.degree() > N:
                continue
            row = dict(lhs.coeffs)
            row[(i, j)] = row.get((i, j), ZERO) - h.counit(xi)
            yield (g, (i, j)), {k: c for k, c in row.items() if c}


def verify_invariant_integral(nu: dict, depth: int, N: int | None = None) -> Report:
    """Check nu(xi f) = eps(xi) nu(f) for xi in {E, F, K} and monomials f of
    degree <= depth; equations reaching beyond degree N are skipped."""
    N = depth if N is None else N
    rep = Report(f"invariant integral (depth {depth})")
    nu = {k: (v if isinstance(v, QScalar) else QScalar(v)) for k, v in nu.items()}
    for (g, mono), row in _invariance_equations(N, depth):
        val = ZERO
        for k, c in row.items():
            val = val + c * nu.get(k, ZERO)
        rep.record(f"invariance under {g}", not val, f"{g} on a+^{mono[0]} a-^{mono[1]}: residual {val}")
    return rep


def solve_invariant_integral(N: int) -> list[dict]:
    """Basis of invariant functionals on monomials of degree <= N.

    Unknowns are nu(a+^i a-^j) for every monomial of degree <= N; the
    K-equations force the support onto weight-zero monomials (i = j).
    """
    unknowns = list(monomials(N))
    index = {m: n for n, m in enumerate(unknowns)}
    rows = []
    for _, row in _invariance_equations(N, N):
        vec = [ZERO] * len(unknowns)
        for k, c in row.items():
            vec[index[k]] = c
        rows.append(vec)
    out = []
    for x in nullspace(rows, len(unknowns)):
        out.append({m: c for m, c in zip(unknowns, x) if c})
    return out


def parse_pol(text: str) -> PolElement:
    from .algebras import context

    return PolElement.from_ncpoly(_evaluate(text, context("pol")))


def _evaluate(text, ctx):
    from .parsing import parse_and_evaluate

    val = parse_and_evaluate(text, ctx)
    return val if isinstance(val, NCPoly) else NCPoly.scalar(val)


# -- verification suites ------------------------------------------------------


def verify_pol_involution(degree: int, generators=("E", "F", "K", "EF")) -> Report:
    """(xi f)* = (S(xi))* f* on monomials, plus involutivity and antimultiplicativity."""
    h = default_uqsl2()
    rep = Report(f"Pol involution (degree {degree})")
    mons = [PolElement.monomial(i, j) for i, j in monomials(degree)]
    for f in mons:
        fs = pol_involution(f)
        rep.record("involutive", pol_involution(fs) == f, f)
        for g in generators:
            xi = NCPoly.word(*g)
            lhs = pol_involution(pol_action(xi, f))
            rhs = pol_action(h.star(h.antipode(xi)), fs)
            rep.record("(xi f)* = (S xi)* f*", lhs == rhs, f"{g} on {f}")
    for x in mons:
        for y in mons:
            if x.degree() + y.degree() <= degree:
                rep.record("(xy)* = y* x*", pol_involution(x * y) == pol_involution(y) * pol_involution(x), f"{x}, {y}")
    return rep


def verify_covalg(degree: int, dual_max: int = 10) -> Report:
    rep = Report(f"covariant algebras (degree {degree})")
    h = default_uqsl2()
    for side in (ANTI, HOLO):
        for j in range(dual_max + 1):
            f = power(side, j)
            for g in ("K", "Ki", "E", "F"):
                rep.record("pairing action = q-difference closed form",
                           dual_action(NCPoly.word(g), f).power_coeffs() == closed_form_action(g, side, {j: ONE}),
                           f"{g} on {_LETTER[side]}^{j}")
    mons = [PolElement.monomial(i, j) for i, j in monomials(degree)]
    for x in mons:
        for y in mons:
            if x.degree() + y.degree() > degree:
                continue
            xy = pol_product(x, y)
            rep.record("R-matrix product = rewrite product", xy == pol_product_rewrite(x, y), f"{x} * {y}")
            if x.degree() + y.degree() <= min(degree, 5):
                for g in ("E", "F", "K"):
                    xi = NCPoly.word(g)
                    lhs = pol_action(xi, xy)
                    rhs = PolElement()
                    for (w1, w2), c in split_tensor(h.coproduct(xi), 2).items():
                        rhs = rhs + pol_product(pol_action(NCPoly.word(*w1), x), pol_action(NCPoly.word(*w2), y)).scale(c)
                    rep.record("covariance of the product", lhs == rhs, f"{g} on {x} * {y}")
    small = [m for m in mons if m.degree() <= 2]
    for x in small:
        for y in small:
            for w in small:
                if x.degree() + y.degree() + w.degree() <= degree:
                    rep.record("associativity", (x * y) * w == x * (y * w), f"{x}, {y}, {w}")
    return rep.merge(verify_pol_involution(min(degree, 5)))
