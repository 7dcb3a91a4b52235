"""Exact scalars: rational functions in the deformation parameter ``q``.

Values live in the field Q(q^{1/2}).  Everything the quantum disc needs on the
algebra side sits in the subfield Q(q); the square root only shows up when the
coordinate ``z = q^{1/2} a+`` is acted on by ``E`` or ``F``.

Internally a scalar is a pair of ``fmpq_poly`` in ``t = q^{1/2}``, reduced and
with a monic denominator, so equal values have identical stored forms.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import flint

from .report import Report

_P = flint.fmpq_poly
_ONE = _P([1])
_ZERO = _P([])


def _reduce(num, den):
    if den.is_zero():
        raise ZeroDivisionError("QScalar with zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    if den.degree() > 0:
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
    lc = den[den.degree()]
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


class QScalar:
    """An element of Q(q^{1/2}), immutable and always stored reduced."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            self._num, self._den = value._num, value._den
        elif isinstance(value, int):
            self._num, self._den = (_P([value]) if value else _ZERO), _ONE
        elif isinstance(value, Fraction):
            self._num = _P([flint.fmpq(value.numerator, value.denominator)]) if value else _ZERO
            self._den = _ONE
        else:
            raise TypeError(f"cannot build a QScalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, num, den, reduced=False):
        obj = cls.__new__(cls)
        if not reduced:
            num, den = _reduce(num, den)
        obj._num, obj._den, obj._hash = num, den, None
        return obj

    @classmethod
    def qpow(cls, exponent) -> "QScalar":
        """``q**exponent`` for an integer or half-integer exponent."""
        e = Fraction(exponent) * 2
        if e.denominator != 1:
            raise ValueError(f"q-exponent {exponent} is not a half-integer")
        k = int(e)
        if k >= 0:
            return cls._raw(_P([0] * k + [1]), _ONE, reduced=True)
        return cls._raw(_ONE, _P([0] * (-k) + [1]), reduced=True)

    # -- structure ----------------------------------------------------------

    def numerator(self) -> list[int]:
        """Integer coefficients (ascending, in ``q^{1/2}``) of the canonical numerator."""
        return self._integer_pair()[0]

    def denominator(self) -> list[int]:
        """Integer coefficients of the canonical denominator (positive leading term)."""
        return self._integer_pair()[1]

    def _integer_pair(self):
        n, d = self._num, self._den
        scale = math.lcm(int(n.denom()), int(d.denom()))
        ni = [int(c * scale) for c in n.coeffs()]
        di = [int(c * scale) for c in d.coeffs()]
        g = reduce(math.gcd, ni + di, 0) or 1
        return [c // g for c in ni], [c // g for c in di]

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_constant(self) -> bool:
        return self._den.is_one() and self._num.degree() <= 0

    def in_base_field(self) -> bool:
        """True when the value lies in Q(q), i.e. only even powers of q^{1/2} occur."""
        return all(not c for c in self._num.coeffs()[1::2]) and all(
            not c for c in self._den.coeffs()[1::2]
        )

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        c = self._num[0]
        return Fraction(int(c.p), int(c.q))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return QScalar._raw(self._num + other._num, self._den)
        return QScalar._raw(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self._num, self._den, reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den.is_one() and other._den.is_one():
            return QScalar._raw(self._num * other._num, _ONE, reduced=True)
        return QScalar._raw(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def inv(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QScalar")
        return QScalar._raw(self._den, self._num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        return QScalar._raw(self._num**k, self._den**k, reduced=True)

    def conjugate(self) -> "QScalar":
        # q is real, so conjugation fixes Q(q^{1/2}) pointwise
        return self

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self._num.coeffs()), tuple(self._den.coeffs())))
        return self._hash

    def __bool__(self):
        return not self._num.is_zero()

    # -- numerics -----------------------------------------------------------

    def eval(self, q0: float) -> float:
        """Evaluate at a numeric ``q0 > 0``; raises ``ZeroDivisionError`` at a pole."""
        if q0 <= 0:
            raise ValueError("numeric evaluation needs q0 > 0")
        num, den = list(self._num.coeffs()), list(self._den.coeffs())
        if self.in_base_field():
            # stay in powers of q so that exact inputs give exact outputs
            num, den, t0 = num[::2], den[::2], q0
        else:
            t0 = math.sqrt(q0)
        d = _horner(den, t0)
        scale = sum(abs(float(c)) * t0**i for i, c in enumerate(den))
        if abs(d) <= 1e-13 * scale:
            raise ZeroDivisionError(f"{self} has a pole at q = {q0}")
        return _horner(num, t0) / d

    # -- text ---------------------------------------------------------------

    def render(self) -> str:
        """Canonical text in the CLI grammar (round-trips through the parser)."""
        num, den = self._integer_pair()
        nz = [i for i, c in enumerate(den) if c]
        if len(nz) == 1:
            # monomial denominator: print as a Laurent polynomial in q
            shift, c0 = nz[0], den[nz[0]]
            terms = [(Fraction(c, c0), i - shift) for i, c in enumerate(num) if c]
            return _render_terms(terms)
        top = _render_terms([(Fraction(c), i) for i, c in enumerate(num) if c])
        bottom = _render_terms([(Fraction(c), i) for i, c in enumerate(den) if c])
        if sum(1 for c in num if c) > 1:
            top = f"({top})"
        return f"{top}/({bottom})"

    def is_monomial(self) -> bool:
        """True for ``c*q^k`` (the renderer prints these without parentheses)."""
        num, den = self._integer_pair()
        return sum(1 for c in num if c) <= 1 and sum(1 for c in den if c) == 1

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"QScalar({self.render()!r})"


def _horner(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def _qpow_text(half: int) -> str:
    if half % 2 == 0:
        k = half // 2
        return "q" if k == 1 else f"q^{k}"
    return f"q^({half}/2)"


def _render_terms(terms) -> str:
    """Render [(rational coefficient, exponent in q^{1/2})] in ascending order."""
    if not terms:
        return "0"
    out = []
    for coeff, half in sorted(terms, key=lambda t: t[1]):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if half == 0:
            body = str(mag)
        elif mag == 1:
            body = _qpow_text(half)
        else:
            body = f"{mag}*{_qpow_text(half)}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f"{sign}{body}"
    return text


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar(x)
    return NotImplemented


ZERO = QScalar(0)
ONE = QScalar(1)
q = QScalar.qpow(1)
sqrt_q = QScalar.qpow(Fraction(1, 2))


def qpow(exponent) -> QScalar:
    return QScalar.qpow(exponent)


def add(a: QScalar, b: QScalar) -> QScalar:
    return a + b


def mul(a: QScalar, b: QScalar) -> QScalar:
    return a * b


def inv(a: QScalar) -> QScalar:
    return a.inv()


def eval_at(a: QScalar, q0: float) -> float:
    return a.eval(q0)


def q_product(j: int) -> QScalar:
    """prod_{k=1..j} (q^{-2k} - 1)/(q^{-2} - 1); the empty product is 1."""
    if j < 0:
        raise ValueError("q_product needs j >= 0")
    out = ONE
    base = qpow(-2) - 1
    for k in range(1, j + 1):
        out = out * ((qpow(-2 * k) - 1) / base)
    return out


def q_integer(n: int, t: QScalar | None = None) -> QScalar:
    """(1 - t^n)/(1 - t) with ``t = q^2`` by default, i.e. 1 + t + ... + t^{n-1}."""
    t = qpow(2) if t is None else t
    out = ZERO
    power = ONE
    for _ in range(n):
        out = out + power
        power = power * t
    return out


def random_scalar(rng, max_degree: int = 3, max_coeff: int = 4) -> QScalar:
    """A random nonzero-denominator element with half-integer powers of q."""

    def poly():
        return _P([rng.randint(-max_coeff, max_coeff) for _ in range(rng.randint(1, max_degree + 1))])

    num, den = poly(), poly()
    while den.is_zero():
        den = poly()
    shift = rng.randint(-2, 2)
    out = QScalar._raw(num, den)
    return out * QScalar.qpow(Fraction(shift, 2))


def verify_scalar(samples: int = 200, seed: int = 0) -> Report:
    import random

    from .parsing import Context, parse_and_evaluate

    ctx = Context("scalars", None, {})
    rng = random.Random(seed)
    rep = Report(f"scalars ({samples} samples)")
    points = (0.3, 0.5, 0.9, 1.7)
    for _ in range(samples):
        a, b, c = (random_scalar(rng) for _ in range(3))
        rep.record("associativity (+)", (a + b) + c == a + (b + c), (a, b, c))
        rep.record("associativity (*)", (a * b) * c == a * (b * c), (a, b, c))
        rep.record("distributivity", a * (b + c) == a * b + a * c, (a, b, c))
        rep.record("commutativity", a * b == b * a and a + b == b + a, (a, b))
        if a:
            rep.record("inverses", a * a.inv() == ONE, a)
        rep.record("additive inverse", a + (-a) == ZERO, a)
        again = QScalar._raw(a._num, a._den)
        rep.record("reduce is idempotent", again._num == a._num and again._den == a._den, a)
        lead = a.denominator()[-1]
        rep.record("canonical denominator sign", lead > 0, a)
        rep.record("render parses back", parse_and_evaluate(a.render(), ctx) == a, a)
        for q0 in points:
            try:
                lhs = (a * b).eval(q0)
                rhs = a.eval(q0) * b.eval(q0)
            except ZeroDivisionError:
                continue
            scale = max(abs(lhs), abs(rhs), 1.0)
            rep.record("eval is multiplicative", abs(lhs - rhs) <= 1e-12 * scale, (a, b, q0))
    return rep
