"""Expression grammar shared by the CLI and the text renderers.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | action
    action := power ('.' action)?
    power  := atom ('^' exponent)?
    atom   := INT | 'q' | letter | '(' expr ')'
    exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'

Letters may carry a suffix (``a+``, ``z*``, ``v-``).  A suffix character is
part of the letter only when it is written directly after the name and the
next character does not start an operand, so ``z*z`` is a product while
``z* * z`` and ``a+*a-`` read as expected.  ``m[mu]`` and ``v+[m]`` take an
integer parameter.  There is no implicit multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .ncpoly import NCPoly, RewriteSystem
from .scalar import QScalar, qpow

SUFFIXED = frozenset({"a+", "a-", "z*", "dz*", "v+", "v-"})
PARAMETRIC = frozenset({"m", "v+", "v-"})


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message = message
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        super().__init__(f"line {line}, column {col}: {message}")


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Letter:
    name: str
    param: int | None = None
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: Any


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: Any
    exponent: Fraction
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Act:
    op: Any
    vector: Any
    pos: int = field(default=0, compare=False)


# -- tokenizer --------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int
    param: int | None = None


def _operand_start(ch: str) -> bool:
    return ch.isalnum() or ch == "("


def tokenize(text: str) -> list[Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("INT", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            name = text[i:j]
            if j < n and text[j] in "*+-" and name + text[j] in SUFFIXED:
                nxt = text[j + 1] if j + 1 < n else ""
                if not _operand_start(nxt):
                    name += text[j]
                    j += 1
            param = None
            if name in PARAMETRIC and j < n and text[j] == "[":
                k = text.find("]", j)
                if k < 0:
                    raise ParseError("unterminated '['", text, j)
                body = text[j + 1:k].strip()
                try:
                    param = int(body)
                except ValueError:
                    raise ParseError(f"expected an integer parameter, got {body!r}", text, j + 1) from None
                j = k + 1
            elif name == "m":
                raise ParseError("m needs an integer parameter, as in m[2]", text, j)
            out.append(Token("NAME", name, i, param))
            i = j
        elif ch in "+-*/^().":
            out.append(Token("OP", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", text, i)
    out.append(Token("END", "", n))
    return out


# -- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, op: str) -> Token | None:
        t = self.peek()
        if t.kind == "OP" and t.text == op:
            self.i += 1
            return t
        return None

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def parse(self):
        if self.peek().kind == "END":
            self.fail("empty expression")
        node = self.expr()
        if self.peek().kind != "END":
            t = self.peek()
            self.fail(f"unexpected {t.text!r} (no implicit multiplication)", t)
        return node

    def expr(self):
        node = self.term()
        while True:
            t = self.peek()
            if t.kind == "OP" and t.text in "+-":
                self.take()
                node = BinOp(t.text, node, self.term(), t.pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            t = self.peek()
            if t.kind == "OP" and t.text in "*/":
                self.take()
                node = BinOp(t.text, node, self.unary(), t.pos)
            else:
                return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.action()

    def action(self):
        node = self.power()
        t = self.accept(".")
        if t:
            return Act(node, self.action(), t.pos)
        return node

    def power(self):
        node = self.atom()
        t = self.accept("^")
        if t:
            return Pow(node, self.exponent(), t.pos)
        return node

    def exponent(self) -> Fraction:
        if self.accept("("):
            neg = bool(self.accept("-"))
            num = self.integer()
            den = 1
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    self.fail("zero denominator in exponent")
            if not self.accept(")"):
                self.fail("expected ')'")
            e = Fraction(num, den)
            return -e if neg else e
        neg = bool(self.accept("-"))
        e = Fraction(self.integer())
        return -e if neg else e

    def integer(self) -> int:
        t = self.peek()
        if t.kind != "INT":
            self.fail("expected an integer")
        self.take()
        return int(t.text)

    def atom(self):
        t = self.peek()
        if t.kind == "INT":
            self.take()
            return Num(int(t.text))
        if t.kind == "NAME":
            self.take()
            return Letter(t.text, t.param, t.pos)
        if self.accept("("):
            node = self.expr()
            if not self.accept(")"):
                self.fail("expected ')'")
            return node
        self.fail("expected an operand")


def parse(text: str):
    """Parse ``text`` into an AST; raises :class:`ParseError` with a position."""
    return _Parser(text).parse()


# -- evaluation -------------------------------------------------------------


@dataclass
class Context:
    """How letters of one algebra evaluate.

    ``letters`` maps letter text to an :class:`NCPoly` value, ``params`` maps
    parametric letter names to a factory taking the integer parameter, and
    ``vectors``/``act`` enable module expressions such as ``E^2.v+``.
    """

    name: str
    system: RewriteSystem
    letters: dict[str, NCPoly]
    inverses: dict[str, NCPoly] = field(default_factory=dict)
    params: dict[str, Callable[[int], NCPoly]] = field(default_factory=dict)
    vectors: Callable[[str, int | None], Any] | None = None
    act: Callable[[NCPoly, Any], Any] | None = None

    def normal_form(self, value):
        if isinstance(value, NCPoly):
            return self.system.normal_form(value)
        return value


def _is_vector(x) -> bool:
    return not isinstance(x, (QScalar, NCPoly))


def evaluate(node, ctx: Context, text: str = ""):
    """Evaluate an AST to a QScalar, an NCPoly (normal form) or a module vector."""
    return ctx.normal_form(_Eval(ctx, text).run(node))


class _Eval:
    def __init__(self, ctx: Context, text: str):
        self.ctx = ctx
        self.text = text

    def fail(self, msg, pos=0):
        raise ParseError(msg, self.text, pos)

    def run(self, node):
        ctx = self.ctx
        if isinstance(node, Num):
            return QScalar(node.value)
        if isinstance(node, Letter):
            return self.letter(node)
        if isinstance(node, Neg):
            v = self.run(node.arg)
            return -v if not _is_vector(v) else v.scale(QScalar(-1))
        if isinstance(node, Pow):
            return self.power(node)
        if isinstance(node, Act):
            op = self.run(node.op)
            vec = self.run(node.vector)
            if not _is_vector(vec) or ctx.act is None:
                self.fail("the right side of '.' must be a module vector", node.pos)
            if _is_vector(op):
                self.fail("the left side of '.' must be an algebra element", node.pos)
            if isinstance(op, QScalar):
                return vec.scale(op)
            return ctx.act(op, vec)
        if isinstance(node, BinOp):
            a, b = self.run(node.left), self.run(node.right)
            if node.op in "+-":
                if _is_vector(a) != _is_vector(b):
                    self.fail("cannot add a vector and an algebra element", node.pos)
                if _is_vector(a):
                    return a + b if node.op == "+" else a + b.scale(QScalar(-1))
                if isinstance(a, QScalar) and isinstance(b, QScalar):
                    return a + b if node.op == "+" else a - b
                a, b = _poly(a), _poly(b)
                return a + b if node.op == "+" else a - b
            if node.op == "/":
                if not isinstance(b, QScalar):
                    self.fail("only division by a scalar is allowed", node.pos)
                if not b:
                    self.fail("division by zero", node.pos)
                return a * b.inv() if not _is_vector(a) else a.scale(b.inv())
            if _is_vector(a):
                self.fail("a vector cannot be multiplied on the right", node.pos)
            if _is_vector(b):
                if isinstance(a, QScalar):
                    return b.scale(a)
                if ctx.act is None:
                    self.fail("no module action in this algebra", node.pos)
                return ctx.act(a, b)
            if isinstance(a, QScalar) and isinstance(b, QScalar):
                return a * b
            return ctx.normal_form(_poly(a) * _poly(b))
        raise TypeError(f"unknown node {node!r}")

    def letter(self, node: Letter):
        ctx = self.ctx
        if node.name == "q" and node.param is None:
            return qpow(1)
        if node.name in ctx.params:
            if node.param is None:
                self.fail(f"{node.name} needs an integer parameter", node.pos)
            try:
                return ctx.params[node.name](node.param)
            except ValueError as exc:
                self.fail(str(exc), node.pos)
        if node.name in ("v+", "v-") and ctx.vectors is not None:
            return ctx.vectors(node.name, node.param)
        if node.param is not None:
            self.fail(f"{node.name} takes no parameter", node.pos)
        if node.name in ctx.letters:
            return ctx.letters[node.name]
        self.fail(f"unknown letter {node.name!r} for algebra {ctx.name}", node.pos)

    def power(self, node: Pow):
        e = node.exponent
        if isinstance(node.base, Letter) and node.base.name == "q" and node.base.param is None:
            if (2 * e).denominator != 1:
                self.fail("q only takes integer or half-integer exponents", node.pos)
            return qpow(e)
        if e.denominator != 1:
            self.fail("fractional exponents are only allowed on q", node.pos)
        k = int(e)
        base = self.run(node.base)
        if _is_vector(base):
            self.fail("cannot raise a vector to a power", node.pos)
        if isinstance(base, QScalar):
            if k < 0 and not base:
                self.fail("division by zero", node.pos)
            return base**k
        if k < 0:
            inv = None
            if isinstance(node.base, Letter):
                inv = self.ctx.inverses.get(node.base.name)
            if inv is None:
                self.fail("negative powers need an invertible letter", node.pos)
            base, k = inv, -k
        out = NCPoly.one()
        for _ in range(k):
            out = self.ctx.normal_form(out * base)
        return out


def _poly(x) -> NCPoly:
    return x if isinstance(x, NCPoly) else NCPoly.scalar(x)


def parse_and_evaluate(text: str, ctx: Context):
    return evaluate(parse(text), ctx, text)


# -- rendering --------------------------------------------------------------


def render_word(word, sys: RewriteSystem | None = None) -> str:
    """Letters joined by ``*`` with runs collapsed to powers; ``1`` for the empty word."""
    if not word:
        return "1"
    runs = []
    for a in word:
        if runs and runs[-1][0] == a:
            runs[-1][1] += 1
        else:
            runs.append([a, 1])
    parts = []
    for a, k in runs:
        text = sys.letters[a].text if sys is not None and a in sys.letters else a
        if k == 1:
            parts.append(text)
        elif text.endswith("^-1"):
            parts.append(f"{text[:-3]}^-{k}")
        else:
            parts.append(f"{text}^{k}")
    out = parts[0]
    for prev, nxt in zip(parts, parts[1:]):
        # a trailing '*' suffix would glue onto the operator, so space it out
        sep = " * " if prev.endswith("*") else "*"
        out += sep + nxt
    return out


def _signed_scalar(c: QScalar):
    """Split a scalar into (negative?, text, needs_parens)."""
    num = c.numerator()
    lead = next((x for x in num if x), 0)
    compound = not c.is_monomial()
    if lead < 0:
        return True, (-c).render(), compound
    return False, c.render(), compound


def render_term(c: QScalar, body: str, alone: bool):
    """(negative?, text) for ``c * body``; ``body`` is empty for a bare scalar."""
    if not body and alone:
        return False, c.render()
    neg, text, compound = _signed_scalar(c)
    if not body:
        if compound:
            text = f"({text})"
        return neg, text
    if text == "1":
        return neg, body
    if compound:
        text = f"({text})"
    return neg, f"{text}*{body}"


def join_terms(pieces) -> str:
    if not pieces:
        return "0"
    out = ""
    for k, (neg, text) in enumerate(pieces):
        if k == 0:
            out = f"-{text}" if neg else text
        else:
            out += f" - {text}" if neg else f" + {text}"
    return out


def render_poly(p: NCPoly, sys: RewriteSystem | None = None, suffix: str = "") -> str:
    """Canonical text for ``p``: terms in descending monomial order."""
    if sys is not None:
        words = sorted(p.terms, key=sys.key, reverse=True)
    else:
        words = sorted(p.terms, key=lambda w: (len(w), w), reverse=True)
    alone = len(words) == 1
    pieces = []
    for w in words:
        body = render_word(w, sys) if w else ""
        if suffix:
            body = f"{body}.{suffix}" if body else suffix
        pieces.append(render_term(p.terms[w], body, alone))
    return join_terms(pieces)
