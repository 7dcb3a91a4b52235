"""Free noncommutative polynomials and oriented rewrite systems.

Words are tuples of letter names.  A :class:`RewriteSystem` pairs an alphabet
(with a monomial order: weighted length first, then left-to-right
lexicographic on the declared precedence) with rules ``LHS word -> NCPoly``.
Construction checks that every rule decreases the order and is homogeneous
for degree, weight and parity; :func:`check_confluence` resolves every overlap
and inclusion ambiguity exactly.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .scalar import ONE, ZERO, QScalar

Word = tuple


class RewriteError(ValueError):
    """A rewrite system failed its termination or homogeneity certificate."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int = 0
    weight: int = 0
    parity: int = 0
    display: str | None = None
    length: int = 1

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError(f"parity of {self.name} must be 0 or 1")
        if self.length < 1:
            raise ValueError("letter length must be positive")

    @property
    def text(self) -> str:
        return self.display or self.name


class NCPoly:
    """A finite linear combination of words with :class:`QScalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = c if isinstance(c, QScalar) else QScalar(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, terms: dict) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def word(cls, *letters: str, coeff=ONE) -> "NCPoly":
        return cls({tuple(letters): coeff})

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        return cls({(): c})

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): ONE})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, word: Iterable[str]) -> QScalar:
        return self.terms.get(tuple(word), ZERO)

    def is_scalar(self) -> bool:
        return all(len(w) == 0 for w in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, QScalar)):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._trusted({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = c if isinstance(c, QScalar) else QScalar(c)
        if not c:
            return NCPoly.zero()
        return NCPoly._trusted({w: a * c for w, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w)
                s = c1 * c2 if s is None else s + c1 * c2
                out[w] = s
        return NCPoly._trusted({w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = NCPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def map_coefficients(self, fn: Callable[[QScalar], QScalar]) -> "NCPoly":
        return NCPoly({w: fn(c) for w, c in self.terms.items()})

    def __repr__(self):
        inner = ", ".join(f"{'*'.join(w) or '1'}: {c}" for w, c in self.terms.items())
        return f"NCPoly({{{inner}}})"


def _as_poly(x):
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (int, QScalar)):
        return NCPoly.scalar(x)
    return NotImplemented


def linear_combination(pairs: Iterable[tuple[object, NCPoly]]) -> NCPoly:
    acc: dict = {}
    for c, p in pairs:
        c = c if isinstance(c, QScalar) else QScalar(c)
        if not c:
            continue
        for w, a in p.terms.items():
            s = acc.get(w)
            acc[w] = a * c if s is None else s + a * c
    return NCPoly._trusted({w: v for w, v in acc.items() if v})


def substitute(p: NCPoly, images: Mapping[str, NCPoly], anti: bool = False,
               coeff_map: Callable[[QScalar], QScalar] | None = None) -> NCPoly:
    """Extend a letter assignment (anti)multiplicatively and linearly."""
    out = NCPoly.zero()
    for w, c in p.terms.items():
        letters = reversed(w) if anti else w
        img = NCPoly.one()
        for a in letters:
            img = img * images[a]
        out = out + img.scale(coeff_map(c) if coeff_map else c)
    return out


@dataclass
class CriticalPair:
    overlap: Word
    left: NCPoly
    right: NCPoly

    def __str__(self):
        return f"{'*'.join(self.overlap)}: {self.left!r} != {self.right!r}"


@dataclass
class RewriteSystem:
    """An alphabet, a set of oriented rules and the order that certifies termination.

    The alphabet order is the letter precedence (earlier letters are smaller).
    """

    alphabet: list[Generator]
    rules: list[tuple[Word, NCPoly]]
    name: str = ""
    _rank: dict = field(init=False, repr=False)
    _lookup: dict = field(init=False, repr=False)
    _lengths: tuple = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        names = [g.name for g in self.alphabet]
        if len(set(names)) != len(names):
            raise RewriteError("duplicate generator names")
        self._rank = {g.name: i for i, g in enumerate(self.alphabet)}
        self.letters = {g.name: g for g in self.alphabet}
        self._lookup = {}
        for lhs, rhs in self.rules:
            lhs = tuple(lhs)
            if lhs in self._lookup:
                raise RewriteError(f"two rules share the left side {lhs}")
            for a in lhs:
                if a not in self._rank:
                    raise RewriteError(f"unknown letter {a!r} in rule {lhs}")
            self._lookup[lhs] = rhs
        self.rules = [(tuple(l), r) for l, r in self.rules]
        self._lengths = tuple(sorted({len(l) for l in self._lookup}))
        self._cache = {}
        self._certify()

    # -- order and labels ---------------------------------------------------

    def key(self, word: Word) -> tuple:
        letters = self.letters
        return (sum(letters[a].length for a in word), tuple(self._rank[a] for a in word))

    def labels(self, word: Word) -> tuple[int, int, int]:
        g = self.letters
        return (
            sum(g[a].degree for a in word),
            sum(g[a].weight for a in word),
            sum(g[a].parity for a in word) % 2,
        )

    def _certify(self):
        for lhs, rhs in self.rules:
            k = self.key(lhs)
            lab = self.labels(lhs)
            for w in rhs.terms:
                for a in w:
                    if a not in self._rank:
                        raise RewriteError(f"unknown letter {a!r} in rule {lhs}")
                if not self.key(w) < k:
                    raise RewriteError(f"rule {lhs} -> {w} does not decrease the monomial order")
                if self.labels(w) != lab:
                    raise RewriteError(f"rule {lhs} -> {w} is not homogeneous")

    # -- reduction ----------------------------------------------------------

    def find_redex(self, word: Word):
        lookup = self._lookup
        n = len(word)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                sub = word[i:i + L]
                if sub in lookup:
                    return i, sub
        return None

    def is_normal(self, word: Word) -> bool:
        return self.find_redex(word) is None

    def reduce_word(self, word: Word) -> NCPoly:
        word = tuple(word)
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        result: dict = {}
        pending = {word: ONE}
        heap = [_neg_key(self.key(word))]
        keyed = {heap[0]: word}
        while heap:
            k = heapq.heappop(heap)
            w = keyed.pop(k)
            c = pending.pop(w)
            if not c:
                continue
            cached = self._cache.get(w)
            if cached is not None:
                for u, a in cached.terms.items():
                    s = result.get(u)
                    result[u] = a * c if s is None else s + a * c
                continue
            redex = self.find_redex(w)
            if redex is None:
                s = result.get(w)
                result[w] = c if s is None else s + c
                continue
            i, lhs = redex
            prefix, suffix = w[:i], w[i + len(lhs):]
            for r, a in self._lookup[lhs].terms.items():
                u = prefix + r + suffix
                s = pending.get(u)
                if s is None:
                    pending[u] = a * c
                    nk = _neg_key(self.key(u))
                    keyed[nk] = u
                    heapq.heappush(heap, nk)
                else:
                    pending[u] = s + a * c
        out = NCPoly._trusted({u: v for u, v in result.items() if v})
        self._cache[word] = out
        return out

    def normal_form(self, p: NCPoly) -> NCPoly:
        acc: dict = {}
        for w, c in p.terms.items():
            for u, a in self.reduce_word(w).terms.items():
                s = acc.get(u)
                acc[u] = a * c if s is None else s + a * c
        return NCPoly._trusted({u: v for u, v in acc.items() if v})

    def mul(self, a: NCPoly, b: NCPoly) -> NCPoly:
        return self.normal_form(a * b)

    def word(self, *letters: str) -> NCPoly:
        return self.normal_form(NCPoly.word(*letters))

    def serialize(self) -> str:
        from .parsing import render_poly

        lines = [f"# rewrite system {self.name}".rstrip()]
        for g in self.alphabet:
            lines.append(f"generator {g.text} {g.degree} {g.weight} {g.parity}")
        for lhs, rhs in self.rules:
            lines.append(f"{render_poly(NCPoly.word(*lhs), self)} -> {render_poly(rhs, self)}")
        return "\n".join(lines) + "\n"


def _neg_key(key):
    # max-heap on the monomial order; same-length words compare letter by letter
    return (-key[0], tuple(-r for r in key[1]))


def normal_form(p: NCPoly, sys: RewriteSystem) -> NCPoly:
    return sys.normal_form(p)


def _ambiguities(sys: RewriteSystem, bound: int | None):
    lhss = [l for l, _ in sys.rules]
    for l1 in lhss:
        for l2 in lhss:
            # overlaps: proper suffix of l1 equals proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if bound is None or len(w) <= bound:
                        yield w, (0, l1), (len(l1) - k, l2)
            # inclusions: l2 strictly inside l1
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        if bound is None or len(l1) <= bound:
                            yield l1, (0, l1), (i, l2)


def check_confluence(sys: RewriteSystem, degree_bound: int | None = None) -> list[CriticalPair]:
    """Every ambiguity of length <= ``degree_bound`` whose two one-step
    reductions have different normal forms."""
    bad = []
    seen = set()
    for w, (i, l1), (j, l2) in _ambiguities(sys, degree_bound):
        if (w, i, l1, j, l2) in seen:
            continue
        seen.add((w, i, l1, j, l2))
        left = _one_step(sys, w, i, l1)
        right = _one_step(sys, w, j, l2)
        nl, nr = sys.normal_form(left), sys.normal_form(right)
        if nl != nr:
            bad.append(CriticalPair(w, nl, nr))
    return bad


def _one_step(sys: RewriteSystem, w: Word, i: int, lhs: Word) -> NCPoly:
    prefix, suffix = w[:i], w[i + len(lhs):]
    rhs = sys._lookup[lhs]
    return NCPoly._trusted({prefix + r + suffix: a for r, a in rhs.terms.items()})


def graded_component(p: NCPoly, degree: int, grading: Mapping[str, int] | RewriteSystem) -> NCPoly:
    """Terms of ``p`` whose total letter degree equals ``degree``."""
    if isinstance(grading, RewriteSystem):
        grading = {g.name: g.degree for g in grading.alphabet}
    return NCPoly._trusted(
        {w: c for w, c in p.terms.items() if sum(grading[a] for a in w) == degree}
    )


def is_homogeneous(p: NCPoly, sys: RewriteSystem) -> bool:
    return len({sys.labels(w) for w in p.terms}) <= 1


def tensor_power(sys: RewriteSystem, n: int) -> RewriteSystem:
    """``n`` mutually commuting copies of an even algebra; letter ``X`` of copy
    ``k`` is named ``X_k`` and copies are ordered left to right."""
    if any(g.parity for g in sys.alphabet):
        raise RewriteError("tensor powers are only built for even algebras")
    alphabet = []
    for k in range(1, n + 1):
        for g in sys.alphabet:
            alphabet.append(Generator(f"{g.name}_{k}", g.degree, g.weight, 0, length=g.length))
    rules = []
    for k in range(1, n + 1):
        ren = {g.name: f"{g.name}_{k}" for g in sys.alphabet}
        for lhs, rhs in sys.rules:
            rules.append((
                tuple(ren[a] for a in lhs),
                NCPoly({tuple(ren[a] for a in w): c for w, c in rhs.terms.items()}),
            ))
    for k in range(1, n + 1):
        for m in range(k + 1, n + 1):
            for g in sys.alphabet:
                for h in sys.alphabet:
                    rules.append(((f"{g.name}_{m}", f"{h.name}_{k}"),
                                  NCPoly.word(f"{h.name}_{k}", f"{g.name}_{m}")))
    return RewriteSystem(alphabet, rules, name=f"{sys.name}^{n}")


def tensor_word(parts: Iterable[Word]) -> Word:
    out = []
    for k, w in enumerate(parts, start=1):
        out.extend(f"{a}_{k}" for a in w)
    return tuple(out)


def split_tensor(p: NCPoly, n: int) -> dict[tuple[Word, ...], QScalar]:
    """Inverse of :func:`tensor_word` on normal-form tensor elements."""
    out = {}
    for w, c in p.terms.items():
        parts: list[list[str]] = [[] for _ in range(n)]
        for a in w:
            base, _, k = a.rpartition("_")
            parts[int(k) - 1].append(base)
        key = tuple(tuple(x) for x in parts)
        out[key] = out.get(key, ZERO) + c
    return {k: v for k, v in out.items() if v}


def join_tensor(parts: Mapping[tuple[Word, ...], QScalar]) -> NCPoly:
    return NCPoly({tensor_word(k): c for k, c in parts.items()})


def random_poly(sys: RewriteSystem, rng, max_len: int, terms: int = 3) -> NCPoly:
    from .scalar import random_scalar

    names = [g.name for g in sys.alphabet]
    out = NCPoly.zero()
    for _ in range(terms):
        w = tuple(rng.choice(names) for _ in range(rng.randint(0, max_len)))
        out = out + NCPoly.word(*w, coeff=random_scalar(rng, 1, 3))
    return out


def verify_rewrite_system(sys: RewriteSystem, degree: int, samples: int = 40, seed: int = 0):
    """Confluence, idempotence, linearity, compatibility with products and homogeneity."""
    import random

    from .report import Report
    from .scalar import random_scalar

    rng = random.Random(seed)
    rep = Report(f"rewrite system {sys.name}")
    rep.record("critical pairs resolve", not check_confluence(sys), sys.name)
    half = max(1, degree // 2)
    for _ in range(samples):
        p, r = random_poly(sys, rng, half), random_poly(sys, rng, half)
        a, b = random_scalar(rng, 1, 3), random_scalar(rng, 1, 3)
        np_, nr = sys.normal_form(p), sys.normal_form(r)
        rep.record("idempotent", sys.normal_form(np_) == np_, p)
        rep.record("linear", sys.normal_form(p.scale(a) + r.scale(b)) == np_.scale(a) + nr.scale(b), (p, r))
        rep.record("nf(pr) = nf(nf(p) nf(r))", sys.normal_form(p * r) == sys.normal_form(np_ * nr), (p, r))
        rep.record("output is normal", all(sys.is_normal(w) for w in np_.terms), p)
        for w in p.terms:
            labels = sys.labels(w)
            rep.record("homogeneity preserved", all(sys.labels(u) == labels for u in sys.reduce_word(w).terms), w)
    return rep
