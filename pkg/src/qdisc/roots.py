"""Root systems, cominuscule nodes and the parabolic factorization w0 = w0' u0.

Cartan matrices follow a_ij = alpha_j(H_i), so the simple reflection s_i
sends beta to beta - beta(H_i) alpha_i with beta(H_i) = sum_j beta_j a_ij.
Nodes are numbered from 1 in Bourbaki order.  Weyl group elements are
integer matrices acting on root coordinates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm

from .report import Report

Vector = tuple
Matrix = tuple


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix of a simple Lie algebra, Bourbaki numbering."""
    s, n = series.upper(), rank
    bounds = {"A": 1, "B": 2, "C": 2, "D": 4}
    if s in bounds and n < bounds[s]:
        raise ValueError(f"{s}_{n} is not a valid type")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if s == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif s == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)  # alpha_n short
    elif s == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif s == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif s == "E":
        if n not in (6, 7, 8):
            raise ValueError(f"E_{n} is not a valid type")
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif s == "F":
        if n != 4:
            raise ValueError("F only exists in rank 4")
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif s == "G":
        if n != 2:
            raise ValueError("G only exists in rank 2")
        link(0, 1, -3, -1)  # alpha_1 short
    else:
        raise ValueError(f"unknown series {series!r}")
    return a


def labeled_types(max_rank: int):
    """(series, rank) for every simple type up to ``max_rank`` (no duplicates
    among isomorphic small types: B_n and C_n from rank 2 and 3, D_n from 4)."""
    for n in range(1, max_rank + 1):
        yield "A", n
        if n >= 2:
            yield "B", n
        if n >= 3:
            yield "C", n
        if n >= 4:
            yield "D", n
    for s, n in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        if n <= max_rank:
            yield s, n


@dataclass(frozen=True)
class CartanData:
    matrix: tuple
    type_label: str | None = None

    def __init__(self, matrix, type_label: str | None = None):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in matrix))
        object.__setattr__(self, "type_label", type_label)
        self._validate()

    @classmethod
    def of_type(cls, series: str, rank: int) -> "CartanData":
        return cls(cartan_matrix(series, rank), f"{series.upper()}{rank}")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def _validate(self):
        a, n = self.matrix, len(self.matrix)
        if n == 0 or any(len(r) != n for r in a):
            raise ValueError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("diagonal entries must be 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise ValueError("off-diagonal entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise ValueError("a_ij = 0 must match a_ji = 0")
        d = self.symmetrizer()
        sym = [[Fraction(d[i] * a[i][j]) for j in range(n)] for i in range(n)]
        if not _positive_definite(sym):
            raise ValueError("Cartan matrix is not of finite type")

    def symmetrizer(self) -> tuple:
        """Smallest positive integers d_i with d_i a_ij = d_j a_ji."""
        a, n = self.matrix, len(self.matrix)
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            todo = [start]
            while todo:
                i = todo.pop()
                for j in range(n):
                    if j != i and a[i][j]:
                        val = d[i] * a[i][j] / a[j][i]
                        if d[j] is None:
                            d[j] = val
                            todo.append(j)
                        elif d[j] != val:
                            raise ValueError("Cartan matrix is not symmetrizable")
        den = lcm(*(x.denominator for x in d))
        ints = [int(x * den) for x in d]
        g = reduce(gcd, ints)
        return tuple(x // g for x in ints)

    def pairing(self, beta: Vector, i: int) -> int:
        """beta(H_i) for 0-based node i."""
        return sum(b * self.matrix[i][j] for j, b in enumerate(beta))

    def reflect(self, beta: Vector, i: int) -> Vector:
        k = self.pairing(beta, i)
        return tuple(b - k if j == i else b for j, b in enumerate(beta))

    def simple_root(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def reflection_matrix(self, i: int) -> Matrix:
        """Columns are the images of the simple roots."""
        cols = [self.reflect(self.simple_root(j), i) for j in range(self.rank)]
        return tuple(tuple(cols[c][r] for c in range(self.rank)) for r in range(self.rank))


def _positive_definite(m) -> bool:
    m = [list(r) for r in m]
    n = len(m)
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


@dataclass
class RootSystem:
    cartan: CartanData
    positive_roots: list

    def __len__(self):
        return len(self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=sum)


def positive_roots(c: CartanData) -> RootSystem:
    """Closure of the simple roots under simple reflections, keeping positive roots."""
    seen = {c.simple_root(i) for i in range(c.rank)}
    queue = deque(sorted(seen))
    while queue:
        beta = queue.popleft()
        for i in range(c.rank):
            gamma = c.reflect(beta, i)
            if all(x >= 0 for x in gamma) and gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    roots = sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r)))
    return RootSystem(c, roots)


def cominuscule_nodes(c: CartanData) -> set[int]:
    """Nodes i (1-based) whose coefficient in every positive root is at most 1."""
    roots = positive_roots(c).positive_roots
    return {i + 1 for i in range(c.rank) if max(r[i] for r in roots) == 1}


def highest_root(c: CartanData) -> Vector:
    """The dominant long root, found by reflecting a long simple root upward."""
    d = c.symmetrizer()
    beta = c.simple_root(max(range(c.rank), key=lambda i: d[i]))
    moved = True
    while moved:
        moved = False
        for i in range(c.rank):
            if c.pairing(beta, i) < 0:
                beta = c.reflect(beta, i)
                moved = True
    return beta


def cominuscule_nodes_from_highest_root(c: CartanData) -> set[int]:
    """Second route: i is cominuscule iff the highest root has coefficient 1 at i."""
    return {i + 1 for i, x in enumerate(highest_root(c)) if x == 1}


# -- Weyl group ------------------------------------------------------------------


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _is_positive(v: Vector) -> bool:
    return any(x > 0 for x in v)


@dataclass(frozen=True)
class WeylWord:
    """A word in simple reflections (1-based node labels)."""

    letters: tuple
    length: int = field(default=-1)

    def __str__(self):
        return "e" if not self.letters else "".join(f"s{i}" for i in self.letters)


class WeylGroup:
    def __init__(self, c: CartanData):
        self.cartan = c
        self.n = c.rank
        self.gens = [c.reflection_matrix(i) for i in range(self.n)]
        self.roots = positive_roots(c).positive_roots

    def identity(self) -> Matrix:
        return _identity(self.n)

    def element(self, letters) -> Matrix:
        m = self.identity()
        for i in letters:
            m = _matmul(m, self.gens[i - 1])
        return m

    def length(self, w: Matrix) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(1 for r in self.roots if not _is_positive(_apply(w, r)))

    def is_reduced(self, letters) -> bool:
        return self.length(self.element(letters)) == len(letters)

    def reduced_word(self, w: Matrix) -> tuple:
        """Peel right descents: w(alpha_i) < 0 means l(w s_i) = l(w) - 1."""
        letters = []
        while w != self.identity():
            for i in range(self.n):
                if not _is_positive(_apply(w, self.cartan.simple_root(i))):
                    w = _matmul(w, self.gens[i])
                    letters.append(i + 1)
                    break
            else:  # pragma: no cover - a nontrivial element always has a descent
                raise RuntimeError("no descent found")
        return tuple(reversed(letters))

    def longest(self, nodes=None) -> tuple[Matrix, tuple]:
        """Longest element of the parabolic subgroup on ``nodes`` (1-based), greedily."""
        nodes = list(range(1, self.n + 1)) if nodes is None else sorted(nodes)
        w, word = self.identity(), []
        grown = True
        while grown:
            grown = False
            for i in nodes:
                if _is_positive(_apply(w, self.cartan.simple_root(i - 1))):
                    w = _matmul(w, self.gens[i - 1])
                    word.append(i)
                    grown = True
                    break
        return w, tuple(word)

    def enumerate(self, nodes=None):
        """All elements of a (parabolic) subgroup by breadth-first search."""
        nodes = list(range(1, self.n + 1)) if nodes is None else sorted(nodes)
        start = self.identity()
        seen = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for i in nodes:
                v = _matmul(w, self.gens[i - 1])
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def longest_element(c: CartanData) -> WeylWord:
    g = WeylGroup(c)
    w, word = g.longest()
    return WeylWord(word, g.length(w))


@dataclass(frozen=True)
class Factorization:
    w0: WeylWord
    w0_prime: WeylWord
    u0: WeylWord

    @property
    def additive(self) -> bool:
        return self.w0.length == self.w0_prime.length + self.u0.length

    def to_dict(self) -> dict:
        return {
            "w0": list(self.w0.letters), "l_w0": self.w0.length,
            "w0_prime": list(self.w0_prime.letters), "l_w0_prime": self.w0_prime.length,
            "u0": list(self.u0.letters), "l_u0": self.u0.length,
        }


def parabolic_factorization(c: CartanData, j0: int) -> Factorization:
    """w0 = w0' u0 with w0' longest in the subgroup omitting node j0 (1-based)."""
    if not 1 <= j0 <= c.rank:
        raise ValueError(f"node {j0} out of range 1..{c.rank}")
    g = WeylGroup(c)
    w0, word0 = g.longest()
    wp, wordp = g.longest([i for i in range(1, c.rank + 1) if i != j0])
    # w0' is an involution, so u0 = w0'^-1 w0 = w0' w0
    u0 = _matmul(wp, w0)
    wordu = g.reduced_word(u0)
    return Factorization(
        WeylWord(word0, g.length(w0)),
        WeylWord(wordp, g.length(wp)),
        WeylWord(wordu, g.length(u0)),
    )


def in_minimal_coset(g: WeylGroup, u: Matrix, j0: int) -> bool:
    """u lies in U: l(s_j u) > l(u) for every j != j0, i.e. u^-1(alpha_j) > 0."""
    lu = g.length(u)
    return all(g.length(_matmul(g.gens[j - 1], u)) > lu for j in range(1, g.n + 1) if j != j0)


def verify_roots(max_rank: int = 6, weyl_rank: int = 5) -> Report:

    rep = Report(f"roots (rank <= {max_rank}, Weyl rank <= {weyl_rank})")
    for s, n in labeled_types(max(max_rank, 8)):
        c = CartanData.of_type(s, n)
        tag = f"{s}{n}"
        scan = cominuscule_nodes(c)
        rep.record("cominuscule scan = highest-root route", scan == cominuscule_nodes_from_highest_root(c), tag)
        if s == "A":
            rep.record("A_n: every node is cominuscule", scan == set(range(1, n + 1)), tag)
        elif s in "BCD" or (s == "E" and n in (6, 7)):
            rep.record("B, C, D, E6, E7: cominuscule set nonempty", bool(scan), tag)
        else:
            rep.record("E8, F4, G2: no cominuscule node", not scan, tag)
        if n > weyl_rank:
            continue
        for j0 in range(1, n + 1):
            f = parabolic_factorization(c, j0)
            g = WeylGroup(c)
            word = f.w0_prime.letters + f.u0.letters
            rep.record("length additivity", f.additive, f"{tag}, j0={j0}")
            rep.record("w0' u0 = w0", g.element(word) == g.element(f.w0.letters), f"{tag}, j0={j0}")
            rep.record("concatenated word reduced", g.is_reduced(word), f"{tag}, j0={j0}")
            rep.record("u0 in minimal coset", in_minimal_coset(g, g.element(f.u0.letters), j0), f"{tag}, j0={j0}")
    return rep
