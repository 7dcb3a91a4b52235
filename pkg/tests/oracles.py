"""Independent reference implementations used by the tests.

Nothing here calls the rewriting engine: scalars are evaluated exactly at a
rational point, U_q(sl2) is checked through finite-dimensional matrix
representations and root data through the root-string algorithm.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

import numpy as np

from qdisc.scalar import ONE, ZERO, QScalar, qpow

T0 = Fraction(3, 5)  # q^(1/2) at the evaluation point, so q = 9/25
Q0 = T0 * T0


def at(c: QScalar, t: Fraction = T0) -> Fraction:
    """Exact value of ``c`` at q^(1/2) = t."""
    num = sum((Fraction(a) * t**i for i, a in enumerate(c.numerator())), Fraction(0))
    den = sum((Fraction(a) * t**i for i, a in enumerate(c.denominator())), Fraction(0))
    return num / den


def qint(n: int) -> QScalar:
    """[n] = (q^n - q^-n)/(q - q^-1)."""
    return (qpow(n) - qpow(-n)) / (qpow(1) - qpow(-1))


# -- finite-dimensional representations of U_q(sl2) -----------------------------


def _fr(x) -> Fraction:
    return at(x) if isinstance(x, QScalar) else Fraction(x)


def spin_rep(n: int) -> dict:
    """The (n+1)-dimensional simple module with K e_i = q^(n-2i) e_i."""
    dim = n + 1
    E = np.full((dim, dim), Fraction(0), dtype=object)
    F = np.full((dim, dim), Fraction(0), dtype=object)
    K = np.full((dim, dim), Fraction(0), dtype=object)
    Ki = np.full((dim, dim), Fraction(0), dtype=object)
    for i in range(dim):
        K[i, i] = _fr(qpow(n - 2 * i))
        Ki[i, i] = 1 / K[i, i]
        if i + 1 < dim:
            F[i + 1, i] = _fr(qint(i + 1))
            E[i, i + 1] = _fr(qint(n - i))
    return {"E": E, "F": F, "K": K, "Ki": Ki}


def rep_eval(p, rep: dict, letter_map=None):
    """Image of an NCPoly; words act right to left as matrix products."""
    dim = next(iter(rep.values())).shape[0]
    out = np.full((dim, dim), Fraction(0), dtype=object)
    ident = np.identity(dim, dtype=object) * Fraction(1)
    for w, c in p.terms.items():
        m = ident
        for a in w:
            m = m.dot(rep[letter_map(a) if letter_map else a])
        out = out + m * at(c)
    return out


def tensor_rep(rep1: dict, rep2: dict) -> dict:
    """Letters ``X_1``/``X_2`` act in the first/second factor."""
    out = {}
    i1 = np.identity(rep1["K"].shape[0], dtype=object) * Fraction(1)
    i2 = np.identity(rep2["K"].shape[0], dtype=object) * Fraction(1)
    for a in ("E", "F", "K", "Ki"):
        out[f"{a}_1"] = np.kron(rep1[a], i2)
        out[f"{a}_2"] = np.kron(i1, rep2[a])
    return out


# -- Pol normal ordering by closed formula ---------------------------------------


def pol_normal_order(j: int, k: int) -> dict:
    """a-^j a+^k in the basis a+^i a-^l, by moving one a- at a time.

    a- a+^k = q^(2k) a+^k a- + q(1-q^2)(1 + q^2 + ... + q^(2k-2)) a+^(k-1).
    """
    q = qpow(1)
    state = {(k, 0): ONE}  # a+^i a-^l, with the remaining j a- on the left
    for _ in range(j):
        new: dict = {}
        for (i, l), c in state.items():
            # a- a+^i a-^l
            new[(i, l + 1)] = new.get((i, l + 1), ZERO) + c * qpow(2 * i)
            if i:
                geo = sum((qpow(2 * s) for s in range(i)), ZERO)
                coef = c * q * (1 - q * q) * geo
                new[(i - 1, l)] = new.get((i - 1, l), ZERO) + coef
        state = {key: c for key, c in new.items() if c}
    return state


# -- root systems -------------------------------------------------------------------


def root_strings(cartan) -> set:
    """Positive roots via alpha-strings: beta + alpha_i is a root iff p - <beta, alpha_i^v> > 0."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # p: how far the string extends downward
                p, down = 0, list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return roots


def weyl_bfs(cartan):
    """Every Weyl group element (as a matrix tuple) with its Cayley-graph length."""
    n = len(cartan)

    def refl(i):
        # s_i(alpha_j) = alpha_j - alpha_j(H_i) alpha_i; columns are images of simple roots
        m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for j in range(n):
            m[i][j] -= cartan[i][j]
        return m

    gens = [refl(i) for i in range(n)]

    def mul(a, b):
        return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n))

    ident = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    dist = {ident: 0}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for g in gens:
            v = mul(w, g)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist, [tuple(map(tuple, g)) for g in gens], mul
