"""Row reduction over Q(q^{1/2}) for the small exact systems in this package."""

from __future__ import annotations

from .scalar import ONE, ZERO, QScalar


def row_reduce(rows: list[list[QScalar]], ncols: int) -> tuple[list[list[QScalar]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[QScalar]], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def nullspace(rows: list[list[QScalar]], ncols: int) -> list[list[QScalar]]:
    """A basis of {x : rows . x = 0}."""
    red, pivots = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis
