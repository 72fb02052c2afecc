"""Exact dense linear algebra over a field descriptor."""

from __future__ import annotations


def rref(rows, field):
    """Reduced row-echelon form; returns (matrix, pivot columns)."""
    m = [[field(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not m[r][c] == 1 else None
        if inv is not None:
            m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, field, ncols=None):
    """Basis of {v : rows . v = 0}, one vector per free column, in order."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def det_laplace(mat, zero):
    """Division-free determinant by cofactor expansion, skipping zero entries.

    Valid over any commutative ring; intended for small or sparse matrices.
    """
    n = len(mat)
    if n == 0:
        return zero + 1
    if n == 1:
        return mat[0][0]
    total = zero
    row = mat[0]
    for j, a in enumerate(row):
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in mat[1:]]
        term = a * det_laplace(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_gauss(mat, field):
    """Determinant by Gaussian elimination over a field."""
    m = [[field(x) for x in row] for row in mat]
    n = len(m)
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d
