"""
Exact linear algebra helpers: row reduction over Z_p and the Smith normal
form over Z with its unimodular transforms.

Matrices are plain lists of lists of Python ints. Everything here is exact;
sizes are desk scale (tens of rows), so no effort is spent on asymptotics.
"""
from __future__ import annotations

from math import gcd


def rref_mod_p(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """
    Reduced row echelon form over the field Z_p.

    Returns (reduced nonzero rows, pivot column indices). Leading entries are
    normalized to 1 and pivot columns are cleared, so the output is canonical
    for the row space.

    >>> rref_mod_p([[2, 1], [4, 2]], 5)
    ([[1, 3]], [0])
    """
    mat = [[x % p for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def kernel_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """
    Basis of {x : M x = 0 over Z_p}, in RREF-parametrized form (one basis
    vector per free column, deterministic order).
    """
    red, pivots = rref_mod_p(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        v = [0] * ncols
        v[c] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][c]) % p
        basis.append(v)
    return basis


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _row_op(mat, u, i, j, a, b, c, d):
    """Replace rows (i, j) by (a*ri + b*rj, c*ri + d*rj) in mat and u."""
    for m in (mat, u):
        ri, rj = m[i], m[j]
        m[i] = [a * x + b * y for x, y in zip(ri, rj)]
        m[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _col_op(mat, v, i, j, a, b, c, d):
    """Same as _row_op but on columns (i, j) of mat and v."""
    for m in (mat, v):
        for row in m:
            x, y = row[i], row[j]
            row[i] = a * x + b * y
            row[j] = c * x + d * y


def _gcdex(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def smith_normal_form(mat: list[list[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """
    Smith normal form with transforms: returns (d, u, v) such that
    u * mat * v is diagonal with entries d (d_i >= 0, d_i | d_{i+1}),
    u and v unimodular over Z.

    >>> d, u, v = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    >>> d
    [2, 6, 12]
    """
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    a = [[int(x) for x in row] for row in mat]
    u = _identity(nrows)
    v = _identity(ncols)

    def clear_at(t: int) -> None:
        # Repeatedly kill column t below the pivot and row t to its right.
        # Each gcd step strictly reduces |a[t][t]| or zeroes an entry, so
        # this terminates.
        while True:
            for i in range(t + 1, nrows):
                if a[i][t] % a[t][t] == 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        _row_op(a, u, i, t, 1, -q, 0, 1)
                else:
                    g, s, w = _gcdex(a[t][t], a[i][t])
                    _row_op(a, u, t, i, s, w, -(a[i][t] // g), a[t][t] // g)
            for j in range(t + 1, ncols):
                if a[t][j] % a[t][t] == 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        _col_op(a, v, j, t, 1, -q, 0, 1)
                else:
                    g, s, w = _gcdex(a[t][t], a[t][j])
                    _col_op(a, v, t, j, s, w, -(a[t][j] // g), a[t][t] // g)
            if all(a[i][t] == 0 for i in range(t + 1, nrows)) and all(
                a[t][j] == 0 for j in range(t + 1, ncols)
            ):
                return

    t = 0
    while t < min(nrows, ncols):
        # Pull a nonzero entry of smallest magnitude into the pivot slot.
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(t, nrows)
            for j in range(t, ncols)
            if a[i][j]
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi != t:
            _row_op(a, u, t, pi, 0, 1, 1, 0)
        if pj != t:
            _col_op(a, v, t, pj, 0, 1, 1, 0)
        clear_at(t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

        # Divisibility fixup: d_t must divide everything that remains.
        bad = next(
            (
                (i, j)
                for i in range(t + 1, nrows)
                for j in range(t + 1, ncols)
                if a[i][j] % a[t][t]
            ),
            None,
        )
        if bad is not None:
            _row_op(a, u, t, bad[0], 1, 1, 0, 1)
            continue
        t += 1

    d = [a[i][i] for i in range(min(nrows, ncols))]
    return d, u, v


def mat_mul(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
    return [
        [sum(xi * yj for xi, yj in zip(row, col)) for col in zip(*y)]
        for row in x
    ]


def solution_group_mod_k(
    mat: list[list[int]], ncols: int, k: int
) -> tuple[list[int], list[tuple[list[int], int]]]:
    """
    Structure of {x in Z_k^ncols : mat x = 0 (mod k)} for arbitrary k >= 2,
    via the Smith form of the integer matrix.

    Returns (divisors, generators) where divisors are the nontrivial cyclic
    orders (each dividing k, sorted ascending) and generators pairs each
    basis coloring vector with its order. The group size is the product of
    the divisors.
    """
    if not mat:
        gens = []
        for j in range(ncols):
            e = [0] * ncols
            e[j] = 1
            gens.append((e, k))
        return [k] * ncols, gens
    d, _, v = smith_normal_form(mat)
    orders = []
    for i in range(ncols):
        di = d[i] if i < len(d) else 0
        orders.append(gcd(di, k) if di else k)
    gens = []
    divisors = []
    for j, order in enumerate(orders):
        if order == 1:
            continue
        scale = k // order
        vec = [(v[r][j] * scale) % k for r in range(ncols)]
        gens.append((vec, order))
        divisors.append(order)
    divisors.sort()
    return divisors, gens


class Subspace:
    """
    A linear subspace of Z_p^n held in reduced row echelon form, so equal
    subspaces compare equal and hash alike.
    """

    __slots__ = ("p", "ncols", "rows", "pivots")

    def __init__(self, vectors, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ncols:
                raise ValueError(f"vector length {len(v)} != {ncols}")
        rows, pivots = rref_mod_p(vecs, p) if vecs else ([], [])
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vector) -> bool:
        v = [x % self.p for x in vector]
        if len(v) != self.ncols:
            return False
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % self.p for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and (self.p, self.ncols, self.rows) == (other.p, other.ncols, other.rows)
        )

    def __hash__(self):
        return hash((self.p, self.ncols, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ncols={self.ncols}, p={self.p})"

    def vectors(self):
        """Iterate over all p^dim elements (desk-scale dimensions only)."""
        from itertools import product

        for coeffs in product(range(self.p), repeat=self.dim):
            v = [0] * self.ncols
            for a, row in zip(coeffs, self.rows):
                if a:
                    v = [(x + a * y) % self.p for x, y in zip(v, row)]
            yield tuple(v)
