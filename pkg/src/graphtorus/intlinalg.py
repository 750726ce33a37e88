"""Exact linear algebra over Z, Q and F2 on lists of Python ints."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    r, prev = 0, 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, len(a)):
            for j in range(c + 1, ncols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == len(a):
            break
    return r


def f2_rank(masks: Sequence[int]) -> int:
    """Rank over F2 of vectors encoded as int bitmasks."""
    return len(F2Basis.of(masks))


class F2Basis:
    """Incremental xor basis keyed by leading bit."""

    def __init__(self):
        self.pivots: dict[int, int] = {}

    @classmethod
    def of(cls, masks):
        basis = cls()
        for m in masks:
            basis.add(m)
        return basis

    def __len__(self):
        return len(self.pivots)

    def reduce(self, m: int) -> int:
        while m:
            top = m.bit_length() - 1
            p = self.pivots.get(top)
            if p is None:
                return m
            m ^= p
        return 0

    def add(self, m: int) -> bool:
        m = self.reduce(m)
        if not m:
            return False
        self.pivots[m.bit_length() - 1] = m
        return True

    def copy(self) -> "F2Basis":
        other = F2Basis()
        other.pivots = dict(self.pivots)
        return other


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Returns the non-zero rows: pivots positive and strictly increasing in
    column, entries above each pivot reduced into ``[0, pivot)``.
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # Euclid on column c among rows r..
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i_min] = a[i_min], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of ``{x in Z^n : A x = 0}``, in Hermite normal form.

    Column operations reduce ``A`` to echelon form while the same unimodular
    operations act on an identity matrix; columns of the transform that end up
    paired with zero columns span the kernel, which is therefore saturated.
    """
    rows = [list(r) for r in a]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    # work on columns: cols[j] = (column j of A, column j of U)
    cols = [([r[j] for r in rows], [int(i == j) for i in range(n)]) for j in range(n)]
    pivot_col = 0
    for i in range(len(rows)):
        while True:
            nz = [j for j in range(pivot_col, n) if cols[j][0][i] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(cols[j][0][i]))
            cols[pivot_col], cols[j_min] = cols[j_min], cols[pivot_col]
            pa, pu = cols[pivot_col]
            done = True
            for j in range(pivot_col + 1, n):
                ca, cu = cols[j]
                if ca[i]:
                    q = ca[i] // pa[i]
                    ca = [x - q * y for x, y in zip(ca, pa)]
                    cu = [x - q * y for x, y in zip(cu, pu)]
                    cols[j] = (ca, cu)
                    if ca[i]:
                        done = False
            if done:
                pivot_col += 1
                break
        if pivot_col == n:
            break
    kernel = [cu for ca, cu in cols[pivot_col:]]
    return hermite_rows(kernel)


def solve_rational(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_k basis[k] == target``, or ``None``.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(target)
    # augmented system: columns are basis vectors, rows are coordinates
    a = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    r = 0
    pivots = []
    for c in range(k):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        return None
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        coeffs[c] = a[i][k]
    return coeffs


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the integer span of independent ``basis`` rows."""
    if not basis:
        return not any(v)
    coeffs = solve_rational(basis, v)
    return coeffs is not None and all(c.denominator == 1 for c in coeffs)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> list[int]:
    """Divide by the content; leading non-zero entry made positive."""
    g = content(v)
    if g == 0:
        return list(v)
    lead = next(x for x in v if x)
    if lead < 0:
        g = -g
    return [x // g for x in v]
