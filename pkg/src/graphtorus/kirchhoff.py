"""Graph polynomials, cycle matrices and their normalized coordinates."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .graph_core import (
    CycleBasis,
    GraphError,
    Multigraph,
    betti,
    spanning_trees,
    validate_cycle_basis,
)
from .intlinalg import rank, solve_rational
from .multipoly import LinearForm, MultiPoly, SymbolicMatrix, determinant, span_dimension

__all__ = [
    "DisconnectedGraphWarning",
    "DependentDiagonalError",
    "NormalizedMatrix",
    "kirchhoff",
    "kirchhoff_dc",
    "build_cycle_matrix",
    "verify_det_equals_kirchhoff",
    "check_diagonal_independent",
    "normalize",
    "cycle_matrix_from_tree",
    "subdivision_identity",
]


class DisconnectedGraphWarning(UserWarning):
    pass


class DependentDiagonalError(ValueError):
    pass


def kirchhoff(g: Multigraph) -> MultiPoly:
    """Sum over spanning trees of the product of the complement variables."""
    if betti(g)[0] != 1:
        warnings.warn("graph polynomial of a disconnected graph is 0", DisconnectedGraphWarning)
        return MultiPoly.zero(g.n)
    terms = {}
    for t in spanning_trees(g):
        terms[tuple(0 if e in t else 1 for e in g.labels)] = 1
    return MultiPoly(g.n, terms)


def kirchhoff_dc(g: Multigraph) -> MultiPoly:
    """Deletion-contraction on the highest-labelled non-loop, non-bridge edge.

    Loops factor out as ``X_e * P(G \\ e)``; a graph made only of bridges is a
    tree and contributes 1. Variables keep the labels of ``g`` throughout.
    """
    n = g.n
    if betti(g)[0] != 1:
        warnings.warn("graph polynomial of a disconnected graph is 0", DisconnectedGraphWarning)
        return MultiPoly.zero(n)
    cache: dict = {}
    edges = tuple((u, v, lab) for lab, (u, v) in enumerate(g.edges, 1))
    return _dc(g.vertex_count, edges, n, cache)


def _dc(vcount, edges, n, cache):
    key = (vcount, edges)
    if key in cache:
        return cache[key]
    loops = [e for e in edges if e[0] == e[1]]
    if loops:
        u, v, lab = loops[-1]
        rest = tuple(e for e in edges if e[2] != lab)
        result = MultiPoly.var(lab, n) * _dc(vcount, rest, n, cache)
    else:
        chosen = next((e for e in reversed(edges) if not _is_bridge(vcount, edges, e)), None)
        if chosen is None:
            result = MultiPoly.constant(1, n)
        else:
            u, v, lab = chosen
            deleted = tuple(e for e in edges if e[2] != lab)
            result = MultiPoly.var(lab, n) * _dc(vcount, deleted, n, cache)
            result = result + _dc(vcount - 1, _contract(deleted, u, v), n, cache)
    cache[key] = result
    return result


def _is_bridge(vcount, edges, edge):
    u, v, lab = edge
    adj: dict[int, list[int]] = {}
    for a, b, other in edges:
        if other == lab:
            continue
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            return False
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return True


def _contract(edges, u, v):
    keep, gone = min(u, v), max(u, v)

    def move(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    return tuple((move(a), move(b), lab) for a, b, lab in edges)


def build_cycle_matrix(g: Multigraph, b: CycleBasis, validate: bool = True) -> SymbolicMatrix:
    """Gram matrix ``sum_e X_e <c_i, e><c_j, e>`` of the cycle basis."""
    if validate:
        validate_cycle_basis(g, b)
    vecs = b.vectors
    h = len(vecs)
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            row.append(LinearForm(tuple(a * c for a, c in zip(vecs[i], vecs[j]))))
        rows.append(tuple(row))
    return SymbolicMatrix(tuple(rows), g.n)


def verify_det_equals_kirchhoff(g: Multigraph, b: CycleBasis) -> tuple[bool, dict]:
    m = build_cycle_matrix(g, b)
    det = determinant(m, bound=max(8, m.h))
    poly = kirchhoff(g)
    ok = det == poly
    report = {"ok": ok, "h1": m.h, "terms": len(poly)}
    if not ok:
        report["determinant"] = det.to_str()
        report["kirchhoff"] = poly.to_str()
    return ok, report


def check_diagonal_independent(m: SymbolicMatrix) -> bool:
    return span_dimension(m.diagonal()) == m.h


@dataclass(frozen=True)
class NormalizedMatrix:
    """A cycle matrix rewritten in coordinates adapted to its entries.

    ``forms[k]`` expresses the new coordinate ``Y_{k+1}`` in the original
    variables. The first ``ell`` coordinates are the entries at
    ``fresh_positions`` (diagonal first, then row-major); the remaining
    ``n - ell`` complete them to a basis with unit vectors. Every other
    non-zero entry is the linear form ``dependent[(i, j)]`` (rational
    coefficients) in ``Y_1..Y_ell``. ``matrix`` holds the entries in the new
    coordinates with each dependent form scaled to integer coefficients by
    ``scales[(i, j)]``.
    """

    original: SymbolicMatrix
    forms: tuple[LinearForm, ...]
    ell: int
    fresh_positions: tuple[tuple[int, int], ...]
    dependent: dict
    scales: dict
    matrix: SymbolicMatrix

    @property
    def h(self) -> int:
        return self.original.h

    @property
    def n(self) -> int:
        return self.original.nvars

    @property
    def diagonal_variables(self) -> tuple[int, ...]:
        return tuple(range(1, self.h + 1))

    @property
    def nonzero_count(self) -> int:
        return len(self.fresh_positions) + len(self.dependent)

    def classification(self) -> dict:
        """Position -> ``"fresh"`` or ``"dependent"`` for non-zero entries."""
        out = {p: "fresh" for p in self.fresh_positions}
        out.update({p: "dependent" for p in self.dependent})
        return out

    def entry_variables(self, i: int, j: int) -> set[int]:
        """Normalized variables occurring in entry ``(i, j)`` (0-based)."""
        i, j = min(i, j), max(i, j)
        return self.matrix[i, j].support()

    def expanded_determinant(self) -> MultiPoly:
        """``det`` of the normalized matrix, a polynomial in ``Y_1..Y_n``.

        With rational dependent forms the determinant need not be integral;
        it is then returned multiplied by the smallest positive integer that
        clears denominators (same hypersurface, same weight lattice).
        """
        d = 1
        for s in self.scales.values():
            d = lcm(d, s.denominator)
        if d == 1:
            return determinant(self.matrix, bound=max(8, self.h))
        scaled = []
        for i in range(self.h):
            row = []
            for j in range(self.h):
                p = (min(i, j), max(i, j))
                f = self.matrix[i, j]
                s = self.scales.get(p, Fraction(1))
                row.append(f * int(s * d))
            scaled.append(tuple(row))
        det = determinant(SymbolicMatrix(tuple(scaled), self.n), bound=max(8, self.h))
        div = gcd(d**self.h, *det.terms.values())
        return MultiPoly(det.nvars, {e: c // div for e, c in det.terms.items()})

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "n": self.n,
            "ell": self.ell,
            "nonzero_entries": self.nonzero_count,
            "coordinates": [str(f) for f in self.forms],
            "fresh_positions": [[i + 1, j + 1] for i, j in self.fresh_positions],
            "dependent": {
                f"{i + 1},{j + 1}": _fraction_form_str(self.dependent[(i, j)])
                for i, j in sorted(self.dependent)
            },
            "matrix": self.matrix.to_strings(),
        }


def _fraction_form_str(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs, 1):
        if c == 0:
            continue
        mag = abs(c)
        body = f"y{k}" if mag == 1 else f"{mag}*y{k}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) or "0"


def normalize(m: SymbolicMatrix) -> NormalizedMatrix:
    """Adapted coordinates for a matrix with independent non-zero diagonal."""
    h, n = m.h, m.nvars
    diag = m.diagonal()
    if any(not f for f in diag) or span_dimension(diag) != h:
        raise DependentDiagonalError("dependent diagonal")

    fresh = [(i, i) for i in range(h)]
    chosen = [f.coeffs for f in diag]
    for i, j in m.upper_positions():
        if i == j:
            continue
        candidate = chosen + [m[i, j].coeffs]
        if rank(candidate) > len(chosen):
            chosen = candidate
            fresh.append((i, j))
    ell = len(chosen)

    forms = [list(c) for c in chosen]
    for k in range(n):
        unit = [int(t == k) for t in range(n)]
        if len(forms) == n:
            break
        if rank(forms + [unit]) > len(forms):
            forms.append(unit)

    new_index = {p: k + 1 for k, p in enumerate(fresh)}
    dependent = {}
    scales = {}
    entries = [[LinearForm.zero(n) for _ in range(h)] for _ in range(h)]
    for i, j in m.upper_positions():
        if (i, j) in new_index:
            f = LinearForm.var(new_index[(i, j)], n)
        else:
            coeffs = solve_rational(chosen, m[i, j].coeffs)
            if coeffs is None:
                raise AssertionError("entry outside the span of the chosen entries")
            dependent[(i, j)] = tuple(coeffs)
            d = 1
            for c in coeffs:
                d = lcm(d, c.denominator)
            scales[(i, j)] = Fraction(1, d)
            f = LinearForm(tuple(int(c * d) for c in coeffs) + (0,) * (n - ell))
        entries[i][j] = entries[j][i] = f
    matrix = SymbolicMatrix(tuple(tuple(r) for r in entries), n)
    return NormalizedMatrix(
        original=m,
        forms=tuple(LinearForm(tuple(f)) for f in forms),
        ell=ell,
        fresh_positions=tuple(fresh),
        dependent=dependent,
        scales=scales,
        matrix=matrix,
    )


def cycle_matrix_from_tree(g: Multigraph, tree=None) -> tuple[CycleBasis, SymbolicMatrix]:
    """Convenience: fundamental basis of ``tree`` (default: first tree)."""
    from .graph_core import cycle_basis, first_spanning_tree

    if tree is None:
        tree = first_spanning_tree(g)
    b = cycle_basis(g, tree)
    return b, build_cycle_matrix(g, b)



def subdivision_identity(g: Multigraph, e: int) -> bool:
    """``P(G')`` equals ``P(G)`` with ``X_e -> X_e + X_{n+1}`` for ``G'`` = ``g`` with ``e`` split."""
    from .graph_core import subdivide

    s = subdivide(g, e)
    n = s.graph.n
    expected = kirchhoff(g).extend(n).substitute(e, LinearForm.var(e, n) + LinearForm.var(n, n))
    return kirchhoff(s.graph) == expected
