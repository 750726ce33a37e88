"""Weight lattices and diagonal torus actions on determinantal hypersurfaces.

A diagonal one-parameter subgroup ``t -> diag(t^w_1, ..., t^w_n)`` preserves
``{f = 0}`` exactly when ``w . alpha`` takes one value on every exponent
``alpha`` of ``f``. The lattice of such ``w`` always contains the all-ones
vector (scalars act trivially on projective space), so its rank minus one is
the largest torus acting diagonally in the given coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple, Sequence

from .intlinalg import hermite_rows, in_lattice, integer_kernel
from .kirchhoff import NormalizedMatrix
from .multipoly import MultiPoly, SymbolicMatrix

__all__ = [
    "WeightLattice",
    "WeightSystem",
    "ClusterPartition",
    "ExactRank",
    "weight_lattice",
    "projective_rank",
    "lambda_h_lattice",
    "lambda_h_member",
    "clusters",
    "rank_lower_bound",
    "diagonal_weight_lattice",
    "exact_diagonal_rank",
    "fill_weight_system",
    "restrict_weight_system",
    "verify_action",
    "generic_symmetric_matrix",
]

CONSTANT = "constant"
ZERO = "zero"


@dataclass(frozen=True)
class WeightLattice:
    n: int
    basis: tuple[tuple[int, ...], ...]
    convention: str = CONSTANT

    @classmethod
    def from_rows(cls, rows, n: int, convention: str = CONSTANT) -> "WeightLattice":
        return cls(n, tuple(tuple(r) for r in hermite_rows(rows)), convention)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return in_lattice(self.basis, list(v))

    def same_lattice(self, other: "WeightLattice") -> bool:
        return self.n == other.n and self.basis == other.basis

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "convention": self.convention,
            "basis": [list(r) for r in self.basis],
        }


@dataclass(frozen=True)
class WeightSystem:
    """Symmetric weight matrix ``omega`` plus optional coordinate weights."""

    omega: tuple[tuple[int, ...], ...]
    variables: tuple[int, ...] = field(default=())

    @property
    def h(self) -> int:
        return len(self.omega)

    @classmethod
    def from_vector(cls, h: int, vec: Sequence[int]) -> "WeightSystem":
        """Upper-triangle vector: diagonal first, then off-diagonals row-major."""
        pairs = [(i, i) for i in range(h)] + [(i, j) for i in range(h) for j in range(i + 1, h)]
        if len(vec) != len(pairs):
            raise ValueError(f"expected {len(pairs)} weights for h = {h}")
        om = [[0] * h for _ in range(h)]
        for (i, j), w in zip(pairs, vec):
            om[i][j] = om[j][i] = int(w)
        return cls(tuple(tuple(r) for r in om))

    def to_vector(self) -> tuple[int, ...]:
        h = self.h
        diag = [self.omega[i][i] for i in range(h)]
        off = [self.omega[i][j] for i in range(h) for j in range(i + 1, h)]
        return tuple(diag + off)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.omega[i][i] for i in range(self.h))

    def to_json(self) -> dict:
        out = {"omega": [list(r) for r in self.omega]}
        if self.variables:
            out["variables"] = list(self.variables)
        return out


class ClusterPartition(NamedTuple):
    clusters: list[frozenset]
    excessive: frozenset
    delta: int

    def sizes(self) -> list[int]:
        return sorted((len(c) for c in self.clusters), reverse=True)

    def to_json(self) -> dict:
        return {
            "clusters": [sorted([i + 1, j + 1] for i, j in c) for c in self.clusters],
            "sizes": self.sizes(),
            "excessive": sorted([i + 1, j + 1] for i, j in self.excessive),
            "delta": self.delta,
        }


class ExactRank(NamedTuple):
    rank: int
    basis: list[WeightSystem]
    lattice: WeightLattice


# -- weight lattices of polynomials ----------------------------------------------


def weight_lattice(f: MultiPoly, convention: str = CONSTANT) -> WeightLattice:
    """Integer weights under which every monomial of ``f`` has one weight.

    ``convention="zero"`` asks for weight zero on every monomial instead.
    """
    if not f:
        raise ValueError("zero polynomial has no weight lattice")
    exps = f.exponents()
    if convention == CONSTANT:
        base = exps[0]
        rows = [[a - b for a, b in zip(e, base)] for e in exps[1:]]
    elif convention == ZERO:
        rows = [list(e) for e in exps]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    kernel = integer_kernel(rows, f.nvars)
    return WeightLattice(f.nvars, tuple(tuple(r) for r in kernel), convention)


def projective_rank(f: MultiPoly) -> int:
    if f.is_homogeneous() is None:
        raise ValueError("polynomial is not homogeneous")
    return weight_lattice(f, CONSTANT).rank - 1


def verify_action(f: MultiPoly, weights: Sequence[int]) -> bool:
    if len(weights) != f.nvars:
        raise ValueError("weight vector has the wrong length")
    values = {sum(w * a for w, a in zip(weights, e)) for e in f.terms}
    return len(values) <= 1


# -- Lambda_h -----------------------------------------------------------------


def _upper_pairs(h):
    return [(i, i) for i in range(h)] + [(i, j) for i in range(h) for j in range(i + 1, h)]


def lambda_h_lattice(h: int) -> WeightLattice:
    """Symmetric weight matrices with ``2 w_ij = w_ii + w_jj``, as vectors."""
    pairs = _upper_pairs(h)
    index = {p: k for k, p in enumerate(pairs)}
    rows = []
    for i in range(h):
        for j in range(i + 1, h):
            row = [0] * len(pairs)
            row[index[(i, j)]] = 2
            row[index[(i, i)]] -= 1
            row[index[(j, j)]] -= 1
            rows.append(row)
    return WeightLattice(len(pairs), tuple(tuple(r) for r in integer_kernel(rows, len(pairs))))


def lambda_h_member(ws: WeightSystem) -> bool:
    om = ws.omega
    h = len(om)
    return all(
        om[i][j] == om[j][i] and 2 * om[i][j] == om[i][i] + om[j][j]
        for i in range(h)
        for j in range(h)
    )


def fill_weight_system(ws: WeightSystem, omega11: int | None = None) -> WeightSystem:
    """Prepend a first row and column to a weight matrix of size ``h - 1``.

    The new off-diagonal weights are ``(omega11 + omega_ii) / 2``, so
    ``omega11`` must have the parity of the old diagonal. The default is the
    old first diagonal weight plus two.
    """
    if not lambda_h_member(ws):
        raise ValueError("input weight matrix is not in Lambda_h")
    old = ws.omega
    h = len(old) + 1
    if omega11 is None:
        omega11 = old[0][0] + 2 if old else 0
    if old and (omega11 - old[0][0]) % 2:
        raise ValueError("parity violation: omega11 must match the parity of the diagonal")
    om = [[0] * h for _ in range(h)]
    om[0][0] = omega11
    for i in range(1, h):
        om[0][i] = om[i][0] = (omega11 + old[i - 1][i - 1]) // 2
        for j in range(1, h):
            om[i][j] = old[i - 1][j - 1]
    return WeightSystem(tuple(tuple(r) for r in om))


def restrict_weight_system(ws: WeightSystem) -> WeightSystem:
    """Drop the first row and column."""
    return WeightSystem(tuple(tuple(r[1:]) for r in ws.omega[1:]))


# -- clusters and the rank bound -------------------------------------------------


def clusters(nm: NormalizedMatrix) -> ClusterPartition:
    """Group non-zero upper positions that share a normalized variable.

    A dependent position ``(i, j)`` is excessive when its form contains
    neither the diagonal variable of row ``i`` nor that of row ``j``.
    """
    positions = nm.matrix.upper_positions()
    parent = {p: p for p in positions}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    owner: dict[int, tuple[int, int]] = {}
    for p in positions:
        for var in nm.entry_variables(*p):
            if var in owner:
                a, b = find(owner[var]), find(p)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                owner[var] = p

    groups: dict = {}
    for p in positions:
        groups.setdefault(find(p), set()).add(p)
    parts = sorted((frozenset(g) for g in groups.values()), key=lambda c: sorted(c))

    diag_var = nm.diagonal_variables
    excessive = frozenset(
        (i, j)
        for (i, j) in nm.dependent
        if diag_var[i] not in nm.entry_variables(i, j) and diag_var[j] not in nm.entry_variables(i, j)
    )
    delta = sum(len(c) - 1 for c in parts) + len(excessive)
    return ClusterPartition(parts, excessive, delta)


def rank_lower_bound(nm: NormalizedMatrix) -> int:
    h, n, ell = nm.h, nm.n, nm.ell
    if nm.nonzero_count == ell:
        return h - 1 + n - ell
    return max(0, h - 1 + n - ell - clusters(nm).delta)


# -- exact diagonal rank ---------------------------------------------------------


def diagonal_weight_lattice(m: SymbolicMatrix) -> WeightLattice:
    """Coordinate weights compatible with the rescaling ``M -> D M D``.

    Requires every diagonal entry to be a single variable, each in its own
    row. For every variable ``x_k`` in entry ``(i, j)`` the weight must satisfy
    ``2 w_k = w_{d_i} + w_{d_j}``, ``d_i`` being the diagonal variable of row
    ``i``. Variables absent from ``m`` are unconstrained.
    """
    h, n = m.h, m.nvars
    diag_vars = []
    for i in range(h):
        support = m[i, i].support()
        if len(support) != 1:
            raise ValueError("diagonal entries must be single variables")
        diag_vars.append(next(iter(support)))
    if len(set(diag_vars)) != h:
        raise ValueError("diagonal variables must be distinct")
    rows = []
    for i, j in m.upper_positions():
        for k in sorted(m[i, j].support()):
            row = [0] * n
            row[k - 1] += 2
            row[diag_vars[i] - 1] -= 1
            row[diag_vars[j] - 1] -= 1
            if any(row):
                rows.append(row)
    return WeightLattice(n, tuple(tuple(r) for r in integer_kernel(rows, n)))


def _weight_system(m: SymbolicMatrix, w: Sequence[int]) -> WeightSystem:
    h = m.h
    diag = [w[next(iter(m[i, i].support())) - 1] for i in range(h)]
    double = any((diag[i] + diag[j]) % 2 for i in range(h) for j in range(i + 1, h))
    scale = 2 if double else 1
    d = [x * scale for x in diag]
    w = [x * scale for x in w]
    om = [[(d[i] + d[j]) // 2 for j in range(h)] for i in range(h)]
    g = 0
    for x in list(w) + [x for r in om for x in r]:
        g = gcd(g, x)
    if g > 1:
        w = [x // g for x in w]
        om = [[x // g for x in r] for r in om]
    return WeightSystem(tuple(tuple(r) for r in om), tuple(w))


def exact_diagonal_rank(nm: NormalizedMatrix) -> ExactRank:
    """Largest diagonal torus in normalized coordinates of Lambda_h shape.

    Solves the integer system that forces every variable in entry ``(i, j)``
    to carry weight ``(w_ii + w_jj) / 2``; the rank of the solution lattice
    minus one (the scalars) is returned with a basis of weight systems.
    """
    lattice = diagonal_weight_lattice(nm.matrix)
    basis = [_weight_system(nm.matrix, row) for row in lattice.basis]
    return ExactRank(lattice.rank - 1, basis, lattice)


def generic_symmetric_matrix(h: int) -> SymbolicMatrix:
    """Symmetric matrix whose upper-triangle entries are independent variables.

    Variables are numbered diagonal first, then off-diagonals row-major, the
    same order as ``WeightSystem.from_vector``.
    """
    pairs = _upper_pairs(h)
    n = len(pairs)
    index = {p: k + 1 for k, p in enumerate(pairs)}
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            coeffs = [0] * n
            coeffs[index[(min(i, j), max(i, j))] - 1] = 1
            row.append(coeffs)
        rows.append(row)
    return SymbolicMatrix.from_rows(rows, n)

