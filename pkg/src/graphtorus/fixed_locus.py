"""Fixed loci of diagonal tori on projective space and the graph hypersurface."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .graph_core import CycleBasis, GraphError, Multigraph, betti
from .intlinalg import solve_rational
from .kirchhoff import build_cycle_matrix, kirchhoff, normalize
from .multipoly import span_dimension
from .torus_lattice import WeightLattice, exact_diagonal_rank

__all__ = ["FixedComponent", "FixedLocusReport", "HypothesisError", "fixed_components", "fixed_points_in_hypersurface"]


class HypothesisError(GraphError):
    """Input violates the independence or loop-number hypothesis."""


@dataclass(frozen=True)
class FixedComponent:
    """Coordinates (1-based) sharing one character, spanning a fixed subspace."""

    indices: tuple[int, ...]
    character: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.indices) - 1

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "character": list(self.character), "dimension": self.dimension}


def fixed_components(lattice: WeightLattice) -> list[FixedComponent]:
    """Group coordinates by their character: the column of the lattice basis."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for k in range(lattice.n):
        col = tuple(row[k] for row in lattice.basis)
        groups.setdefault(col, []).append(k + 1)
    comps = [FixedComponent(tuple(ix), ch) for ch, ix in groups.items()]
    return sorted(comps, key=lambda c: c.indices)


@dataclass
class FixedLocusReport:
    h1: int
    n: int
    ell: int
    expected_rank: int
    torus_rank: int
    components: list[FixedComponent]
    points: list[dict] = field(default_factory=list)

    @property
    def all_points(self) -> bool:
        return all(c.dimension == 0 for c in self.components)

    @property
    def all_contained(self) -> bool:
        return self.all_points and all(p["in_hypersurface"] for p in self.points)

    def to_json(self) -> dict:
        return {
            "h1": self.h1,
            "n": self.n,
            "ell": self.ell,
            "expected_rank": self.expected_rank,
            "torus_rank": self.torus_rank,
            "components": [c.to_json() for c in self.components],
            "points": self.points,
            "all_points": self.all_points,
            "all_contained": self.all_contained,
        }


def _original_point(forms, k: int, n: int) -> list[int]:
    """Edge coordinates of the point whose only non-zero adapted coordinate is ``k``."""
    # forms are the rows of the coordinate change Y = F X; solve F x = e_k
    cols = [[forms[r].coeffs[c] for r in range(n)] for c in range(n)]
    sol = solve_rational(cols, [int(r == k) for r in range(n)])
    if sol is None:
        raise AssertionError("coordinate change is not invertible")
    d = 1
    for x in sol:
        d = lcm(d, Fraction(x).denominator)
    return [int(x * d) for x in sol]


def fixed_points_in_hypersurface(g: Multigraph, b: CycleBasis) -> FixedLocusReport:
    """Fixed components of the adapted-coordinate torus and containment in ``{P = 0}``.

    The torus is the full diagonal lattice of the normalized cycle matrix. Each
    fixed point is pulled back to edge coordinates and ``P`` is evaluated there.
    """
    h1 = betti(g)[1]
    if h1 < 2:
        raise HypothesisError("loop number must be at least 2")
    m = build_cycle_matrix(g, b)
    entries = m.upper_entries()
    if span_dimension(entries) != len(entries):
        raise HypothesisError("non-zero matrix entries are linearly dependent")
    nm = normalize(m)
    exact = exact_diagonal_rank(nm)
    comps = fixed_components(exact.lattice)
    poly = kirchhoff(g)
    report = FixedLocusReport(
        h1=h1,
        n=g.n,
        ell=nm.ell,
        expected_rank=h1 - 1 + g.n - nm.ell,
        torus_rank=exact.rank,
        components=comps,
    )
    for comp in comps:
        if comp.dimension:
            continue
        k = comp.indices[0]
        x = _original_point(nm.forms, k - 1, g.n)
        value = poly.evaluate(x)
        report.points.append({"coordinate": k, "edge_point": x, "value": value, "in_hypersurface": value == 0})
    return report
