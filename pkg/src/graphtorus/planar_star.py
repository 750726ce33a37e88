"""Planarity, polygonal decompositions and *-graph recognition.

Everything runs on one engine: the list of simple cycles as edge bitmasks plus
linear algebra over F2 (and over Q for the matrix criterion). Cycles never
cross 2-connected blocks, and both the cycle space and the cycle matrix split
as direct sums over blocks, so every search is carried out block by block.
Searches are exponential and carry explicit bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .graph_core import (
    CycleBasis,
    Multigraph,
    SearchBoundError,
    betti,
    is_simple_cycle,
    simple_cycles,
)
from .intlinalg import F2Basis, rank
from .kirchhoff import build_cycle_matrix

__all__ = [
    "PolygonalDecomposition",
    "StarReport",
    "blocks",
    "is_planar",
    "polygonal_decompositions",
    "is_star_graph_definitional",
    "is_star_graph_matrix",
    "inner_cycles",
    "h1_of_subgraph",
    "validate_decomposition",
    "exists_acyclic_decomposition",
]

DEFAULT_BOUND = 16
DEFAULT_LIMIT = 10_000
DEFAULT_BASIS_BOUND = 500_000


def _labels(mask: int) -> list[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _mask(labels) -> int:
    m = 0
    for e in labels:
        m |= 1 << (e - 1)
    return m


@dataclass(frozen=True)
class PolygonalDecomposition:
    """Polygons in glueing order with the edges each one is glued along.

    ``interfaces[k]`` is empty exactly for the first polygon of each block.
    """

    polygons: tuple[frozenset, ...]
    interfaces: tuple[frozenset, ...]

    @property
    def glue_edges(self) -> frozenset:
        out: frozenset = frozenset()
        for s in self.interfaces:
            out |= s
        return out

    def key(self):
        return frozenset(self.polygons), self.glue_edges

    def to_json(self) -> dict:
        return {
            "polygons": [sorted(p) for p in self.polygons],
            "interfaces": [sorted(s) for s in self.interfaces],
            "E0": sorted(self.glue_edges),
        }


@dataclass
class StarReport:
    is_polygonal: bool
    is_planar: bool
    is_star: bool
    complete: bool = True
    witness_decomposition: PolygonalDecomposition | None = None
    witness_basis: CycleBasis | None = None
    failing_decomposition: PolygonalDecomposition | None = None
    dependent_basis: CycleBasis | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.is_star and not self.is_polygonal:
            raise AssertionError("star graph must be polygonal")
        if self.is_polygonal and not self.is_planar:
            raise AssertionError("polygonal graph must be planar")

    def to_json(self) -> dict:
        def basis(b):
            return None if b is None else [_labels(_mask(s)) for s in b.supports()]

        def dec(d):
            return None if d is None else d.to_json()

        return {
            "is_polygonal": self.is_polygonal,
            "is_planar": self.is_planar,
            "is_star": self.is_star,
            "complete": self.complete,
            "witness_decomposition": dec(self.witness_decomposition),
            "witness_basis": basis(self.witness_basis),
            "failing_decomposition": dec(self.failing_decomposition),
            "dependent_basis": basis(self.dependent_basis),
            "notes": self.notes,
        }


class _Cycles:
    """Simple cycles of ``g`` grouped by 2-connected block."""

    def __init__(self, g: Multigraph, bound: int):
        if g.n > bound:
            raise SearchBoundError(f"{g.n} edges exceeds the search bound {bound}")
        self.g = g
        self.cycles = simple_cycles(g, bound=max(bound, g.n))
        self.masks = [_mask(c.support) for c in self.cycles]
        self.vertex_sets = [
            frozenset(v for e in c.support for v in g.edges[e - 1]) for c in self.cycles
        ]
        parent = list(range(len(self.cycles)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        owner: dict[int, int] = {}
        for idx, c in enumerate(self.cycles):
            for e in c.support:
                if e in owner:
                    a, b = find(owner[e]), find(idx)
                    parent[max(a, b)] = min(a, b)
                else:
                    owner[e] = idx
        groups: dict[int, list[int]] = {}
        for idx in range(len(self.cycles)):
            groups.setdefault(find(idx), []).append(idx)
        self.blocks = []
        for members in sorted(groups.values()):
            edges = 0
            for idx in members:
                edges |= self.masks[idx]
            self.blocks.append((edges, members))

    def block_h1(self, edges: int) -> int:
        labels = _labels(edges)
        verts = {v for e in labels for v in self.g.edges[e - 1]}
        return len(labels) - len(verts) + 1


def blocks(g: Multigraph, bound: int = DEFAULT_BOUND) -> list[frozenset]:
    """Edge sets of the 2-connected blocks that carry cycles (bridges omitted)."""
    return [frozenset(_labels(edges)) for edges, _ in _Cycles(g, bound).blocks]


def h1_of_subgraph(g: Multigraph, s) -> int:
    s = frozenset(s)
    if not s:
        return 0
    verts = sorted({v for e in s for v in g.edge(e)})
    index = {v: k for k, v in enumerate(verts)}
    sub = Multigraph(len(verts), tuple((index[g.edge(e)[0]], index[g.edge(e)[1]]) for e in sorted(s)))
    return betti(sub)[1]


# -- MacLane --------------------------------------------------------------------


def _two_basis(cyc: _Cycles, edges: int, members: list[int]) -> list[int] | None:
    need = cyc.block_h1(edges)
    masks = cyc.masks

    def search(start, chosen, basis, once, twice):
        if len(chosen) == need:
            return list(chosen)
        for pos in range(start, len(members) - (need - len(chosen)) + 1):
            idx = members[pos]
            m = masks[idx]
            if m & twice:
                continue
            if not basis.reduce(m):
                continue
            nb = basis.copy()
            nb.add(m)
            chosen.append(idx)
            found = search(pos + 1, chosen, nb, once ^ m, twice | (once & m))
            if found:
                return found
            chosen.pop()
        return None

    return search(0, [], F2Basis(), 0, 0)


def is_planar(g: Multigraph, bound: int = DEFAULT_BOUND) -> tuple[bool, CycleBasis | None]:
    """MacLane: planar iff the cycle space has a basis covering no edge thrice.

    Returns the verdict and, for planar graphs, the 2-basis (shortest cycles
    tried first, so for wheels these are the triangular faces).
    """
    cyc = _Cycles(g, bound)
    chosen = []
    for edges, members in cyc.blocks:
        found = _two_basis(cyc, edges, members)
        if found is None:
            return False, None
        chosen.extend(found)
    chosen.sort()
    return True, CycleBasis(tuple(cyc.cycles[i].vector for i in chosen), "face-boundaries")


# -- polygonal decompositions -----------------------------------------------------


def _is_path(g: Multigraph, mask: int) -> tuple[bool, frozenset]:
    labels = _labels(mask)
    degree: dict[int, int] = {}
    for e in labels:
        for v in g.edges[e - 1]:
            degree[v] = degree.get(v, 0) + 1
    verts = frozenset(degree)
    # a proper subset of a simple cycle is a disjoint union of paths
    ends = sum(1 for d in degree.values() if d == 1)
    return ends == 2, verts


def _block_decompositions(cyc: _Cycles, edges: int, members: list[int], limit: int, stop_on_cyclic: bool):
    """Distinct decompositions of one block, keyed by (polygons, E0)."""
    g = cyc.g
    masks, vsets = cyc.masks, cyc.vertex_sets
    results: dict = {}
    seen: set = set()
    state = {"truncated": False, "cyclic": None}

    def extend(order, interfaces, union, uverts, glue):
        key = (frozenset(order), glue)
        if key in seen:
            return
        seen.add(key)
        if union == edges:
            dec = PolygonalDecomposition(
                tuple(frozenset(_labels(masks[i])) for i in order),
                tuple(frozenset(_labels(s)) for s in interfaces),
            )
            results[dec.key()] = dec
            if stop_on_cyclic and h1_of_subgraph(g, _labels(glue)) > 0:
                state["cyclic"] = dec
            if len(results) >= limit:
                state["truncated"] = True
            return
        for idx in members:
            if state["truncated"] or state["cyclic"] is not None:
                return
            m = masks[idx]
            inter = m & union
            if not inter or inter == m or inter & glue:
                continue
            ok, iverts = _is_path(g, inter)
            if not ok or (vsets[idx] & uverts) != iverts:
                continue
            order.append(idx)
            interfaces.append(inter)
            extend(order, interfaces, union | m, uverts | vsets[idx], glue | inter)
            order.pop()
            interfaces.pop()

    for first in members:
        if state["truncated"] or state["cyclic"] is not None:
            break
        extend([first], [0], masks[first], vsets[first], 0)
    return list(results.values()), state


def _combine(parts: list[PolygonalDecomposition]) -> PolygonalDecomposition:
    polys: tuple = ()
    inters: tuple = ()
    for p in parts:
        polys += p.polygons
        inters += p.interfaces
    return PolygonalDecomposition(polys, inters)


def polygonal_decompositions(
    g: Multigraph, limit: int = DEFAULT_LIMIT, bound: int = DEFAULT_BOUND
) -> list[PolygonalDecomposition]:
    """Decompositions into successively glued polygons, up to ``limit``.

    A new polygon must meet the union so far in a non-empty path of edges (and
    in no other vertex), must bring at least one new edge, and may not reuse
    an edge already used for glueing. Blocks are decomposed independently and
    combined. Raises ``SearchBoundError`` when the limit truncates the search.
    """
    if betti(g)[0] != 1:
        raise ValueError("graph is not connected")
    cyc = _Cycles(g, bound)
    per_block = []
    for edges, members in cyc.blocks:
        decs, state = _block_decompositions(cyc, edges, members, limit, False)
        if state["truncated"]:
            raise SearchBoundError(f"more than {limit} decompositions")
        if not decs:
            return []
        per_block.append(sorted(decs, key=lambda d: (sorted(map(sorted, d.polygons)), sorted(d.glue_edges))))
    out = []
    for combo in product(*per_block):
        out.append(_combine(list(combo)))
        if len(out) > limit:
            raise SearchBoundError(f"more than {limit} decompositions")
    return out


def is_star_graph_definitional(g: Multigraph, limit: int = DEFAULT_LIMIT, bound: int = DEFAULT_BOUND) -> StarReport:
    """Star iff polygonal and every decomposition glues along a forest."""
    planar, _ = is_planar(g, bound)
    cyc = _Cycles(g, bound)
    witnesses = []
    failing = None
    complete = True
    polygonal = True
    for edges, members in cyc.blocks:
        decs, state = _block_decompositions(cyc, edges, members, limit, True)
        if state["cyclic"] is not None:
            failing = state["cyclic"]
        if not decs:
            polygonal = False
            break
        if state["truncated"]:
            complete = False
        witnesses.append(decs[0])
    if not polygonal:
        return StarReport(False, planar, False, complete=True)
    witness = _combine(witnesses) if witnesses else PolygonalDecomposition((), ())
    report = StarReport(True, planar, failing is None, complete=complete or failing is not None)
    report.witness_decomposition = witness
    report.failing_decomposition = failing
    if not report.complete:
        report.notes.append("decomposition enumeration truncated; star verdict unproven")
    return report


# -- matrix criterion -------------------------------------------------------------


def _entries_independent(vectors) -> bool:
    entries = []
    k = len(vectors)
    for i in range(k):
        for j in range(i, k):
            f = tuple(a * b for a, b in zip(vectors[i], vectors[j]))
            if any(f):
                entries.append(f)
    return rank(entries) == len(entries)


def _independent_basis(cyc: _Cycles, edges: int, members: list[int], preferred: list[int], basis_bound: int):
    """Search one block for a cycle basis with independent non-zero entries."""
    need = cyc.block_h1(edges)
    vecs = [c.vector for c in cyc.cycles]
    masks = cyc.masks
    order = list(preferred) + [i for i in members if i not in preferred]
    counter = {"nodes": 0}
    first_dependent: list = []

    def search(start, chosen, basis):
        counter["nodes"] += 1
        if counter["nodes"] > basis_bound:
            raise SearchBoundError(f"cycle-basis search exceeded {basis_bound} nodes")
        if len(chosen) == need:
            return list(chosen)
        for pos in range(start, len(order) - (need - len(chosen)) + 1):
            idx = order[pos]
            if not basis.reduce(masks[idx]):
                continue
            trial = chosen + [idx]
            if not _entries_independent([vecs[i] for i in trial]):
                if not first_dependent and len(trial) == need:
                    first_dependent.append(trial)
                continue
            nb = basis.copy()
            nb.add(masks[idx])
            found = search(pos + 1, trial, nb)
            if found:
                return found
        return None

    found = search(0, [], F2Basis())
    if found is None and not first_dependent:
        # any basis will do as a witness of dependence
        fallback = _any_basis(cyc, members, need)
        if fallback is not None:
            first_dependent.append(fallback)
    return found, (first_dependent[0] if first_dependent else None)


def _any_basis(cyc: _Cycles, members, need):
    basis = F2Basis()
    chosen = []
    for idx in members:
        if basis.add(cyc.masks[idx]):
            chosen.append(idx)
        if len(chosen) == need:
            return chosen
    return None


def is_star_graph_matrix(
    g: Multigraph, bound: int = DEFAULT_BOUND, basis_bound: int = DEFAULT_BASIS_BOUND
) -> StarReport:
    """Star iff some simple-cycle basis gives linearly independent entries."""
    planar, two_basis = is_planar(g, bound)
    cyc = _Cycles(g, bound)
    face_idx = set()
    if two_basis is not None:
        vec_index = {c.vector: k for k, c in enumerate(cyc.cycles)}
        face_idx = {vec_index[v] for v in two_basis.vectors}
    chosen = []
    dependent = None
    star = True
    for edges, members in cyc.blocks:
        preferred = [i for i in members if i in face_idx]
        found, dep = _independent_basis(cyc, edges, members, preferred, basis_bound)
        if found is None:
            star = False
            dependent = dep
            break
        chosen.extend(found)
    polygonal = planar and _has_decomposition(cyc)
    report = StarReport(polygonal or star, planar, star)
    if star:
        chosen.sort()
        b = CycleBasis(tuple(cyc.cycles[i].vector for i in chosen), "user-supplied")
        build_cycle_matrix(g, b)  # validates the witness
        report.witness_basis = b
    elif dependent is not None:
        report.dependent_basis = CycleBasis(tuple(cyc.cycles[i].vector for i in sorted(dependent)))
    if star and not polygonal:
        report.notes.append("matrix criterion holds but no polygonal decomposition was found")
    return report


def _has_decomposition(cyc: _Cycles) -> bool:
    for edges, members in cyc.blocks:
        decs, _ = _block_decompositions(cyc, edges, members, 1, False)
        if not decs:
            return False
    return True


# -- inner cycles -----------------------------------------------------------------


def inner_cycles(
    g: Multigraph, bound: int = DEFAULT_BOUND, first_only: bool = False, node_bound: int = 5_000_000
) -> list[frozenset]:
    """Simple cycles equal over F2 to the sum of their overlaps with a
    completing basis. ``first_only`` stops at the first one found."""
    cyc = _Cycles(g, bound)
    masks = cyc.masks
    found = []
    counter = {"nodes": 0}
    for edges, members in cyc.blocks:
        need = cyc.block_h1(edges) - 1
        if need < 1:
            continue
        for d in members:
            target = masks[d]
            others = [i for i in members if i != d]
            start_basis = F2Basis.of([target])

            def search(start, count, basis, acc):
                counter["nodes"] += 1
                if counter["nodes"] > node_bound:
                    raise SearchBoundError(f"inner-cycle search exceeded {node_bound} nodes")
                if count == need:
                    return acc == target
                for pos in range(start, len(others) - (need - count) + 1):
                    m = masks[others[pos]]
                    if not basis.reduce(m):
                        continue
                    nb = basis.copy()
                    nb.add(m)
                    if search(pos + 1, count + 1, nb, acc ^ (m & target)):
                        return True
                return False

            if search(0, 0, start_basis, 0):
                found.append(frozenset(_labels(target)))
                if first_only:
                    return found
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def validate_decomposition(g: Multigraph, dec: PolygonalDecomposition) -> list[str]:
    """Problems with ``dec`` as a glueing of polygons; empty when valid.

    An empty interface opens a new block; vertex contact is checked against
    the earlier polygons of the same block only.
    """
    problems = []
    union: set = set()
    used: set = set()
    seen_vertices: set = set()
    for k, (poly, inter) in enumerate(zip(dec.polygons, dec.interfaces)):
        if not is_simple_cycle(g, poly):
            problems.append(f"polygon {k} is not a simple cycle")
        verts = {v for e in poly for v in g.edge(e)}
        if inter != poly & union:
            problems.append(f"interface {k} differs from the overlap with earlier polygons")
        if not inter:
            # first polygon of a new block
            seen_vertices = set()
        if inter:
            if inter == poly:
                problems.append(f"polygon {k} adds no edge")
            if inter & used:
                problems.append(f"polygon {k} reuses a glueing edge")
            ivs = {v for e in inter for v in g.edge(e)}
            if h1_of_subgraph(g, inter) or len(_components_of(g, inter)) != 1:
                problems.append(f"interface {k} is not a path")
            if verts & seen_vertices != ivs:
                problems.append(f"polygon {k} meets earlier polygons outside its interface")
        used |= inter
        union |= poly
        seen_vertices |= verts
    if union != set(e for e in g.labels if any(e in c.support for c in simple_cycles(g))):
        problems.append("polygons do not cover every cycle edge")
    return problems


def _components_of(g: Multigraph, s) -> list[set]:
    comps: list[set] = []
    for e in s:
        ends = set(g.edge(e))
        touching = [c for c in comps if c & ends]
        merged = ends.union(*touching)
        comps = [c for c in comps if not c & ends] + [merged]
    return comps


def exists_acyclic_decomposition(g: Multigraph, limit: int = DEFAULT_LIMIT, bound: int = DEFAULT_BOUND) -> bool:
    """Existential variant: some decomposition glues along a forest."""
    if not is_planar(g, bound)[0]:
        return False
    return any(h1_of_subgraph(g, d.glue_edges) == 0 for d in polygonal_decompositions(g, limit, bound))
