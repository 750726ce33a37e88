"""Multigraphs with labelled, oriented edges and their homology data.

Edges are labelled ``1..n`` by position in ``Multigraph.edges``; an edge is a
``(source, target)`` pair of 0-based vertex indices. Loops and parallel edges
are allowed. Edge subsets are plain ``frozenset`` objects of labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

__all__ = [
    "GraphError",
    "NotConnectedError",
    "SearchBoundError",
    "Multigraph",
    "Cycle",
    "CycleBasis",
    "Surgery",
    "wheel",
    "banana",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "betti",
    "boundary_matrix",
    "components",
    "spanning_trees",
    "count_spanning_trees",
    "is_spanning_tree",
    "delete",
    "contract",
    "subdivide",
    "cycle_basis",
    "first_spanning_tree",
    "simple_cycles",
    "orient_cycle",
    "validate_cycle_basis",
    "is_simple_cycle",
    "parse_graph",
    "format_graph",
    "graph_to_json",
    "graph_from_json",
]


class GraphError(ValueError):
    pass


class NotConnectedError(GraphError):
    pass


class SearchBoundError(RuntimeError):
    """An exhaustive search would exceed its configured instance bound."""


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of vertex range")
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> range:
        return range(1, len(self.edges) + 1)

    def edge(self, label: int) -> tuple[int, int]:
        self._check_label(label)
        return self.edges[label - 1]

    def is_loop(self, label: int) -> bool:
        u, v = self.edge(label)
        return u == v

    def _check_label(self, label: int) -> None:
        if not 1 <= label <= len(self.edges):
            raise GraphError(f"invalid edge label {label}")

    def __str__(self):
        return format_graph(self)


class Cycle(NamedTuple):
    support: frozenset[int]
    vector: tuple[int, ...]


@dataclass(frozen=True)
class CycleBasis:
    """Integer cycle vectors in Z^n, one per basis element."""

    vectors: tuple[tuple[int, ...], ...]
    provenance: str = "user-supplied"

    def __len__(self):
        return len(self.vectors)

    def supports(self) -> list[frozenset[int]]:
        return [_support(v) for v in self.vectors]


class Surgery(NamedTuple):
    """Result of an edge operation.

    ``relabel`` maps each surviving old label to its new label; for
    ``subdivide`` the split edge maps to the pair of new labels.
    """

    graph: Multigraph
    relabel: dict


# -- generators ---------------------------------------------------------------


def wheel(h: int) -> Multigraph:
    """Wheel with ``h`` spokes.

    Vertex 0 is the hub, rim vertices are ``1..h``. Edge ``i`` (1 <= i <= h) is
    the spoke hub -> i, edge ``h+i`` the rim edge i -> i+1 (wrapping to 1).
    The fundamental basis of the spoke tree consists of the triangles
    ``e_i + e_{h+i} - e_{i+1}``, which gives the diagonal
    ``X_i + X_{i+1} + X_{h+i}`` and the off-diagonal ``-X_{i+1}``.
    """
    if h < 3:
        raise GraphError("a wheel needs at least 3 spokes")
    spokes = [(0, i) for i in range(1, h + 1)]
    rim = [(i, i % h + 1) for i in range(1, h + 1)]
    return Multigraph(h + 1, tuple(spokes + rim))


def banana(m: int) -> Multigraph:
    """Two vertices joined by ``m`` parallel edges."""
    if m < 1:
        raise GraphError("a banana graph needs at least one edge")
    return Multigraph(2, ((0, 1),) * m)


def cycle_graph(k: int) -> Multigraph:
    """Simple cycle on ``k`` vertices; edge ``i`` runs i-1 -> i mod k."""
    if k < 1:
        raise GraphError("cycle length must be positive")
    if k == 1:
        return Multigraph(1, ((0, 0),))
    return Multigraph(k, tuple((i, (i + 1) % k) for i in range(k)))


def complete_graph(k: int) -> Multigraph:
    return Multigraph(k, tuple(combinations(range(k), 2)))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


# -- homology -----------------------------------------------------------------


class _DisjointSet:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def components(g: Multigraph) -> list[list[int]]:
    ds = _DisjointSet(g.vertex_count)
    for u, v in g.edges:
        ds.union(u, v)
    groups: dict[int, list[int]] = {}
    for x in range(g.vertex_count):
        groups.setdefault(ds.find(x), []).append(x)
    return sorted(groups.values())


def betti(g: Multigraph) -> tuple[int, int]:
    """Return ``(h0, h1)``."""
    h0 = len(components(g))
    return h0, g.n - g.vertex_count + h0


def boundary_matrix(g: Multigraph) -> list[list[int]]:
    """|V| x |E| matrix: +1 at the source, -1 at the target, zero for loops."""
    rows = [[0] * g.n for _ in range(g.vertex_count)]
    for col, (u, v) in enumerate(g.edges):
        rows[u][col] += 1
        rows[v][col] -= 1
    return rows


def _require_connected(g: Multigraph) -> None:
    if betti(g)[0] != 1:
        raise NotConnectedError("graph is not connected")


# -- spanning trees -----------------------------------------------------------


def spanning_trees(g: Multigraph) -> Iterator[frozenset[int]]:
    """Yield every spanning tree, lexicographically by sorted label tuple."""
    _require_connected(g)
    need = g.vertex_count - 1
    candidates = [e for e in g.labels if not g.is_loop(e)]
    yield from _trees(g, candidates, 0, need, [], list(range(g.vertex_count)))


def _trees(g, candidates, start, need, chosen, comp):
    if need == 0:
        yield frozenset(chosen)
        return
    for pos in range(start, len(candidates) - need + 1):
        e = candidates[pos]
        u, v = g.edges[e - 1]
        cu, cv = comp[u], comp[v]
        if cu == cv:
            continue
        merged = [cu if c == cv else c for c in comp]
        chosen.append(e)
        yield from _trees(g, candidates, pos + 1, need - 1, chosen, merged)
        chosen.pop()


def _bareiss_det(a: list[list[int]]) -> int:
    a = [row[:] for row in a]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for i in range(k - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if a[r][i] != 0), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[k - 1][k - 1]


def count_spanning_trees(g: Multigraph) -> int:
    """Matrix-tree theorem: determinant of the reduced Laplacian."""
    _require_connected(g)
    k = g.vertex_count
    lap = [[0] * k for _ in range(k)]
    for u, v in g.edges:
        if u == v:
            continue
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return _bareiss_det([row[1:] for row in lap[1:]])


def is_spanning_tree(g: Multigraph, t) -> bool:
    t = frozenset(t)
    if len(t) != g.vertex_count - 1 or not t <= set(g.labels):
        return False
    ds = _DisjointSet(g.vertex_count)
    return all(ds.union(*g.edges[e - 1]) for e in sorted(t))


def first_spanning_tree(g: Multigraph) -> frozenset[int]:
    return next(spanning_trees(g))


# -- edge surgery -------------------------------------------------------------


def delete(g: Multigraph, e: int) -> Surgery:
    g._check_label(e)
    edges = g.edges[: e - 1] + g.edges[e:]
    relabel = {old: (old if old < e else old - 1) for old in g.labels if old != e}
    return Surgery(Multigraph(g.vertex_count, edges), relabel)


def contract(g: Multigraph, e: int) -> Surgery:
    """Merge the endpoints of ``e``; the larger vertex index disappears."""
    u, v = g.edge(e)
    if u == v:
        raise GraphError("loop contraction")
    keep, gone = min(u, v), max(u, v)

    def move(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = tuple((move(a), move(b)) for lab, (a, b) in enumerate(g.edges, 1) if lab != e)
    relabel = {old: (old if old < e else old - 1) for old in g.labels if old != e}
    return Surgery(Multigraph(g.vertex_count - 1, edges), relabel)


def subdivide(g: Multigraph, e: int) -> Surgery:
    """Split ``e = (u, v)`` into ``e: u -> w`` and ``n+1: w -> v``, w fresh."""
    u, v = g.edge(e)
    w = g.vertex_count
    edges = list(g.edges)
    edges[e - 1] = (u, w)
    edges.append((w, v))
    relabel = {old: old for old in g.labels}
    relabel[e] = (e, g.n + 1)
    return Surgery(Multigraph(g.vertex_count + 1, tuple(edges)), relabel)


# -- cycles -------------------------------------------------------------------


def _support(vec) -> frozenset[int]:
    return frozenset(i + 1 for i, c in enumerate(vec) if c)


def is_simple_cycle(g: Multigraph, support) -> bool:
    """Connected support in which every touched vertex has degree two."""
    support = frozenset(support)
    if not support:
        return False
    degree: dict[int, int] = {}
    ds = _DisjointSet(g.vertex_count)
    for e in support:
        u, v = g.edge(e)
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
        ds.union(u, v)
    if any(d != 2 for d in degree.values()):
        return False
    return len({ds.find(x) for x in degree}) == 1


def orient_cycle(g: Multigraph, support) -> tuple[int, ...]:
    """Signed vector of a simple cycle, +1 on its smallest label."""
    support = frozenset(support)
    if not is_simple_cycle(g, support):
        raise GraphError("edge set is not a simple cycle")
    vec = [0] * g.n
    start = min(support)
    vec[start - 1] = 1
    u, v = g.edges[start - 1]
    remaining = set(support) - {start}
    at = v
    while remaining:
        e = next(f for f in sorted(remaining) if at in g.edges[f - 1])
        a, b = g.edges[e - 1]
        if a == at:
            vec[e - 1], at = 1, b
        else:
            vec[e - 1], at = -1, a
        remaining.discard(e)
    assert at == u
    return tuple(vec)


def cycle_basis(g: Multigraph, t) -> CycleBasis:
    """Fundamental cycles of the spanning tree ``t``.

    One vector per non-tree edge ``e``, with coefficient +1 on ``e``, ordered
    by the label of ``e``.
    """
    t = frozenset(t)
    if not is_spanning_tree(g, t):
        raise GraphError("not a spanning tree")
    adjacency: dict[int, list[tuple[int, int]]] = {x: [] for x in range(g.vertex_count)}
    for e in t:
        a, b = g.edges[e - 1]
        adjacency[a].append((b, e))
        adjacency[b].append((a, e))

    vectors = []
    for e in g.labels:
        if e in t:
            continue
        u, v = g.edges[e - 1]
        vec = [0] * g.n
        vec[e - 1] = 1
        # tree path from v back to u
        for f, forward in _tree_path(g, adjacency, v, u):
            vec[f - 1] += 1 if forward else -1
        vectors.append(tuple(vec))
    return CycleBasis(tuple(vectors), "fundamental-from-tree")


def _tree_path(g, adjacency, src, dst):
    parent = {src: None}
    stack = [src]
    while stack:
        x = stack.pop()
        for y, e in adjacency[x]:
            if y not in parent:
                parent[y] = (x, e)
                stack.append(y)
    path = []
    x = dst
    while parent[x] is not None:
        prev, e = parent[x]
        path.append((e, g.edges[e - 1] == (prev, x)))
        x = prev
    path.reverse()
    return path


def simple_cycles(g: Multigraph, bound: int = 20) -> list[Cycle]:
    """All simple cycles, sorted by length and then by sorted labels.

    A cycle is found once, from its smallest label ``e = (u, v)``, as a
    vertex-simple path from ``v`` back to ``u`` over larger labels.
    """
    if g.n > bound:
        raise SearchBoundError(f"{g.n} edges exceeds the cycle search bound {bound}")
    incident: dict[int, list[int]] = {x: [] for x in range(g.vertex_count)}
    for e, (a, b) in enumerate(g.edges, 1):
        if a != b:
            incident[a].append(e)
            incident[b].append(e)

    found = []
    for e in g.labels:
        u, v = g.edges[e - 1]
        if u == v:
            found.append(frozenset([e]))
            continue

        def walk(at, visited, path):
            for f in incident[at]:
                if f <= e:
                    continue
                a, b = g.edges[f - 1]
                nxt = b if a == at else a
                if nxt == u:
                    found.append(frozenset([e, *path, f]))
                elif nxt not in visited:
                    visited.add(nxt)
                    path.append(f)
                    walk(nxt, visited, path)
                    path.pop()
                    visited.discard(nxt)

        walk(v, {u, v}, [])

    found.sort(key=lambda s: (len(s), sorted(s)))
    return [Cycle(s, orient_cycle(g, s)) for s in found]


def validate_cycle_basis(g: Multigraph, b: CycleBasis) -> None:
    """Raise ``GraphError`` unless ``b`` is a basis of simple cycles."""
    from .intlinalg import f2_rank, rank

    h1 = betti(g)[1]
    if len(b.vectors) != h1:
        raise GraphError(f"expected {h1} cycles, got {len(b.vectors)}")
    bd = boundary_matrix(g)
    for vec in b.vectors:
        if len(vec) != g.n:
            raise GraphError("cycle vector has wrong length")
        if any(sum(r[i] * vec[i] for i in range(g.n)) for r in bd):
            raise GraphError("vector is not a cycle")
        if not is_simple_cycle(g, _support(vec)) or any(abs(c) > 1 for c in vec):
            raise GraphError("vector is not a simple cycle")
    if rank(b.vectors) != h1:
        raise GraphError("cycles are linearly dependent over Q")
    if f2_rank([sum(1 << i for i, c in enumerate(v) if c % 2) for v in b.vectors]) != h1:
        raise GraphError("cycles are linearly dependent over F2")
    # coordinates against a fundamental basis are the entries on non-tree edges
    tree = first_spanning_tree(g)
    chords = [e - 1 for e in g.labels if e not in tree]
    if abs(_bareiss_det([[v[c] for c in chords] for v in b.vectors])) != 1:
        raise GraphError("cycles span a proper sublattice of H1(Z)")


# -- serialization ------------------------------------------------------------


def parse_graph(text: str) -> Multigraph:
    """Parse the line format (``u v`` per edge) or the JSON form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_json(json.loads(stripped))
    edges = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("#") and "vertices" in raw:
            # "# vertices: k" header keeps isolated vertices across round trips
            try:
                declared = int(raw.split(":", 1)[1])
            except (IndexError, ValueError):
                pass
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: vertex indices must be integers") from None
    used = max((max(e) for e in edges), default=-1) + 1
    count = used if declared is None else declared
    if count < used:
        raise GraphError("declared vertex count is smaller than the indices used")
    if any(min(e) < 0 for e in edges):
        raise GraphError("negative vertex index")
    return Multigraph(count, tuple(edges))


def format_graph(g: Multigraph) -> str:
    lines = [f"# vertices: {g.vertex_count}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Multigraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}


def graph_from_json(data: dict) -> Multigraph:
    try:
        return Multigraph(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
