"""Exhaustive corpus of small connected multigraphs, up to isomorphism.

Every connected multigraph with ``m`` edges arises from one with ``m - 1``
edges by adding an edge between existing vertices (a loop included) or a
pendant edge to a new vertex, so augmentation from the one-vertex graph
reaches all of them. Isomorphism classes are identified through a canonical
edge list: the lexicographic minimum over vertex relabellings that respect a
degree-based refinement.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .graph_core import Multigraph, banana, wheel

__all__ = ["canonical_form", "connected_multigraphs", "corpus", "named_extras"]


def _invariant(vcount, edges):
    deg = [0] * vcount
    loops = [0] * vcount
    for u, v in edges:
        if u == v:
            loops[u] += 1
            deg[u] += 2
        else:
            deg[u] += 1
            deg[v] += 1
    nbr = [[] for _ in range(vcount)]
    for u, v in edges:
        if u != v:
            nbr[u].append(deg[v])
            nbr[v].append(deg[u])
    return [(deg[x], loops[x], tuple(sorted(nbr[x]))) for x in range(vcount)]


def canonical_form(vcount: int, edges) -> tuple:
    """Canonical ``(vcount, sorted edges)`` of a multigraph."""
    inv = _invariant(vcount, edges)
    classes: dict = {}
    for x in range(vcount):
        classes.setdefault(inv[x], []).append(x)
    keys = sorted(classes)
    # vertices of the k-th class get the k-th block of new labels
    starts = []
    pos = 0
    for k in keys:
        starts.append(pos)
        pos += len(classes[k])
    best = None
    for choice in product(*(permutations(classes[k]) for k in keys)):
        relabel = {}
        for start, perm in zip(starts, choice):
            for offset, x in enumerate(perm):
                relabel[x] = start + offset
        form = tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return vcount, best if best is not None else ()


@lru_cache(maxsize=None)
def connected_multigraphs(max_edges: int) -> tuple[Multigraph, ...]:
    """All connected multigraphs with at most ``max_edges`` edges, loops allowed."""
    layer = {canonical_form(1, ())}
    found = [Multigraph(1, ())]
    for _ in range(max_edges):
        nxt = set()
        for vcount, edges in layer:
            for u in range(vcount):
                for v in range(u, vcount):
                    nxt.add(canonical_form(vcount, edges + ((u, v),)))
                nxt.add(canonical_form(vcount + 1, edges + ((u, vcount),)))
        layer = nxt
        found.extend(Multigraph(vc, e) for vc, e in sorted(nxt, key=lambda t: (len(t[1]), t)))
    return tuple(found)


def named_extras() -> dict[str, Multigraph]:
    out = {f"wheel{h}": wheel(h) for h in (3, 4, 5)}
    out.update({f"banana{m}": banana(m) for m in (2, 3, 4, 5)})
    return out


def corpus(max_edges: int = 6, extras: bool = True) -> list[tuple[str, Multigraph]]:
    """Named corpus: ``g<edges>_<index>`` for the exhaustive part, then extras."""
    out = []
    counters: dict[int, int] = {}
    for g in connected_multigraphs(max_edges):
        k = counters.get(g.n, 0)
        counters[g.n] = k + 1
        out.append((f"g{g.n}_{k}", g))
    if extras:
        out.extend(named_extras().items())
    return out
