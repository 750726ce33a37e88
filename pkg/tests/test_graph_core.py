import networkx as nx
import pytest
from helpers import to_networkx

from graphtorus.corpus import connected_multigraphs
from graphtorus.graph_core import (
    GraphError,
    Multigraph,
    NotConnectedError,
    SearchBoundError,
    banana,
    betti,
    boundary_matrix,
    complete_bipartite,
    complete_graph,
    contract,
    count_spanning_trees,
    cycle_basis,
    cycle_graph,
    delete,
    first_spanning_tree,
    format_graph,
    graph_from_json,
    graph_to_json,
    is_simple_cycle,
    is_spanning_tree,
    parse_graph,
    simple_cycles,
    spanning_trees,
    subdivide,
    validate_cycle_basis,
    wheel,
    CycleBasis,
)


def test_wheel_layout():
    g = wheel(3)
    assert g.vertex_count == 4 and g.n == 6
    assert g.edges[:3] == ((0, 1), (0, 2), (0, 3))
    assert g.edges[3:] == ((1, 2), (2, 3), (3, 1))
    assert betti(g) == (1, 3)


@pytest.mark.parametrize("h", [3, 4, 5, 6])
def test_wheel_betti(h):
    assert betti(wheel(h)) == (1, h)


def test_generators_reject_bad_sizes():
    with pytest.raises(GraphError):
        wheel(2)
    with pytest.raises(GraphError):
        banana(0)


def test_loop_and_banana_betti():
    assert betti(cycle_graph(1)) == (1, 1)
    assert betti(banana(4)) == (1, 3)
    assert betti(Multigraph(3, ((0, 1),))) == (2, 0)


def test_boundary_annihilates_cycles():
    g = wheel(4)
    bd = boundary_matrix(g)
    for c in simple_cycles(g):
        assert all(sum(r[i] * c.vector[i] for i in range(g.n)) == 0 for r in bd)


def test_spanning_tree_counts_wheel():
    assert len(list(spanning_trees(wheel(3)))) == 16
    assert count_spanning_trees(wheel(4)) == 45
    assert count_spanning_trees(wheel(5)) == 121


def test_spanning_trees_disconnected():
    with pytest.raises(NotConnectedError):
        list(spanning_trees(Multigraph(3, ((0, 1),))))


def test_spanning_trees_against_networkx_counts():
    # Kirchhoff's theorem in networkx on the multigraph Laplacian
    for g in connected_multigraphs(5):
        if g.vertex_count == 1:
            assert list(spanning_trees(g)) == [frozenset()]
            continue
        expected = round(nx.number_of_spanning_trees(to_networkx(g)))
        trees = list(spanning_trees(g))
        assert len(trees) == expected == count_spanning_trees(g)
        assert len(set(trees)) == len(trees)
        assert all(is_spanning_tree(g, t) for t in trees)


def test_trees_lexicographic():
    trees = [tuple(sorted(t)) for t in spanning_trees(wheel(3))]
    assert trees == sorted(trees)


def test_delete_contract_relabel():
    g = wheel(3)
    d = delete(g, 2)
    assert d.graph.n == 5 and d.relabel[3] == 2 and d.relabel[1] == 1
    c = contract(g, 1)
    assert c.graph.vertex_count == 3 and c.graph.n == 5
    with pytest.raises(GraphError):
        contract(cycle_graph(1), 1)


def test_subdivide():
    g = banana(2)
    s = subdivide(g, 1)
    assert s.graph.n == 3 and s.graph.vertex_count == 3
    assert s.relabel[1] == (1, 3)
    assert betti(s.graph) == betti(g)


@pytest.mark.parametrize("h", [3, 4, 5])
def test_spoke_tree_basis_is_faces(h):
    g = wheel(h)
    b = cycle_basis(g, frozenset(range(1, h + 1)))
    assert [len(s) for s in b.supports()] == [3] * h
    validate_cycle_basis(g, b)


def test_cycle_basis_rejects_non_tree():
    with pytest.raises(GraphError):
        cycle_basis(wheel(3), frozenset({1, 2}))


def test_simple_cycles_counts():
    # K4 has 7 cycles, K5 has 37, K33 has 15
    assert len(simple_cycles(complete_graph(4))) == 7
    assert len(simple_cycles(complete_graph(5))) == 37
    assert len(simple_cycles(complete_bipartite(3, 3))) == 15
    assert len(simple_cycles(banana(4))) == 6


def test_simple_cycles_against_networkx():
    for g in connected_multigraphs(5):
        ours = {c.support for c in simple_cycles(g)}
        assert all(is_simple_cycle(g, s) for s in ours)
        # networkx counts cycles of the underlying simple graph only
        simple = nx.Graph(to_networkx(g))
        simple.remove_edges_from(nx.selfloop_edges(simple))
        theirs = len(list(nx.simple_cycles(simple)))
        vertex_sets = {frozenset(v for e in s for v in g.edge(e)) for s in ours if len(s) >= 3}
        assert len(vertex_sets) <= theirs


def test_simple_cycles_bound():
    with pytest.raises(SearchBoundError):
        simple_cycles(complete_graph(7), bound=20)


def test_validate_rejects_bad_bases():
    g = wheel(3)
    good = cycle_basis(g, first_spanning_tree(g))
    with pytest.raises(GraphError):
        validate_cycle_basis(g, CycleBasis(good.vectors[:2]))
    doubled = (tuple(2 * x for x in good.vectors[0]),) + good.vectors[1:]
    with pytest.raises(GraphError):
        validate_cycle_basis(g, CycleBasis(doubled))


def test_validate_rejects_rational_only_basis():
    # the three 4-cycles of K4 span H1 over Q but only an index-2 sublattice
    g = wheel(3)
    squares = [c.vector for c in simple_cycles(g) if len(c.support) == 4]
    assert len(squares) == 3
    with pytest.raises(GraphError):
        validate_cycle_basis(g, CycleBasis(tuple(squares)))


def test_validate_accepts_outer_face_basis():
    g = wheel(3)
    cycles = {c.support: c.vector for c in simple_cycles(g)}
    chosen = [cycles[frozenset({1, 2, 4})], cycles[frozenset({2, 3, 5})], cycles[frozenset({4, 5, 6})]]
    validate_cycle_basis(g, CycleBasis(tuple(chosen)))


def test_serialization_round_trip():
    for g in [wheel(3), banana(4), cycle_graph(1), Multigraph(3, ((0, 1),))]:
        assert parse_graph(format_graph(g)) == g
        assert graph_from_json(graph_to_json(g)) == g


def test_parse_comments_and_errors():
    g = parse_graph("# a triangle\n0 1\n1 2  # rim\n2 0\n")
    assert g.n == 3 and g.vertex_count == 3
    with pytest.raises(GraphError):
        parse_graph("0 1 2\n")
    with pytest.raises(GraphError):
        parse_graph("a b\n")
    with pytest.raises(GraphError):
        parse_graph('{"edges": []}')
