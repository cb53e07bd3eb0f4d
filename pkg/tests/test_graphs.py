import pytest

from spanembed.errors import InvalidArgumentError
from spanembed.graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    format_graph,
    parse_graph,
    path_graph,
)


def test_basic_invariants():
    g = Graph(4, [(0, 1), (1, 0), (2, 3)])
    assert g.num_edges() == 2
    assert g.has_edge(1, 0)
    assert g.degrees() == [1, 1, 1, 1]


def test_rejects_self_loops_and_bad_range():
    with pytest.raises(InvalidArgumentError):
        Graph(3, [(1, 1)])
    with pytest.raises(InvalidArgumentError):
        Graph(3, [(0, 3)])


def test_components_and_bfs():
    g = disjoint_union(cycle_graph(3), path_graph(2))
    assert g.connected_components() == [[0, 1, 2], [3, 4]]
    d = g.bfs_distances(0)
    assert d[1] == d[2] == 1 and d[3] == -1


def test_complement_of_cycle():
    c5 = cycle_graph(5)
    comp = c5.complement()
    assert comp.num_edges() == 10 - 5
    assert not (set(comp.edges) & set(c5.edges))


def test_induced_relabels():
    g = complete_bipartite_graph(2, 3)
    sub = g.induced([0, 2, 3])
    assert sub.n == 3 and sub.num_edges() == 2


def test_text_roundtrip_sorted_and_comments():
    g = Graph(5, [(3, 1), (0, 4), (2, 0)])
    text = format_graph(g)
    lines = text.strip().splitlines()
    assert lines[0] == "n 5"
    assert lines[1:] == ["0 2", "0 4", "1 3"]
    again = parse_graph("# header comment\n" + text + "# trailing\n")
    assert again == g


def test_parse_errors():
    with pytest.raises(InvalidArgumentError):
        parse_graph("0 1\n")
    with pytest.raises(InvalidArgumentError):
        parse_graph("n 3\n0 1 2\n")


def test_adjacency_matrix_matches_edges():
    g = complete_graph(4)
    m = g.adjacency_matrix()
    assert m.sum() == 12 and not m.diagonal().any()
