import pytest

from virlab.errors import CoverageError, NotBaseProductError, OverlapError, SizeError, VertexRangeError
from virlab.graphs import (
    Edge,
    TwoColorGraph,
    canonical_form,
    canonical_two_color,
    edges_to_mask,
    is_biconnected,
    is_complete,
    is_connected,
    is_connected_mask,
    labeled_graph_count,
    make_two_color_graph,
    mask_to_edges,
    n1_complexity,
    pair_list,
)


def test_edge_is_normalized():
    assert Edge(3, 1) == Edge(1, 3)
    assert Edge(3, 1).as_list() == [1, 3]


@pytest.mark.parametrize("pair", [(2, 2), (0, 1)])
def test_edge_rejects_loops_and_zero(pair):
    with pytest.raises(VertexRangeError):
        Edge(*pair)


def test_make_graph_sorts_and_dedupes():
    g = make_two_color_graph(3, [(2, 1), (1, 2), (3, 1)], [(3, 2)])
    assert g.mayer_edges == (Edge(1, 2), Edge(1, 3))
    assert g.boltzmann_edges == (Edge(2, 3),)
    assert g.edge_count == 3


def test_make_graph_rejects_overlap():
    with pytest.raises(OverlapError):
        make_two_color_graph(3, [(1, 2), (2, 3)], [(2, 1)])


def test_make_graph_rejects_out_of_range_vertex():
    with pytest.raises(VertexRangeError):
        make_two_color_graph(3, [(1, 2), (2, 4)])


def test_make_graph_rejects_uncovered_vertex():
    with pytest.raises(CoverageError):
        make_two_color_graph(4, [(1, 2), (2, 3)])


def test_json_round_trip():
    g = make_two_color_graph(4, [(1, 2), (1, 3), (3, 4)], [(2, 3)])
    assert TwoColorGraph.from_json(g.to_json()) == g


def test_connectivity_modes():
    g = make_two_color_graph(3, [(1, 2)], [(2, 3)])
    assert not is_connected(g, "mayer-only")
    assert is_connected(g, "both")


def test_biconnectivity():
    assert is_biconnected([(1, 2)], 2)
    assert is_biconnected([(1, 2), (2, 3), (1, 3)], 3)
    assert not is_biconnected([(1, 2), (2, 3)], 3)
    # two triangles sharing vertex 3
    assert not is_biconnected([(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)], 5)
    assert is_biconnected([(1, 2), (2, 3), (3, 4), (1, 4)], 4)


def test_completeness():
    star = make_two_color_graph(3, [(1, 2), (1, 3)], [(2, 3)])
    path = make_two_color_graph(3, [(1, 2), (2, 3)])
    assert is_complete(star)
    assert not is_complete(path)


def test_n1_complexity():
    star = make_two_color_graph(3, [(1, 2), (1, 3)], [(2, 3)])
    triangle = make_two_color_graph(3, [(1, 2), (2, 3), (1, 3)])
    path = make_two_color_graph(3, [(1, 2), (2, 3)])
    assert n1_complexity(star) == 1
    assert n1_complexity(triangle) == 1
    assert n1_complexity(path) == 0


def test_n1_complexity_requires_connected_mayer_part():
    with pytest.raises(NotBaseProductError):
        n1_complexity(make_two_color_graph(3, [(1, 2)], [(2, 3)]))


def test_mask_round_trip_and_order():
    assert pair_list(3) == ((1, 2), (1, 3), (2, 3))
    edges = (Edge(1, 3), Edge(2, 3))
    assert edges_to_mask(edges, 3) == 0b110
    assert mask_to_edges(0b110, 3) == edges


def test_connected_graph_counts():
    # connected labeled graphs on 1..4 vertices
    expected = {2: 1, 3: 4, 4: 38}
    for n, count in expected.items():
        total = sum(1 for m in range(labeled_graph_count(n)) if is_connected_mask(m, n))
        assert total == count


def test_canonical_form_is_invariant_under_relabeling():
    path_a = canonical_form([(1, 2), (2, 3), (3, 4)], 4)
    path_b = canonical_form([(3, 1), (1, 4), (4, 2)], 4)
    star = canonical_form([(1, 2), (1, 3), (1, 4)], 4)
    assert path_a == path_b
    assert path_a != star


def test_canonical_two_color_respects_colors():
    a = make_two_color_graph(3, [(1, 2), (1, 3)], [(2, 3)])
    b = make_two_color_graph(3, [(2, 1), (2, 3)], [(1, 3)])
    c = make_two_color_graph(3, [(1, 2), (1, 3), (2, 3)])
    assert canonical_two_color(a) == canonical_two_color(b)
    assert canonical_two_color(a) != canonical_two_color(c)


def test_canonical_form_size_cap():
    with pytest.raises(SizeError):
        canonical_form([(1, 2)], 9)


def test_bridge_through_boltzmann_edge():
    g = make_two_color_graph(4, [(1, 2), (3, 4)], [(2, 3)])
    assert not is_connected(g, "mayer-only")
    assert is_connected(g, "both")


def test_k4_cases():
    k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert is_biconnected(k4[:-1], 4)
    assert n1_complexity(make_two_color_graph(4, k4)) == 3
