import pytest

from src.analyzer import analyze_structure, block_cycle_lengths
from src.errors import NotACactusOfCycles
from src.schreier import SchreierEdge, SchreierMultigraph
from src.tree_core import path_tree, spider_tree, star_tree


def hand_built(edges, k=4):
    """One-letter words 1..k joined by the given (u, v) pairs under a single label."""
    return SchreierMultigraph(
        n=1,
        k=k,
        labels=(1,),
        generator_edges=(None,),
        vertices=tuple((v,) for v in range(1, k + 1)),
        edges=tuple(SchreierEdge((u,), (v,), 1) for u, v in edges),
    )


def test_block_lengths(gamma_p3_2):
    assert block_cycle_lengths(gamma_p3_2) == [2, 2, 4, 4]


def test_analysis_of_a_tree_graph(gamma_p3_2):
    analysis = analyze_structure(gamma_p3_2)
    assert analysis.ok
    assert analysis.failures() == []
    assert analysis.vertex_count == analysis.expected_vertices == 9
    assert analysis.edge_count == analysis.expected_edges == 18
    assert analysis.loop_count == 6
    assert analysis.block_lengths == {2: 2, 4: 2}


@pytest.mark.parametrize("tree, n", [
    (path_tree(2), 4),
    (path_tree(4), 3),
    (star_tree(5), 2),
    (spider_tree((2, 2, 1)), 2),
])
def test_structure_holds_across_trees(build_gamma, tree, n):
    analysis = analyze_structure(build_gamma(tree, n))
    assert analysis.ok, analysis.failures()
    assert analysis.is_bipartite
    assert max(analysis.block_lengths) == 2 ** n


def test_chord_is_not_a_cactus():
    graph = hand_built([(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
    with pytest.raises(NotACactusOfCycles):
        block_cycle_lengths(graph)


def test_bridge_is_not_a_cactus():
    graph = hand_built([(1, 2), (2, 1), (2, 3)], k=3)
    with pytest.raises(NotACactusOfCycles):
        block_cycle_lengths(graph)


def test_triple_edge_is_not_a_cactus():
    graph = hand_built([(1, 2), (2, 1), (1, 2)], k=2)
    with pytest.raises(NotACactusOfCycles):
        block_cycle_lengths(graph)


def test_plain_cycle_is_a_cactus():
    graph = hand_built([(1, 2), (2, 3), (3, 4), (4, 1)])
    assert block_cycle_lengths(graph) == [4]
