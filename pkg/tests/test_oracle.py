import networkx as nx
import pytest
import sympy

from src.errors import GraphTooLarge, LoopEdge, NotACactusOfCycles, VerificationMismatch
from src.formulas import factored_to_sympy, tutte_factored
from src.formulas.tutte import X, Y
from src.oracle import (
    DistanceTable,
    bfs_distances,
    chromatic_oracle,
    diameter_oracle,
    edge_contribution_oracle,
    pm_oracle,
    spanning_trees_oracle,
    szeged_class_sums,
    szeged_oracle,
    tutte_block_oracle,
    tutte_dc_oracle,
    wiener_oracle,
)
from src.schreier import SchreierEdge, SchreierMultigraph, to_multigraph
from src.tree_core import path_tree, star_tree


def two_triangles():
    """Two triangles sharing an edge: one block that is not a cycle."""
    edges = [(1, 2), (2, 3), (3, 1), (2, 4), (4, 3)]
    return SchreierMultigraph(
        n=1, k=4, labels=(1,), generator_edges=(None,),
        vertices=tuple((v,) for v in range(1, 5)),
        edges=tuple(SchreierEdge((u,), (v,), 1) for u, v in edges),
    )


# ----- distances -----

def test_distance_table(gamma_p3_2):
    table = DistanceTable.build(gamma_p3_2)
    assert table.matrix.shape == (9, 9)
    assert table.distance((1, 3), (3, 1)) == 6
    assert table.distance((1, 1), (1, 1)) == 0
    assert table.distance((1, 1), (1, 2)) == 2


def test_bfs_agrees_with_table(gamma_p3_2):
    table = DistanceTable.build(gamma_p3_2)
    for source in gamma_p3_2.vertices:
        assert bfs_distances(gamma_p3_2, source) == {
            v: table.distance(source, v) for v in gamma_p3_2.vertices
        }


def test_disconnected_graph_has_no_table():
    graph = SchreierMultigraph(
        n=1, k=3, labels=(1,), generator_edges=(None,),
        vertices=((1,), (2,), (3,)),
        edges=(SchreierEdge((1,), (2,), 1), SchreierEdge((3,), (3,), 1)),
    )
    with pytest.raises(ValueError):
        DistanceTable.build(graph)


def test_distance_indices(gamma_p3_2):
    table = DistanceTable.build(gamma_p3_2)
    assert diameter_oracle(gamma_p3_2, table) == 6
    assert wiener_oracle(gamma_p3_2, table) == 88
    assert szeged_oracle(gamma_p3_2, table) == 176


def test_level_one_distances(gamma_p3_1):
    assert diameter_oracle(gamma_p3_1) == 2
    assert wiener_oracle(gamma_p3_1) == 4
    assert szeged_oracle(gamma_p3_1) == 8


def test_binary_path_gives_a_cycle(build_gamma):
    graph = build_gamma(path_tree(2), 3)
    assert diameter_oracle(graph) == 4
    assert wiener_oracle(graph) == 64


def test_edge_contributions(gamma_p3_2):
    assert edge_contribution_oracle(gamma_p3_2, SchreierEdge((1, 1), (2, 2), 1)) == (3, 6)
    assert edge_contribution_oracle(gamma_p3_2, SchreierEdge((1, 3), (2, 3), 1)) == (1, 8)
    with pytest.raises(LoopEdge):
        edge_contribution_oracle(gamma_p3_2, SchreierEdge((3, 1), (3, 1), 1))


def test_szeged_class_sums(gamma_p3_2):
    assert szeged_class_sums(gamma_p3_2) == {"A": 72, "B": 72, "C": 0, "D": 32}


# ----- perfect matchings -----

def test_pm_level_one_path(build_gamma):
    found = pm_oracle(build_gamma(path_tree(4), 1))
    assert found.count == 4
    assert found.label_histogram == {1: 1, 3: 1}


def test_pm_level_two_path(build_gamma):
    found = pm_oracle(build_gamma(path_tree(4), 2))
    assert found.count == 64
    assert found.label_histogram == {1: 4, 3: 4}


def test_pm_binary_cycle(build_gamma):
    found = pm_oracle(build_gamma(path_tree(2), 3))
    assert found.count == 2
    assert found.label_histogram == {1: 4}


def test_pm_odd_graph_has_none(gamma_p3_2):
    found = pm_oracle(gamma_p3_2)
    assert found.count == 0
    assert found.label_histogram is None


def test_pm_star_has_none(build_gamma):
    assert pm_oracle(build_gamma(star_tree(4), 1)).count == 0


def test_pm_size_guard(gamma_p3_2):
    with pytest.raises(GraphTooLarge):
        pm_oracle(gamma_p3_2, max_vertices=8)


def test_pm_with_uneven_label_counts_is_rejected():
    # one matching uses label 1 twice, the other label 2 twice
    edges = [((1,), (2,), 1), ((2,), (3,), 2), ((3,), (4,), 1), ((4,), (1,), 2)]
    graph = SchreierMultigraph(
        n=1, k=4, labels=(1, 2), generator_edges=(None, None),
        vertices=tuple((v,) for v in range(1, 5)),
        edges=tuple(SchreierEdge(u, v, label) for u, v, label in edges),
    )
    with pytest.raises(VerificationMismatch):
        pm_oracle(graph)


# ----- Tutte polynomial -----

def test_dc_single_loop():
    graph = nx.MultiGraph()
    graph.add_edge(1, 1)
    assert sympy.expand(tutte_dc_oracle(graph) - Y) == 0


def test_dc_parallel_pair():
    graph = nx.MultiGraph()
    graph.add_edge(1, 2)
    graph.add_edge(1, 2)
    assert sympy.expand(tutte_dc_oracle(graph) - (X + Y)) == 0


def test_dc_triangle_and_bridge():
    graph = nx.MultiGraph([(1, 2), (2, 3), (3, 1), (3, 4)])
    assert sympy.expand(tutte_dc_oracle(graph) - X * (X ** 2 + X + Y)) == 0


@pytest.mark.parametrize("tree, n", [(path_tree(3), 1), (path_tree(2), 2), (star_tree(4), 1)])
def test_dc_matches_factored_form(build_gamma, tree, n):
    dc = tutte_dc_oracle(to_multigraph(build_gamma(tree, n)))
    assert sympy.expand(dc - factored_to_sympy(tutte_factored(tree.k, n))) == 0


def test_dc_size_guard(gamma_p3_2):
    with pytest.raises(GraphTooLarge):
        tutte_dc_oracle(to_multigraph(gamma_p3_2), max_edges=10)


def test_block_oracle(gamma_p3_2, build_gamma):
    assert tutte_block_oracle(gamma_p3_2) == tutte_factored(3, 2)
    assert tutte_block_oracle(build_gamma(star_tree(4), 2)) == tutte_factored(4, 2)


def test_block_oracle_rejects_non_cactus():
    with pytest.raises(NotACactusOfCycles):
        tutte_block_oracle(two_triangles())


# ----- spanning trees and colourings -----

def test_spanning_trees(gamma_p3_2, build_gamma):
    assert spanning_trees_oracle(gamma_p3_2) == 64
    assert spanning_trees_oracle(build_gamma(path_tree(2), 2)) == 4
    assert spanning_trees_oracle(build_gamma(star_tree(4), 1)) == 8


def test_spanning_trees_of_two_triangles():
    assert spanning_trees_oracle(two_triangles()) == 8


def test_spanning_trees_size_guard(gamma_p3_2):
    with pytest.raises(GraphTooLarge):
        spanning_trees_oracle(gamma_p3_2, max_vertices=4)


@pytest.mark.parametrize("lam, expected", [(0, 0), (1, 0), (2, 2), (3, 12), (4, 36)])
def test_chromatic_level_one(gamma_p3_1, lam, expected):
    assert chromatic_oracle(gamma_p3_1, lam) == expected


def test_chromatic_level_two(gamma_p3_2):
    assert chromatic_oracle(gamma_p3_2, 2) == 2
    assert chromatic_oracle(gamma_p3_2, 3) == 432


def test_chromatic_of_two_triangles():
    # lam (lam-1) (lam-2)^2
    assert chromatic_oracle(two_triangles(), 3) == 6
    assert chromatic_oracle(two_triangles(), 4) == 48


def test_chromatic_size_guard(gamma_p3_2):
    with pytest.raises(GraphTooLarge):
        chromatic_oracle(gamma_p3_2, 5)
    with pytest.raises(GraphTooLarge):
        chromatic_oracle(gamma_p3_2, 3, max_vertices=8)
