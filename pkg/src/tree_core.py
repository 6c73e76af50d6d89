"""
Seed Tree Module
Represents, validates and measures the oriented tree G the automaton is built from.

Edges are addressed by their label: the 1-based position in the input order.
Label j is the generator e_j of the automaton built from the tree.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
import logging

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import InvalidEdge, MalformedInput, NotATree

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class OrientedTree(BaseModel):
    """
    A tree on the vertices 1..k with a chosen orientation (source, target) per edge.

    Construction validates the structure and raises NotATree for anything that is
    not a tree with at least two vertices.
    """

    model_config = ConfigDict(frozen=True)

    k: int
    edges: Tuple[Tuple[int, int], ...]

    @model_validator(mode="after")
    def check_tree_structure(self) -> "OrientedTree":
        if self.k < 2:
            raise NotATree(f"a tree needs at least 2 vertices, got k={self.k}")

        seen = set()
        for s, t in self.edges:
            if not (1 <= s <= self.k and 1 <= t <= self.k):
                raise NotATree(f"edge ({s}, {t}) uses a vertex outside 1..{self.k}")
            if s == t:
                raise NotATree(f"self-loop at vertex {s}")
            key = frozenset((s, t))
            if key in seen:
                raise NotATree(f"repeated edge ({s}, {t})")
            seen.add(key)

        if len(self.edges) != self.k - 1:
            raise NotATree(
                f"{len(self.edges)} edges on {self.k} vertices "
                f"(a tree has exactly {self.k - 1})"
            )

        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.k + 1))
        graph.add_edges_from(self.edges)
        if not nx.is_connected(graph):
            raise NotATree("edge list is disconnected (or contains a cycle)")
        return self

    @property
    def labels(self) -> range:
        return range(1, len(self.edges) + 1)

    @property
    def vertices(self) -> range:
        return range(1, self.k + 1)

    def edge(self, label: int) -> Edge:
        """Oriented edge (s, t) carrying the given label."""
        if not isinstance(label, int) or not 1 <= label <= len(self.edges):
            raise InvalidEdge(f"edge label {label!r} not in 1..{len(self.edges)}")
        return self.edges[label - 1]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for label, (s, t) in zip(self.labels, self.edges):
            graph.add_edge(s, t, label=label)
        return graph

    def to_text(self) -> str:
        return "".join(f"{s} {t}\n" for s, t in self.edges)


@dataclass(frozen=True)
class EdgeSplit:
    """Vertex counts on both sides of a tree edge (s, t)."""
    n_st: int  # strictly closer to s
    n_ts: int  # strictly closer to t

    @property
    def product(self) -> int:
        return self.n_st * self.n_ts


# ============================================================================
# Parsing and construction
# ============================================================================

def parse_tree(text: str) -> OrientedTree:
    """
    Parse edge-list text ("u v" per line, '#' comments allowed).

    The vertex count is the largest label; orientation is the listed order.

    Raises:
        MalformedInput: a line is not two positive integers
        NotATree: the edges do not form a tree on 1..k, k >= 2
    """
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedInput(f"line {lineno}: vertex ids must be integers, got {raw!r}")
        if u < 1 or v < 1:
            raise MalformedInput(f"line {lineno}: vertex ids must be positive, got {raw!r}")
        edges.append((u, v))

    if not edges:
        raise NotATree("no edges given (k must be at least 2)")

    k = max(max(e) for e in edges)
    tree = OrientedTree(k=k, edges=tuple(edges))
    logger.debug(f"Parsed tree with k={tree.k}, edges={list(tree.edges)}")
    return tree


def path_tree(k: int) -> OrientedTree:
    """P_k oriented 1->2->...->k."""
    return OrientedTree(k=k, edges=tuple((i, i + 1) for i in range(1, k)))


def star_tree(k: int) -> OrientedTree:
    """S_k centred at vertex 1."""
    return OrientedTree(k=k, edges=tuple((1, i) for i in range(2, k + 1)))


def spider_tree(legs: Iterable[int]) -> OrientedTree:
    """Spider with centre 1 and legs of the given lengths, e.g. (2, 2, 1)."""
    edges: List[Edge] = []
    nxt = 2
    for length in legs:
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return OrientedTree(k=nxt - 1, edges=tuple(edges))


def reorient(tree: OrientedTree, labels: Iterable[int]) -> OrientedTree:
    """Copy of the tree with the orientation of the given edges reversed."""
    flip = set(labels)
    for label in flip:
        tree.edge(label)
    edges = tuple(
        (t, s) if label in flip else (s, t)
        for label, (s, t) in zip(tree.labels, tree.edges)
    )
    return OrientedTree(k=tree.k, edges=edges)


# ============================================================================
# Measures
# ============================================================================

def tree_distances(tree: OrientedTree) -> Dict[int, Dict[int, int]]:
    return dict(nx.all_pairs_shortest_path_length(tree.to_networkx()))


def tree_diameter(tree: OrientedTree) -> int:
    return nx.diameter(tree.to_networkx())


def tree_wiener(tree: OrientedTree) -> int:
    """Sum of distances over unordered vertex pairs."""
    dist = tree_distances(tree)
    return sum(dist[u][v] for u, v in combinations(tree.vertices, 2))


def split_sides(tree: OrientedTree, label: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Vertices closer to s and vertices closer to t, for edge label (s, t)."""
    s, t = tree.edge(label)
    graph = tree.to_networkx()
    graph.remove_edge(s, t)
    side_s = frozenset(nx.node_connected_component(graph, s))
    side_t = frozenset(nx.node_connected_component(graph, t))
    return side_s, side_t


def split_counts(tree: OrientedTree, label: int) -> EdgeSplit:
    side_s, side_t = split_sides(tree, label)
    return EdgeSplit(n_st=len(side_s), n_ts=len(side_t))


def tree_szeged(tree: OrientedTree) -> int:
    return sum(split_counts(tree, label).product for label in tree.labels)


def tree_perfect_matching(tree: OrientedTree) -> Optional[FrozenSet[int]]:
    """
    The unique perfect matching of the tree as a set of edge labels, or None.

    A leaf can only be covered by its single edge, so repeatedly matching the
    smallest leaf with its neighbour either covers everything or gets stuck.
    """
    graph = tree.to_networkx()
    matched = set()
    while graph.number_of_nodes():
        degrees = dict(graph.degree())
        if any(d == 0 for d in degrees.values()):
            return None
        leaf = min(v for v, d in degrees.items() if d == 1)
        partner = next(iter(graph[leaf]))
        matched.add(graph.edges[leaf, partner]["label"])
        graph.remove_nodes_from((leaf, partner))

    logger.debug(f"Tree perfect matching: {sorted(matched)}")
    return frozenset(matched)
