"""
Brute-Force Oracle Module
Independent computations on explicit graphs used as ground truth for every closed form.

Distances come from one all-sources BFS (scipy csgraph) shared by the diameter,
Wiener, Szeged and per-edge oracles. Counting oracles are exhaustive and guarded
by vertex or edge limits.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple
import logging

import networkx as nx
import numpy as np
import sympy
from scipy.sparse import coo_array
from scipy.sparse.csgraph import shortest_path
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from src.analyzer import block_cycle_lengths
from src.errors import GraphTooLarge, LoopEdge, VerificationMismatch
from src.formulas.tutte import X, Y, FactoredTutte
from src.mealy import Word
from src.schreier import (
    ECycle,
    SchreierEdge,
    SchreierMultigraph,
    classify_edges,
    to_simple_graph,
)

logger = logging.getLogger(__name__)

DEFAULT_PM_MAX_VERTICES = 64
DEFAULT_TUTTE_MAX_EDGES = 20
DEFAULT_SPANNING_TREE_MAX_VERTICES = 512
DEFAULT_CHROMATIC_MAX_VERTICES = 16
DEFAULT_CHROMATIC_MAX_LAMBDA = 4


# ============================================================================
# Distances
# ============================================================================

def bfs_distances(graph: SchreierMultigraph, source: Word) -> Dict[Word, int]:
    """Single-source unweighted distances; loops and parallel edges change nothing."""
    return dict(nx.single_source_shortest_path_length(to_simple_graph(graph), source))


@dataclass
class DistanceTable:
    """All-pairs distance matrix indexed like graph.vertices."""
    graph: SchreierMultigraph
    matrix: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, graph: SchreierMultigraph) -> "DistanceTable":
        size = len(graph.vertices)
        rows, cols = [], []
        for e in graph.edges:
            if not e.is_loop:
                rows.append(graph.index[e.u])
                cols.append(graph.index[e.v])
        adjacency = coo_array(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size)
        ).tocsr()
        dist = shortest_path(adjacency, method="D", directed=False, unweighted=True)
        if np.isinf(dist).any():
            raise ValueError("distance oracles need a connected graph")
        logger.debug(f"Distance table for {size} vertices")
        return cls(graph=graph, matrix=dist.astype(np.int32))

    def distance(self, u: Word, v: Word) -> int:
        return int(self.matrix[self.graph.index[u], self.graph.index[v]])

    def row(self, u: Word) -> np.ndarray:
        return self.matrix[self.graph.index[u]]


def _table(graph: SchreierMultigraph, table: Optional[DistanceTable]) -> DistanceTable:
    return table if table is not None else DistanceTable.build(graph)


def diameter_oracle(graph: SchreierMultigraph, table: Optional[DistanceTable] = None) -> int:
    return int(_table(graph, table).matrix.max())


def wiener_oracle(graph: SchreierMultigraph, table: Optional[DistanceTable] = None) -> int:
    """Sum of d(u, v) over unordered pairs."""
    return int(_table(graph, table).matrix.sum(dtype=np.int64)) // 2


def edge_contribution_oracle(
    graph: SchreierMultigraph,
    edge: SchreierEdge,
    table: Optional[DistanceTable] = None,
) -> Tuple[int, int]:
    """
    (n(u,v), n(v,u)): vertices strictly closer to u, resp. v, endpoints included.

    Raises:
        LoopEdge: u == v
    """
    if edge.is_loop:
        raise LoopEdge(f"loop at {edge.u} has no Szeged contribution")
    table = _table(graph, table)
    du, dv = table.row(edge.u), table.row(edge.v)
    return int(np.count_nonzero(du < dv)), int(np.count_nonzero(dv < du))


def szeged_oracle(graph: SchreierMultigraph, table: Optional[DistanceTable] = None) -> int:
    """Sum of n(u,v) n(v,u) over non-loop edge instances (parallel edges counted separately)."""
    table = _table(graph, table)
    total = 0
    for e in graph.non_loop_edges:
        n_uv, n_vu = edge_contribution_oracle(graph, e, table)
        total += n_uv * n_vu
    return total


def szeged_class_sums(
    graph: SchreierMultigraph,
    cycles: Optional[Sequence[ECycle]] = None,
    table: Optional[DistanceTable] = None,
) -> Dict[str, int]:
    """Oracle-side Szeged sums per edge class A, B, C, D."""
    table = _table(graph, table)
    sums = {"A": 0, "B": 0, "C": 0, "D": 0}
    for classified in classify_edges(graph, cycles):
        n_uv, n_vu = edge_contribution_oracle(graph, classified.edge, table)
        sums[classified.szeged_class] += n_uv * n_vu
    return sums


# ============================================================================
# Perfect matchings
# ============================================================================

@dataclass(frozen=True)
class MatchingCount:
    """Number of perfect matchings and the per-label edge count every one of them has."""
    count: int
    label_histogram: Optional[Dict[int, int]]


def pm_oracle(
    graph: SchreierMultigraph,
    max_vertices: int = DEFAULT_PM_MAX_VERTICES,
) -> MatchingCount:
    """
    Count perfect matchings of the loopless multigraph exhaustively.

    Branches on the smallest uncovered vertex, memoised on the uncovered set and
    split over connected components of what is left.

    Raises:
        GraphTooLarge: more than max_vertices vertices
        VerificationMismatch: two perfect matchings use a label a different number of times
    """
    size = len(graph.vertices)
    if size > max_vertices:
        raise GraphTooLarge(f"perfect matching enumeration limited to {max_vertices} vertices, got {size}")

    labels = graph.labels
    position = {label: j for j, label in enumerate(labels)}
    incident: List[List[Tuple[int, int]]] = [[] for _ in range(size)]
    for e in graph.non_loop_edges:
        a, b = graph.index[e.u], graph.index[e.v]
        incident[a].append((b, position[e.label]))
        incident[b].append((a, position[e.label]))
    zero = (0,) * len(labels)

    def components(uncovered: FrozenSet[int]) -> List[FrozenSet[int]]:
        left = set(uncovered)
        parts = []
        while left:
            start = min(left)
            part = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w, _ in incident[v]:
                    if w in left and w not in part:
                        part.add(w)
                        queue.append(w)
            left -= part
            parts.append(frozenset(part))
        return parts

    @lru_cache(maxsize=None)
    def matchings(uncovered: FrozenSet[int]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        """Histogram -> number of perfect matchings of the induced subgraph."""
        if not uncovered:
            return ((zero, 1),)
        parts = components(uncovered)
        if any(len(part) % 2 for part in parts):
            return ()
        if len(parts) > 1:
            combined: Counter = Counter({zero: 1})
            for part in parts:
                step: Counter = Counter()
                for hist, count in matchings(part):
                    for acc, acc_count in combined.items():
                        step[tuple(a + h for a, h in zip(acc, hist))] += acc_count * count
                combined = step
                if not combined:
                    return ()
            return tuple(sorted(combined.items()))

        v = min(uncovered)
        result: Counter = Counter()
        for w, pos in incident[v]:
            if w not in uncovered:
                continue
            for hist, count in matchings(uncovered - {v, w}):
                bumped = hist[:pos] + (hist[pos] + 1,) + hist[pos + 1:]
                result[bumped] += count
        return tuple(sorted(result.items()))

    found = dict(matchings(frozenset(range(size))))
    matchings.cache_clear()
    if not found:
        logger.debug(f"Gamma_{graph.n} has no perfect matching")
        return MatchingCount(count=0, label_histogram=None)

    if len(found) != 1:
        error_msg = f"label counts differ between perfect matchings: {sorted(found)}"
        logger.error(error_msg)
        raise VerificationMismatch(error_msg)
    hist, count = next(iter(found.items()))
    histogram = {label: hist[position[label]] for label in labels if hist[position[label]]}
    logger.debug(f"Gamma_{graph.n}: {count} perfect matchings, labels {histogram}")
    return MatchingCount(count=count, label_histogram=histogram)


# ============================================================================
# Tutte polynomial
# ============================================================================

def tutte_dc_oracle(
    multigraph: nx.MultiGraph,
    max_edges: int = DEFAULT_TUTTE_MAX_EDGES,
) -> sympy.Expr:
    """
    Tutte polynomial by deletion-contraction.

    No edges -> 1; loop -> y T(G - e); bridge -> x T(G - e); otherwise
    T(G - e) + T(G / e). Memoised on the sorted edge list.

    Raises:
        GraphTooLarge: more than max_edges edges
    """
    count = multigraph.number_of_edges()
    if count > max_edges:
        raise GraphTooLarge(f"deletion-contraction limited to {max_edges} edges, got {count}")

    ids = {v: j for j, v in enumerate(multigraph.nodes())}
    start = tuple(sorted(
        tuple(sorted((ids[u], ids[v]))) for u, v in multigraph.edges()
    ))

    def connected(edges: Sequence[Tuple[int, int]], a: int, b: int) -> bool:
        neighbours: Dict[int, List[int]] = {}
        for u, v in edges:
            neighbours.setdefault(u, []).append(v)
            neighbours.setdefault(v, []).append(u)
        seen = {a}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            if u == b:
                return True
            for w in neighbours.get(u, ()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return False

    @lru_cache(maxsize=None)
    def tutte(edges: Tuple[Tuple[int, int], ...]) -> sympy.Expr:
        if not edges:
            return sympy.Integer(1)
        (u, v), rest = edges[0], edges[1:]
        if u == v:
            return sympy.expand(Y * tutte(rest))
        if not connected(rest, u, v):
            return sympy.expand(X * tutte(rest))
        merged = tuple(sorted(
            tuple(sorted((u if a == v else a, u if b == v else b))) for a, b in rest
        ))
        return sympy.expand(tutte(rest) + tutte(merged))

    polynomial = tutte(start)
    tutte.cache_clear()
    return polynomial


def tutte_block_oracle(graph: SchreierMultigraph) -> FactoredTutte:
    """
    Tutte polynomial as the product over blocks: y per loop, y + x + ... + x^(m-1) per m-cycle.

    Raises:
        NotACactusOfCycles: some block is not a cycle
    """
    lengths = block_cycle_lengths(graph)
    loops = sum(1 for e in graph.edges if e.is_loop)
    return FactoredTutte.from_counts(loops, Counter(lengths))


# ============================================================================
# Spanning trees and colourings
# ============================================================================

def spanning_trees_oracle(
    graph: SchreierMultigraph,
    max_vertices: int = DEFAULT_SPANNING_TREE_MAX_VERTICES,
) -> int:
    """
    Matrix-tree theorem: a cofactor of the integer Laplacian (parallel edges as
    multiplicity, loops dropped), by fraction-free elimination over ZZ.

    Raises:
        GraphTooLarge: more than max_vertices vertices
    """
    size = len(graph.vertices)
    if size > max_vertices:
        raise GraphTooLarge(f"matrix-tree oracle limited to {max_vertices} vertices, got {size}")
    if size == 1:
        return 1

    laplacian = np.zeros((size, size), dtype=np.int64)
    for e in graph.non_loop_edges:
        a, b = graph.index[e.u], graph.index[e.v]
        laplacian[a, a] += 1
        laplacian[b, b] += 1
        laplacian[a, b] -= 1
        laplacian[b, a] -= 1

    rows = [[ZZ(int(v)) for v in row] for row in laplacian[1:, 1:].tolist()]
    minor = DomainMatrix(rows, (size - 1, size - 1), ZZ)
    return int(minor.det())


def chromatic_oracle(
    graph: SchreierMultigraph,
    lam: int,
    max_vertices: int = DEFAULT_CHROMATIC_MAX_VERTICES,
    max_lambda: int = DEFAULT_CHROMATIC_MAX_LAMBDA,
) -> int:
    """
    Proper lam-colourings of the loopless graph.

    Vertices are coloured in BFS order; the count is memoised on the colours of
    the coloured vertices that still have uncoloured neighbours.

    Raises:
        GraphTooLarge: more than max_vertices vertices or lam > max_lambda
    """
    size = len(graph.vertices)
    if size > max_vertices or lam > max_lambda:
        raise GraphTooLarge(
            f"colouring oracle limited to {max_vertices} vertices and lambda <= {max_lambda}, "
            f"got {size} and {lam}"
        )
    if lam <= 0:
        return 0

    simple = to_simple_graph(graph)
    order: List[Hashable] = []
    for component in sorted(nx.connected_components(simple), key=min):
        order.extend(nx.bfs_tree(simple, min(component)))
    place = {v: j for j, v in enumerate(order)}
    earlier = [[place[w] for w in simple[v] if place[w] < j] for j, v in enumerate(order)]
    last_use = [max([j] + [place[w] for w in simple[v]]) for j, v in enumerate(order)]

    @lru_cache(maxsize=None)
    def count(j: int, frontier: Tuple[Tuple[int, int], ...]) -> int:
        if j == len(order):
            return 1
        colours = dict(frontier)
        taken = {colours[w] for w in earlier[j]}
        total = 0
        for c in range(lam):
            if c in taken:
                continue
            nxt = {w: colours[w] for w in colours if last_use[w] > j}
            if last_use[j] > j:
                nxt[j] = c
            total += count(j + 1, tuple(sorted(nxt.items())))
        return total

    result = count(0, ())
    count.cache_clear()
    return result
