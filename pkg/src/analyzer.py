"""
Structure Analyzer Module
Checks the structural invariants of a generated Schreier multigraph:
sizes, regularity, connectivity, bipartiteness and the cactus-of-cycles block structure.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence
import logging

import networkx as nx

from src.errors import NotACactusOfCycles
from src.schreier import ECycle, SchreierMultigraph, e_cycle_decomposition, to_simple_graph

logger = logging.getLogger(__name__)


@dataclass
class StructureAnalysis:
    """Outcome of every structural check on one graph."""
    n: int
    k: int
    vertex_count: int
    edge_count: int
    loop_count: int
    is_regular: bool
    is_connected: bool
    is_bipartite: bool
    is_cactus_of_cycles: bool
    opposite_property: bool
    block_lengths: Dict[int, int] = field(default_factory=dict)  # cycle length -> blocks

    @property
    def expected_vertices(self) -> int:
        return self.k ** self.n

    @property
    def expected_edges(self) -> int:
        return (self.k - 1) * self.k ** self.n

    def failures(self) -> List[str]:
        checks = {
            "vertex_count": self.vertex_count == self.expected_vertices,
            "edge_count": self.edge_count == self.expected_edges,
            "regular": self.is_regular,
            "connected": self.is_connected,
            "bipartite": self.is_bipartite,
            "cactus": self.is_cactus_of_cycles,
            "opposite_vertex": self.opposite_property,
        }
        return [name for name, ok in checks.items() if not ok]

    @property
    def ok(self) -> bool:
        return not self.failures()


def block_cycle_lengths(graph: SchreierMultigraph) -> List[int]:
    """
    Lengths of the blocks of the loopless multigraph, each of which must be a cycle.

    A pair of parallel edges counts as a cycle of length 2.

    Raises:
        NotACactusOfCycles: some block is a bridge or contains a chord
    """
    multiplicity = Counter(frozenset((e.u, e.v)) for e in graph.edges if not e.is_loop)
    simple = to_simple_graph(graph)

    lengths = []
    for block in nx.biconnected_component_edges(simple):
        pairs = [frozenset(pair) for pair in block]
        degree: Counter = Counter()
        size = 0
        for pair in pairs:
            for v in pair:
                degree[v] += multiplicity[pair]
            size += multiplicity[pair]
        if size < 2 or any(d != 2 for d in degree.values()) or size != len(degree):
            raise NotACactusOfCycles(
                f"block with {len(degree)} vertices and {size} edges is not a cycle"
            )
        lengths.append(size)
    return sorted(lengths)


def analyze_structure(
    graph: SchreierMultigraph,
    cycles: Optional[Sequence[ECycle]] = None,
) -> StructureAnalysis:
    """Run every structural check; never raises on a failed check."""
    logger.info(f"Analyzing structure of Gamma_{graph.n} (k={graph.k})")

    degree: Counter = Counter()
    for e in graph.edges:
        degree[e.u] += 1
        degree[e.v] += 1
    expected_degree = 2 * len(graph.labels)
    is_regular = all(degree[v] == expected_degree for v in graph.vertices)

    simple = to_simple_graph(graph)
    is_connected = nx.is_connected(simple)
    is_bipartite = nx.is_bipartite(simple)

    try:
        lengths = block_cycle_lengths(graph)
        is_cactus = True
    except NotACactusOfCycles as e:
        logger.warning(f"Cactus check failed: {e}")
        lengths = []
        is_cactus = False

    if cycles is None:
        cycles = e_cycle_decomposition(graph)
    opposite_ok = all(
        _differs_only_at(c.vertices[j], c.vertices[(j + c.length // 2) % c.length], c.i - 1)
        for c in cycles
        if c.i >= 1
        for j in range(c.length)
    )

    analysis = StructureAnalysis(
        n=graph.n,
        k=graph.k,
        vertex_count=len(graph.vertices),
        edge_count=len(graph.edges),
        loop_count=sum(1 for e in graph.edges if e.is_loop),
        is_regular=is_regular,
        is_connected=is_connected,
        is_bipartite=is_bipartite,
        is_cactus_of_cycles=is_cactus,
        opposite_property=opposite_ok,
        block_lengths=dict(sorted(Counter(lengths).items())),
    )
    if analysis.ok:
        logger.debug(f"Structure OK: blocks {analysis.block_lengths}")
    else:
        logger.warning(f"Structure checks failed: {analysis.failures()}")
    return analysis


def _differs_only_at(u, v, position: int) -> bool:
    diff = [j for j, (a, b) in enumerate(zip(u, v)) if a != b]
    return diff == [position]
