"""
Schreier Graph Module
Generates the n-th Schreier multigraph of a tree automaton and decomposes it into e-cycles.

Convention: one edge per (generator, vertex) pair. A size-2 orbit therefore gives two
parallel edges, a fixed point gives a loop and an orbit of size 2^i (i >= 2) a plain
cycle. The sink is never used as a generator.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple
import json
import logging

import networkx as nx

from src.errors import (
    InvalidEdge,
    InvalidLevel,
    LevelTooLarge,
    LoopHasNoSpecialEdges,
    MalformedInput,
    NotACactusOfCycles,
)
from src.mealy import MealyAutomaton, Word, apply_state

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 1_000_000


class SchreierEdge(NamedTuple):
    """Edge instance u -> g(u) contributed by generator ``label`` at vertex u."""
    u: Word
    v: Word
    label: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class SchreierMultigraph:
    """
    Gamma_n as a labelled multigraph on all words of length n (lexicographic order).

    generator_edges[j] is the oriented tree edge (s, t) behind labels[j], or None
    when the automaton was not built from a tree.
    """
    n: int
    k: int
    labels: Tuple[int, ...]
    generator_edges: Tuple[Optional[Tuple[int, int]], ...]
    vertices: Tuple[Word, ...]
    edges: Tuple[SchreierEdge, ...]
    index: Dict[Word, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {w: i for i, w in enumerate(self.vertices)})

    def generator_edge(self, label: int) -> Tuple[int, int]:
        if label not in self.labels:
            raise InvalidEdge(f"no generator with label {label!r}")
        oriented = self.generator_edges[self.labels.index(label)]
        if oriented is None:
            raise InvalidEdge(f"generator {label} does not come from a tree edge")
        return oriented

    @property
    def non_loop_edges(self) -> List[SchreierEdge]:
        return [e for e in self.edges if not e.is_loop]


@dataclass(frozen=True)
class ECycle:
    """
    One orbit of a generator: 2^i vertices sharing the suffix of length n - i.

    vertices starts at s^i.suffix and follows the generator; special holds
    (e_C, e_C') as edge instances, None for loops (i = 0).
    """
    label: int
    i: int
    suffix: Word
    vertices: Tuple[Word, ...]
    special: Optional[Tuple[SchreierEdge, SchreierEdge]]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> List[SchreierEdge]:
        m = len(self.vertices)
        return [
            SchreierEdge(self.vertices[j], self.vertices[(j + 1) % m], self.label)
            for j in range(m)
        ]

    def opposite(self, word: Word) -> Word:
        j = self.vertices.index(word)
        return self.vertices[(j + len(self.vertices) // 2) % len(self.vertices)]


@dataclass(frozen=True)
class ClassifiedEdge:
    """A non-loop edge instance with the e-cycle it lies on."""
    edge: SchreierEdge
    cycle: ECycle
    special: bool
    full: bool  # cycle of length 2^n

    @property
    def szeged_class(self) -> str:
        if self.full:
            return "B" if self.special else "A"
        return "D" if self.special else "C"


# ============================================================================
# Construction
# ============================================================================

def _oriented_edge(automaton: MealyAutomaton, q: int) -> Optional[Tuple[int, int]]:
    """(s, t) when q behaves like a tree-edge state: restricts to itself only on s, swaps s and t."""
    self_letters = [x for x in automaton.alphabet if automaton.restriction[(q, x)] == q]
    if len(self_letters) != 1:
        return None
    s = self_letters[0]
    t = automaton.output[(q, s)]
    return (s, t) if t != s else None


def build_schreier(
    automaton: MealyAutomaton,
    n: int,
    vertex_cap: Optional[int] = None,
) -> SchreierMultigraph:
    """
    Build Gamma_n: for every generator g and word u one edge (u, g(u), g).

    Raises:
        InvalidLevel: n < 1
        LevelTooLarge: k^n exceeds the vertex cap
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidLevel(f"level must be a positive integer, got {n!r}")
    cap = DEFAULT_VERTEX_CAP if vertex_cap is None else vertex_cap
    size = automaton.k ** n
    if size > cap:
        raise LevelTooLarge(f"k^n = {automaton.k}^{n} = {size} exceeds the vertex cap {cap}")

    vertices = tuple(product(automaton.alphabet, repeat=n))
    generators = automaton.generators
    edges = tuple(
        SchreierEdge(u, apply_state(automaton, g, u), g)
        for g in generators
        for u in vertices
    )
    graph = SchreierMultigraph(
        n=n,
        k=automaton.k,
        labels=generators,
        generator_edges=tuple(_oriented_edge(automaton, g) for g in generators),
        vertices=vertices,
        edges=edges,
    )
    logger.info(f"Built Schreier graph n={n}: {len(vertices)} vertices, {len(edges)} edges")
    return graph


# ============================================================================
# e-cycles
# ============================================================================

def e_cycle_decomposition(graph: SchreierMultigraph) -> List[ECycle]:
    """Partition the edges into generator orbits, ordered by label then first vertex."""
    cycles: List[ECycle] = []
    for label in graph.labels:
        s, t = graph.generator_edge(label)
        successor = {e.u: e.v for e in graph.edges if e.label == label}
        visited = set()
        for start in graph.vertices:
            if start in visited:
                continue
            orbit = [start]
            visited.add(start)
            current = successor[start]
            while current != start:
                orbit.append(current)
                visited.add(current)
                current = successor[current]
            cycles.append(_make_cycle(graph.n, label, s, t, orbit))
        logger.debug(f"Label {label}: {sum(1 for c in cycles if c.label == label)} e-cycles")
    return cycles


def _make_cycle(n: int, label: int, s: int, t: int, orbit: List[Word]) -> ECycle:
    length = len(orbit)
    i = length.bit_length() - 1
    if length != 1 << i:
        raise NotACactusOfCycles(f"orbit of label {label} has length {length}, not a power of 2")

    suffix = orbit[0][i:]
    anchor = (s,) * i + suffix
    if anchor not in orbit:
        raise NotACactusOfCycles(f"orbit of label {label} through {orbit[0]} misses {anchor}")
    j = orbit.index(anchor)
    vertices = tuple(orbit[j:] + orbit[:j])

    special = None
    if i >= 1:
        e_c = SchreierEdge(anchor, (t,) * i + suffix, label)
        e_c_prime = SchreierEdge(
            (s,) * (i - 1) + (t,) + suffix, (t,) * (i - 1) + (s,) + suffix, label
        )
        special = (e_c, e_c_prime)
    return ECycle(label=label, i=i, suffix=suffix, vertices=vertices, special=special)


def cycle_census(
    graph: SchreierMultigraph,
    cycles: Optional[Sequence[ECycle]] = None,
) -> Dict[Tuple[int, int], int]:
    """Number of e-cycles per (label, i); only observed pairs appear."""
    census: Dict[Tuple[int, int], int] = {}
    for c in cycles if cycles is not None else e_cycle_decomposition(graph):
        census[(c.label, c.i)] = census.get((c.label, c.i), 0) + 1
    return dict(sorted(census.items()))


def special_edges(cycle: ECycle) -> Tuple[SchreierEdge, SchreierEdge]:
    if cycle.special is None:
        raise LoopHasNoSpecialEdges(f"loop at {cycle.vertices[0]} has no special edges")
    return cycle.special


def classify_edges(
    graph: SchreierMultigraph,
    cycles: Optional[Sequence[ECycle]] = None,
) -> List[ClassifiedEdge]:
    """Every non-loop edge instance with its cycle, special flag and Szeged class."""
    classified = []
    for c in cycles if cycles is not None else e_cycle_decomposition(graph):
        if c.special is None:
            continue
        for e in c.edges():
            classified.append(
                ClassifiedEdge(edge=e, cycle=c, special=e in c.special, full=c.i == graph.n)
            )
    return classified


# ============================================================================
# Views and serialisation
# ============================================================================

def render_word(word: Sequence[int], k: int) -> str:
    if k <= 9:
        return "".join(str(x) for x in word)
    return ".".join(str(x) for x in word)


def parse_word(text: str, k: int) -> Word:
    try:
        letters = tuple(int(x) for x in (text if k <= 9 else text.split(".")))
    except ValueError:
        raise MalformedInput(f"cannot parse word {text!r}")
    if not letters or any(not 1 <= x <= k for x in letters):
        raise MalformedInput(f"word {text!r} is not over 1..{k}")
    return letters


def to_multigraph(graph: SchreierMultigraph) -> nx.MultiGraph:
    multi = nx.MultiGraph()
    multi.add_nodes_from(graph.vertices)
    for e in graph.edges:
        multi.add_edge(e.u, e.v, label=e.label)
    return multi


def to_simple_graph(graph: SchreierMultigraph) -> nx.Graph:
    """Loopless simple graph (parallel edges collapsed)."""
    simple = nx.Graph()
    simple.add_nodes_from(graph.vertices)
    simple.add_edges_from((e.u, e.v) for e in graph.edges if not e.is_loop)
    return simple


def export_dot(graph: SchreierMultigraph) -> str:
    lines = [f"graph schreier_n{graph.n} {{"]
    for w in graph.vertices:
        lines.append(f'  "{render_word(w, graph.k)}";')
    for e in graph.edges:
        lines.append(
            f'  "{render_word(e.u, graph.k)}" -- "{render_word(e.v, graph.k)}" '
            f'[label="e{e.label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(graph: SchreierMultigraph) -> str:
    payload = {
        "k": graph.k,
        "n": graph.n,
        "generators": [
            [label, *(oriented or (None, None))]
            for label, oriented in zip(graph.labels, graph.generator_edges)
        ],
        "vertices": [render_word(w, graph.k) for w in graph.vertices],
        "edges": [
            [render_word(e.u, graph.k), render_word(e.v, graph.k), e.label]
            for e in graph.edges
        ],
    }
    return json.dumps(payload, separators=(",", ":")) + "\n"


def import_json(text: str) -> SchreierMultigraph:
    """Inverse of export_json."""
    try:
        payload = json.loads(text)
        k, n = int(payload["k"]), int(payload["n"])
        generators = payload["generators"]
        labels = tuple(int(g[0]) for g in generators)
        generator_edges = tuple(
            None if g[1] is None else (int(g[1]), int(g[2])) for g in generators
        )
        vertices = tuple(parse_word(w, k) for w in payload["vertices"])
        edges = tuple(
            SchreierEdge(parse_word(u, k), parse_word(v, k), int(label))
            for u, v, label in payload["edges"]
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError) as e:
        raise MalformedInput(f"not a Schreier graph document: {e}")
    return SchreierMultigraph(
        n=n, k=k, labels=labels, generator_edges=generator_edges,
        vertices=vertices, edges=edges,
    )
