"""
Mealy Automaton Module
Builds the invertible automaton A_G of an oriented tree and applies its states to words.

States are integers: 0 is the sink ``id``, label j (1..k-1) is the edge state e_j.
A state reads the leftmost letter, writes eta(q, x) and hands the rest of the
word to lambda(q, x).
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple
import logging
import random

from src.errors import MalformedInput, UnknownState
from src.tree_core import OrientedTree

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

SINK = 0


@dataclass(frozen=True)
class MealyAutomaton:
    """
    Finite transducer over the alphabet 1..k.

    restriction and output are total tables keyed by (state, letter).
    build_automaton() emits the tree construction; hand-built tables are
    accepted as well (useful for negative controls).
    """
    k: int
    states: Tuple[int, ...]
    restriction: Mapping[Tuple[int, int], int]
    output: Mapping[Tuple[int, int], int]
    sink: Optional[int] = None
    names: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        for q in self.states:
            for x in self.alphabet:
                if (q, x) not in self.restriction or (q, x) not in self.output:
                    raise MalformedInput(f"transition table has no entry for ({q}, {x})")
                if self.restriction[(q, x)] not in self.states:
                    raise MalformedInput(f"restriction ({q}, {x}) leads to unknown state")

    @property
    def alphabet(self) -> range:
        return range(1, self.k + 1)

    @property
    def generators(self) -> Tuple[int, ...]:
        """States that act as generators (everything except the sink)."""
        return tuple(q for q in self.states if q != self.sink)

    def state_name(self, q: int) -> str:
        if q not in self.states:
            raise UnknownState(f"unknown state {q!r}")
        return self.names.get(q, str(q))


def build_automaton(tree: OrientedTree) -> MealyAutomaton:
    """
    Automaton with one state per oriented edge e=(s, t) plus the sink.

    e swaps s and t and fixes every other letter; it restricts to itself on s
    and to the sink everywhere else.
    """
    restriction: Dict[Tuple[int, int], int] = {}
    output: Dict[Tuple[int, int], int] = {}
    names = {SINK: "id"}

    for x in tree.vertices:
        restriction[(SINK, x)] = SINK
        output[(SINK, x)] = x

    for label in tree.labels:
        s, t = tree.edge(label)
        names[label] = f"e{label}"
        for x in tree.vertices:
            restriction[(label, x)] = label if x == s else SINK
            output[(label, x)] = t if x == s else s if x == t else x

    automaton = MealyAutomaton(
        k=tree.k,
        states=(SINK,) + tuple(tree.labels),
        restriction=restriction,
        output=output,
        sink=SINK,
        names=names,
    )
    logger.debug(f"Built automaton with {len(automaton.states)} states over {tree.k} letters")
    return automaton


def apply_state(automaton: MealyAutomaton, q: int, word: Sequence[int]) -> Word:
    """Image of the word under state q; the length never changes."""
    if q not in automaton.states:
        raise UnknownState(f"unknown state {q!r}")
    if not word:
        raise MalformedInput("words must have length at least 1")

    out: List[int] = []
    state = q
    for pos, x in enumerate(word):
        if state == automaton.sink:
            out.extend(word[pos:])
            break
        if not 1 <= x <= automaton.k:
            raise MalformedInput(f"letter {x!r} outside 1..{automaton.k}")
        out.append(automaton.output[(state, x)])
        state = automaton.restriction[(state, x)]
    return tuple(out)


def check_invertible(automaton: MealyAutomaton) -> bool:
    """True iff eta(q, .) permutes the alphabet for every state."""
    letters = list(automaton.alphabet)
    for q in automaton.states:
        if sorted(automaton.output[(q, x)] for x in letters) != letters:
            logger.debug(f"State {automaton.state_name(q)} is not invertible")
            return False
    return True


def export_moore_dot(automaton: MealyAutomaton) -> str:
    """Moore diagram: one arrow q -> lambda(q, x) labelled 'x|eta(q, x)' per state and letter."""
    lines = ["digraph automaton {", "  rankdir=LR;"]
    for q in automaton.states:
        shape = "doublecircle" if q == automaton.sink else "circle"
        lines.append(f'  "{automaton.state_name(q)}" [shape={shape}];')
    for q in automaton.states:
        for x in automaton.alphabet:
            target = automaton.restriction[(q, x)]
            lines.append(
                f'  "{automaton.state_name(q)}" -> "{automaton.state_name(target)}" '
                f'[label="{x}|{automaton.output[(q, x)]}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_words(k: int, n: int, count: int, seed: int = 0) -> Iterator[Word]:
    """Reproducible stream of random words of length n over 1..k."""
    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(rng.randint(1, k) for _ in range(n))


def apply_power(automaton: MealyAutomaton, q: int, word: Sequence[int], times: int) -> Word:
    """Image of the word under q applied ``times`` times in a row."""
    image = tuple(word)
    for _ in range(times):
        image = apply_state(automaton, q, image)
    return image


def edge_fixes(tree: OrientedTree, label: int, word: Sequence[int]) -> bool:
    """
    Whether the edge state e=(s, t) fixes the word without running it.

    A word starting with s or t has its first letter swapped; any other first
    letter sends the state to the sink, so the word is fixed.
    """
    if not word:
        raise MalformedInput("words must have length at least 1")
    return word[0] not in tree.edge(label)
