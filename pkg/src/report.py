"""
Indices Report Module
Builds the per-index JSON report for one tree and level: closed form, published
reading and brute-force oracle side by side.
"""

from fractions import Fraction
from typing import Any, Callable, Dict, Optional
import json
import logging

from src.errors import GraphTooLarge, NonIntegerResult, SizeGuardError
from src.formulas import (
    FactoredTutte,
    PowerProduct,
    Variant,
    asymptotic_ratio,
    asymptotic_ratio_limit,
    cycle_count_formula,
    diameter_formula,
    pm_count_formula,
    spanning_forests_formula,
    spanning_trees_formula,
    szeged_formula,
    tutte_evaluate,
    tutte_factored,
    wiener_formula,
)
from src.mealy import build_automaton
from src.oracle import (
    DistanceTable,
    diameter_oracle,
    pm_oracle,
    spanning_trees_oracle,
    szeged_oracle,
    tutte_block_oracle,
    wiener_oracle,
)
from src.schreier import SchreierMultigraph, build_schreier, cycle_census, e_cycle_decomposition
from src.settings import Settings
from src.tree_core import OrientedTree, tree_diameter, tree_szeged, tree_wiener

logger = logging.getLogger(__name__)

MODES = ("formula", "oracle", "both")
INT_BITS = 63


def json_value(value: Any, bit_budget: int) -> Any:
    """JSON-safe rendering: wide integers as decimal strings, big power products symbolically."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value if value.bit_length() <= INT_BITS else str(value)
    if isinstance(value, Fraction):
        return json_value(value.numerator, bit_budget) if value.denominator == 1 else str(value)
    if isinstance(value, PowerProduct):
        try:
            return json_value(value.value(bit_budget), bit_budget)
        except SizeGuardError:
            return str(value)
    if isinstance(value, FactoredTutte):
        return {
            "loop_exp": json_value(value.loop_exp, bit_budget),
            "factors": [[m, json_value(mult, bit_budget)] for m, mult in value.factors],
            "polynomial": str(value),
        }
    if isinstance(value, dict):
        return {str(key): json_value(item, bit_budget) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_value(item, bit_budget) for item in value]
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def comparable(value: Any, bit_budget: int) -> Any:
    if isinstance(value, PowerProduct):
        return value.value(bit_budget)
    return value


def census_key(label: int, i: int) -> str:
    return f"{label},{i}"


class IndicesReport:
    """
    Computes every index of Gamma_n for one tree.

    mode "formula" never builds the graph; "oracle" and "both" do, and skip
    the oracles whose size guard the graph exceeds.
    """

    def __init__(
        self,
        tree: OrientedTree,
        n: int,
        settings: Settings,
        mode: str = "both",
        variant: str = "corrected",
    ):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.tree = tree
        self.n = n
        self.settings = settings
        self.limits = settings.limits
        self.mode = mode
        self.variant = Variant(variant)
        self._graph: Optional[SchreierMultigraph] = None
        self._table: Optional[DistanceTable] = None
        self._cycles = None

    # ----- lazily built oracle inputs -----

    @property
    def graph(self) -> SchreierMultigraph:
        if self._graph is None:
            self._graph = build_schreier(
                build_automaton(self.tree), self.n, vertex_cap=self.limits.vertex_cap
            )
        return self._graph

    @property
    def table(self) -> DistanceTable:
        if self._table is None:
            size = len(self.graph.vertices)
            if size > self.limits.distance_max_vertices:
                raise GraphTooLarge(
                    f"distance oracles limited to {self.limits.distance_max_vertices} vertices, got {size}"
                )
            self._table = DistanceTable.build(self.graph)
        return self._table

    @property
    def cycles(self):
        if self._cycles is None:
            self._cycles = e_cycle_decomposition(self.graph)
        return self._cycles

    # ----- entries -----

    def _entry(
        self,
        formula: Callable[[Variant], Any],
        oracle: Optional[Callable[[], Any]],
        has_published: bool = False,
    ) -> Dict[str, Any]:
        budget = self.limits.bit_budget
        entry: Dict[str, Any] = {}
        formula_value = None

        if self.mode in ("formula", "both"):
            try:
                formula_value = formula(self.variant)
                entry["formula"] = json_value(formula_value, budget)
            except (SizeGuardError, NonIntegerResult) as e:
                entry["formula"] = None
                entry["error"] = str(e)
            if has_published and self.variant is Variant.CORRECTED:
                try:
                    entry["published"] = json_value(formula(Variant.PUBLISHED), budget)
                except (SizeGuardError, NonIntegerResult) as e:
                    entry["published"] = None
                    entry["published_error"] = str(e)

        if self.mode in ("oracle", "both"):
            if oracle is None:
                entry["checked"] = False
                entry["skipped"] = "no brute-force oracle"
                if self.mode == "both":
                    entry["agree"] = False
                return entry
            try:
                oracle_value = oracle()
            except SizeGuardError as e:
                logger.warning(f"Oracle skipped: {e}")
                entry["oracle"] = None
                entry["checked"] = False
                entry["skipped"] = str(e)
                if self.mode == "both":
                    entry["agree"] = False
                return entry
            entry["oracle"] = json_value(oracle_value, budget)
            if self.mode == "both":
                checked = formula_value is not None
                try:
                    agree = checked and comparable(formula_value, budget) == comparable(oracle_value, budget)
                except SizeGuardError:
                    checked, agree = False, False
                entry["checked"] = checked
                entry["agree"] = agree
            else:
                entry["checked"] = True
        return entry

    def build(self) -> Dict[str, Any]:
        tree, n, k = self.tree, self.n, self.tree.k
        limits = self.limits
        logger.info(f"Computing indices for k={k}, n={n} in {self.mode} mode")

        def formula_census(_variant):
            return {
                census_key(label, i): count
                for label in tree.labels
                for i in range(n + 1)
                if (count := cycle_count_formula(k, n, i))
            }

        def oracle_census():
            return {census_key(label, i): c for (label, i), c in cycle_census(self.graph, self.cycles).items()}

        def oracle_forests():
            return tutte_evaluate(tutte_block_oracle(self.graph), 2, 1, limits.bit_budget)

        def ratio(variant):
            if variant is Variant.PUBLISHED:
                return asymptotic_ratio(k, tree_wiener(tree))
            return asymptotic_ratio_limit(k)

        report: Dict[str, Any] = {
            "k": k,
            "n": n,
            "mode": self.mode,
            "variant": self.variant.value,
            "diameter": self._entry(
                lambda _v: diameter_formula(tree_diameter(tree), n),
                lambda: diameter_oracle(self.graph, self.table),
            ),
            "wiener": self._entry(
                lambda _v: wiener_formula(k, n, tree_wiener(tree)),
                lambda: wiener_oracle(self.graph, self.table),
            ),
            "szeged": self._entry(
                lambda _v: szeged_formula(k, n, tree_szeged(tree)),
                lambda: szeged_oracle(self.graph, self.table),
            ),
            "pm_count": self._entry(
                lambda _v: pm_count_formula(tree, n),
                lambda: pm_oracle(self.graph, limits.pm_max_vertices).count,
            ),
            "spanning_trees": self._entry(
                lambda v: spanning_trees_formula(k, n, v),
                lambda: spanning_trees_oracle(self.graph, limits.spanning_tree_max_vertices),
                has_published=True,
            ),
            "spanning_forests": self._entry(
                lambda v: spanning_forests_formula(k, n, v, limits.bit_budget),
                oracle_forests,
                has_published=True,
            ),
            "cycle_census": self._entry(formula_census, oracle_census),
            "tutte_factored": self._entry(
                lambda v: tutte_factored(k, n, v),
                lambda: tutte_block_oracle(self.graph),
                has_published=True,
            ),
            "asymptotic_ratio": self._entry(ratio, None, has_published=True),
        }
        return report


def render_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"
