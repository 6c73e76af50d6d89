"""
Distance Index Formulas
Closed forms for the Wiener and Szeged indices of Gamma_n, the per-edge values
they are assembled from, and the ratio of the Wiener index to diameter times pairs.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple
import logging

from src.errors import InvalidRange, LoopHasNoSpecialEdges
from src.formulas.counting import check_level, diameter_formula
from src.formulas.numbers import as_integer
from src.schreier import ClassifiedEdge
from src.tree_core import OrientedTree, split_counts, split_sides, tree_szeged

logger = logging.getLogger(__name__)


def leading_coefficient(k: int) -> Fraction:
    """(k-1)^2 (2k^2 - 2k - 1) / (k^3 (2k - 1)), the coefficient of 2^n k^(2n)."""
    return Fraction((k - 1) ** 2 * (2 * k * k - 2 * k - 1), k ** 3 * (2 * k - 1))


# ============================================================================
# Per-edge values
# ============================================================================

def nonspecial_contribution(k: int, n: int, i: int) -> int:
    """n(u,v) n(v,u) for a non-special edge of an e-cycle of length 2^i."""
    check_level(k, n)
    if not 1 <= i <= n:
        raise InvalidRange(f"i must lie in 1..{n}, got {i}")
    return k ** (i - 1) * (k ** n - k ** (i - 1))


def special_contribution_full(tree: OrientedTree, label: int, n: int) -> int:
    """n(u,v) n(v,u) for a special edge of the e-cycle of length 2^n."""
    split = split_counts(tree, label)
    check_level(tree.k, n)
    return split.product * tree.k ** (2 * (n - 1))


def special_contribution_small(
    tree: OrientedTree, label: int, n: int, i: int
) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """
    Two families of e-cycles of length 2^i < 2^n and the value of each special edge.

    Cycles whose suffix starts on the t side (other than t) form the first family,
    those starting on the s side the second. Each cycle has two special edges.
    """
    split = split_counts(tree, label)
    k = tree.k
    check_level(k, n)
    if not 1 <= i < n:
        raise InvalidRange(f"i must lie in 1..{n - 1}, got {i}")

    a, b = split.n_st, split.n_ts
    scale = k ** (i - 1)
    first = ((b - 1) * k ** (n - 1 - i), a * scale * (k ** n - a * scale))
    second = ((a - 1) * k ** (n - 1 - i), b * scale * (k ** n - b * scale))
    return first, second


def lemma_edge_value(tree: OrientedTree, n: int, classified: ClassifiedEdge) -> int:
    """Expected n(u,v) n(v,u) for one classified edge instance."""
    cycle = classified.cycle
    if cycle.i == 0:
        raise LoopHasNoSpecialEdges("loops have no per-edge value")
    if not classified.special:
        return nonspecial_contribution(tree.k, n, cycle.i)
    if classified.full:
        return special_contribution_full(tree, cycle.label, n)

    first, second = special_contribution_small(tree, cycle.label, n, cycle.i)
    _, side_t = split_sides(tree, cycle.label)
    return first[1] if cycle.suffix[0] in side_t else second[1]


# ============================================================================
# Szeged decomposition
# ============================================================================

@dataclass(frozen=True)
class SzegedTerms:
    """Szeged index split by edge class (full/short cycle x non-special/special)."""
    A: int
    B: int
    C: int
    D: int

    @property
    def total(self) -> int:
        return self.A + self.B + self.C + self.D

    def as_dict(self):
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D}


def sz_decomposition_terms(tree: OrientedTree, n: int) -> SzegedTerms:
    k = tree.k
    check_level(k, n)
    sz_g = tree_szeged(tree)

    a_term = (k - 1) ** 2 * k ** (2 * n - 2) * (2 ** n - 2)
    b_term = 2 * k ** (2 * n - 2) * sz_g

    c_inner = (
        k ** n * (2 ** n - 2)
        - 2 * Fraction((2 * k) ** (n - 1) - 1, 2 * k - 1)
        - 2 * (n - 1) * k ** n
        + 2 * Fraction(k ** (n - 1) - 1, k - 1)
    )
    c_term = (k - 2) * (k - 1) * Fraction(k ** n, k ** 2) * c_inner

    d_inner = (
        (2 * (n - 1) * k ** n - Fraction((k + 2) * (k ** (n - 1) - 1), k - 1)) * sz_g
        - (n - 1) * (k - 1) * k ** (n + 1)
        + k ** 2 * (k ** (n - 1) - 1)
    )
    d_term = 2 * Fraction(k ** n, k ** 2) * d_inner

    terms = SzegedTerms(
        A=a_term,
        B=b_term,
        C=as_integer(c_term, "Szeged term C"),
        D=as_integer(d_term, "Szeged term D"),
    )
    logger.debug(f"Szeged terms k={k} n={n}: {terms.as_dict()}")
    return terms


# ============================================================================
# Wiener and Szeged indices
# ============================================================================

class FormulaTerms(NamedTuple):
    """The five summands of the Wiener closed form, in order."""
    leading: Fraction
    n_k2n: Fraction
    k2n: Fraction
    kn: Fraction
    tree_part: Fraction

    @property
    def total(self) -> Fraction:
        return sum(self, Fraction(0))


def wiener_formula_terms(k: int, n: int, w_g: int) -> FormulaTerms:
    check_level(k, n)
    k2n = Fraction(k) ** (2 * n)
    kn = Fraction(k) ** n
    tree_coefficient = (
        Fraction(2, k * k) * n * k2n
        - Fraction(k * k + 2, k ** 3 * (k - 1)) * k2n
        + Fraction(k + 2, k * k * (k - 1)) * kn
    )
    return FormulaTerms(
        leading=leading_coefficient(k) * 2 ** n * k2n,
        n_k2n=-Fraction(2 * (k - 1) ** 2, k * k) * n * k2n,
        k2n=Fraction(2 * (k + 1) * (k - 1), k ** 3) * k2n,
        kn=-Fraction(2 * (k + 1) * (k - 1), k * (2 * k - 1)) * kn,
        tree_part=tree_coefficient * w_g,
    )


def wiener_formula(k: int, n: int, w_g: int) -> int:
    return as_integer(wiener_formula_terms(k, n, w_g).total, "Wiener formula")


def szeged_formula(k: int, n: int, sz_g: int) -> int:
    return as_integer(2 * wiener_formula_terms(k, n, sz_g).total, "Szeged formula")


def wiener_path_formula(k: int, n: int) -> int:
    """Wiener index of Gamma_n when the seed tree is the path on k vertices."""
    check_level(k, n)
    k2n = Fraction(k) ** (2 * n)
    kn = Fraction(k) ** n
    value = (
        leading_coefficient(k) * 2 ** n * k2n
        + Fraction((k - 1) * (k - 2) * (k - 3), 3 * k * k) * n * k2n
        - Fraction((k + 1) * (k - 2) * (k * k + 2 * k - 6), 6 * k ** 3) * k2n
        + Fraction((k + 1) * (k - 2) * (2 * k - 5), 6 * k * (2 * k - 1)) * kn
    )
    return as_integer(value, "path Wiener formula")


def wiener_star_formula(k: int, n: int) -> int:
    """Wiener index of Gamma_n when the seed tree is the star on k vertices."""
    check_level(k, n)
    k2n = Fraction(k) ** (2 * n)
    kn = Fraction(k) ** n
    value = (
        leading_coefficient(k) * 2 ** n * k2n
        - Fraction((k - 1) * (k - 2), k * k) * k2n
        + Fraction((k - 1) * (k - 2), k * k * (2 * k - 1)) * kn
    )
    return as_integer(value, "star Wiener formula")


def asymptotic_ratio(k: int, w_g: int) -> Fraction:
    """The published constant W(G)/2 times the leading coefficient."""
    if k < 2:
        raise InvalidRange(f"k must be at least 2, got {k}")
    return Fraction(w_g, 2) * leading_coefficient(k)


def asymptotic_ratio_limit(k: int) -> Fraction:
    """
    Limit of W(Gamma_n) / (diam(Gamma_n) k^(2n) / 2) as n grows.

    The W(G) term of the Wiener formula is only of order n k^(2n), so the limit
    is the leading coefficient itself.
    """
    if k < 2:
        raise InvalidRange(f"k must be at least 2, got {k}")
    return leading_coefficient(k)


def ratio_at_level(k: int, n: int, w_g: int, d_g: int) -> Fraction:
    """W(Gamma_n) / (diam(Gamma_n) k^(2n) / 2) from the closed forms."""
    return Fraction(2 * wiener_formula(k, n, w_g), diameter_formula(d_g, n) * k ** (2 * n))
