"""
Counting Formulas
Diameter, e-cycle counts and perfect matchings of Gamma_n in closed form.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Union
import logging

from src.errors import InvalidLevel, InvalidRange, NoPerfectMatching
from src.formulas.numbers import PowerProduct, Variant, as_integer
from src.tree_core import OrientedTree, tree_perfect_matching

logger = logging.getLogger(__name__)


def check_level(k: int, n: int) -> None:
    if k < 2:
        raise InvalidRange(f"k must be at least 2, got {k}")
    if n < 1:
        raise InvalidLevel(f"level must be at least 1, got {n}")


def diameter_formula(d_g: int, n: int) -> int:
    """2^(n+1) + d_G (2n - 1) - 4n."""
    if d_g < 1:
        raise InvalidRange(f"tree diameter must be at least 1, got {d_g}")
    if n < 1:
        raise InvalidLevel(f"level must be at least 1, got {n}")
    return 2 ** (n + 1) + d_g * (2 * n - 1) - 4 * n


def cycle_count_formula(k: int, n: int, i: int) -> int:
    """Number of e-cycles of length 2^i for one generator (i = 0 counts loops)."""
    check_level(k, n)
    if not 0 <= i <= n:
        raise InvalidRange(f"i must lie in 0..{n}, got {i}")
    if i == n:
        return 1
    return (k - 2) * k ** (n - i - 1)


def pm_exponent(k: int, n: int) -> int:
    """Number of cycles a perfect matching of Gamma_n has to choose a side on."""
    return as_integer(
        Fraction(k * (k ** n - 2 * k ** (n - 1) + 1), 2 * (k - 1)),
        "perfect matching exponent",
    )


def pm_count_formula(tree: OrientedTree, n: int) -> PowerProduct:
    check_level(tree.k, n)
    if tree_perfect_matching(tree) is None:
        return PowerProduct.zero()
    return PowerProduct.power(2, pm_exponent(tree.k, n))


@dataclass(frozen=True)
class PMGeneratingMonomial:
    """count * prod(e ** per_label_exponent for e in labels)."""
    count: PowerProduct
    per_label_exponent: int
    labels: FrozenSet[int]

    def __str__(self) -> str:
        monomial = "".join(f"e{label}^{self.per_label_exponent}" for label in sorted(self.labels))
        return f"{self.count} * {monomial}"


def pm_generating_function(
    tree: OrientedTree,
    n: int,
    variant: Union[Variant, str] = Variant.CORRECTED,
) -> PMGeneratingMonomial:
    """
    Generating function of the perfect matchings by edge label.

    Every perfect matching uses the same number of edges of each matched label:
    k^(n-1) (corrected) where the published statement has k^n / 2.
    """
    variant = Variant(variant)
    check_level(tree.k, n)
    matching = tree_perfect_matching(tree)
    if matching is None:
        raise NoPerfectMatching("the tree has no perfect matching")

    if variant is Variant.PUBLISHED:
        exponent = as_integer(Fraction(tree.k ** n, 2), "published label exponent")
    else:
        exponent = tree.k ** (n - 1)
    return PMGeneratingMonomial(
        count=PowerProduct.power(2, pm_exponent(tree.k, n)),
        per_label_exponent=exponent,
        labels=matching,
    )
