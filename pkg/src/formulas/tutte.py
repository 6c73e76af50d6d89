"""
Tutte Polynomial Formulas
Block-factored Tutte polynomial of Gamma_n and its specialisations
(spanning trees, spanning forests, chromatic polynomial).

The published product runs over cycle lengths 2^2..2^(n-1). Under the one-edge-per-
(generator, vertex) convention every size-2 orbit is a 2-cycle block, so the corrected
variant also carries the (y + x) factor for i = 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union
import logging

import sympy

from src.errors import ValueTooLarge
from src.formulas.counting import check_level, cycle_count_formula
from src.formulas.numbers import (
    DEFAULT_BIT_BUDGET,
    ChromaticVariant,
    PowerProduct,
    Variant,
    as_integer,
    bits_of,
)

logger = logging.getLogger(__name__)

X, Y = sympy.symbols("x y")


@dataclass(frozen=True)
class FactoredTutte:
    """y^loop_exp * prod((y + x + ... + x^(m-1))^multiplicity)."""
    loop_exp: int
    factors: Tuple[Tuple[int, int], ...]  # (cycle length m, multiplicity), m ascending

    def __post_init__(self):
        lengths = [m for m, _ in self.factors]
        if len(set(lengths)) != len(lengths):
            raise ValueError(f"repeated cycle length in {self.factors}")
        for m, mult in self.factors:
            if m < 2 or m & (m - 1):
                raise ValueError(f"cycle length {m} is not a power of two >= 2")
            if mult < 1:
                raise ValueError(f"multiplicity {mult} for length {m} must be positive")

    @classmethod
    def from_counts(cls, loop_exp: int, counts: Dict[int, int]) -> "FactoredTutte":
        return cls(
            loop_exp=loop_exp,
            factors=tuple(sorted((m, mult) for m, mult in counts.items() if mult > 0)),
        )

    def to_dict(self) -> Dict:
        return {"loop_exp": self.loop_exp, "factors": [list(f) for f in self.factors]}

    def __str__(self) -> str:
        parts = [f"y^{self.loop_exp}"] if self.loop_exp else []
        for m, mult in self.factors:
            body = "y+" + "+".join("x" if j == 1 else f"x^{j}" for j in range(1, m))
            parts.append(f"({body})^{mult}")
        return "*".join(parts) or "1"


def _cycle_multiplicities(k: int, n: int, variant: Variant) -> Dict[int, int]:
    """Cycle length -> number of blocks of that length in Gamma_n."""
    lowest = 1 if variant is Variant.CORRECTED else 2
    counts = {2 ** n: k - 1}
    for i in range(lowest, n):
        counts[2 ** i] = (k - 1) * cycle_count_formula(k, n, i)
    return counts


def tutte_factored(k: int, n: int, variant: Union[Variant, str] = Variant.CORRECTED) -> FactoredTutte:
    variant = Variant(variant)
    check_level(k, n)
    loop_exp = (k - 1) * cycle_count_formula(k, n, 0) if n > 0 else 0
    return FactoredTutte.from_counts(loop_exp, _cycle_multiplicities(k, n, variant))


def factored_to_sympy(factored: FactoredTutte) -> sympy.Expr:
    expr = Y ** factored.loop_exp
    for m, mult in factored.factors:
        expr *= (Y + sum(X ** j for j in range(1, m))) ** mult
    return expr


def _cycle_value(m: int, x: Fraction, y: Fraction, bit_budget: int) -> Fraction:
    """y + x + ... + x^(m-1) at a point."""
    if x == 1:
        return y + (m - 1)
    if m * bits_of(x) > bit_budget:
        raise ValueTooLarge(f"x^{m} exceeds the bit budget {bit_budget}")
    return y + (x ** m - x) / (x - 1)


def tutte_evaluate(
    factored: FactoredTutte,
    x: Union[Fraction, int],
    y: Union[Fraction, int],
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> Fraction:
    """Exact value of the factored polynomial at (x, y)."""
    x, y = Fraction(x), Fraction(y)
    terms: List[Tuple[Fraction, int]] = [(y, factored.loop_exp)]
    for m, mult in factored.factors:
        terms.append((_cycle_value(m, x, y, bit_budget), mult))

    if any(base == 0 and exponent > 0 for base, exponent in terms):
        return Fraction(0)
    estimate = sum(bits_of(base) * exponent for base, exponent in terms if abs(base) != 1)
    if estimate > bit_budget:
        raise ValueTooLarge(f"Tutte value needs about {estimate} bits (budget {bit_budget})")

    result = Fraction(1)
    for base, exponent in terms:
        result *= base ** exponent
    return result


def spanning_trees_formula(k: int, n: int, variant: Union[Variant, str] = Variant.CORRECTED) -> PowerProduct:
    """T(1, 1): the product of all block cycle lengths, as a power of 2."""
    variant = Variant(variant)
    check_level(k, n)
    if variant is Variant.PUBLISHED:
        exponent = n + Fraction((Fraction(k) ** (n - 2) * (2 * k - 1) - 1) * (k - 2), k - 1)
        return PowerProduct.power(2, as_integer(exponent, "published spanning-tree exponent"))

    exponent = n * (k - 1) + (k - 1) * (k - 2) * sum(i * k ** (n - i - 1) for i in range(1, n))
    return PowerProduct.power(2, exponent)


def spanning_forests_formula(
    k: int,
    n: int,
    variant: Union[Variant, str] = Variant.CORRECTED,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> int:
    """T(2, 1) = prod((2^m - 1)^multiplicity)."""
    value = tutte_evaluate(tutte_factored(k, n, variant), 2, 1, bit_budget)
    return as_integer(value, "spanning forest count")


def chromatic_eval(
    k: int,
    n: int,
    lam: int,
    variant: Union[ChromaticVariant, str] = ChromaticVariant.BLOCK,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> int:
    """
    Chromatic polynomial of the loopless Gamma_n at lam.

    block: lam * prod over cycle blocks of ((lam-1)^m + (lam-1)) / lam.
    published: the printed right-hand side, evaluated verbatim.
    """
    variant = ChromaticVariant(variant)
    check_level(k, n)
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")

    if variant is ChromaticVariant.PUBLISHED:
        terms = [((1 - lam) ** (2 ** n) - lam + 1, k - 1)]
        for i in range(2, n):
            terms.append(((1 - lam) ** (2 ** i) - lam + 1, (k - 1) * cycle_count_formula(k, n, i)))
        sign = (-1) ** (k + 1)
    else:
        if lam == 0:
            return 0
        terms = []
        for m, mult in sorted(_cycle_multiplicities(k, n, Variant.CORRECTED).items()):
            numerator = (lam - 1) ** m + (lam - 1)
            terms.append((as_integer(Fraction(numerator, lam), "cycle chromatic factor"), mult))
        sign = lam

    estimate = sum(bits_of(base) * exponent for base, exponent in terms if abs(base) > 1)
    if estimate > bit_budget:
        raise ValueTooLarge(f"chromatic value needs about {estimate} bits (budget {bit_budget})")
    result = sign
    for base, exponent in terms:
        result *= base ** exponent
    return result
