"""
Exact Number Helpers
Power products for astronomically large counts, integrality checks and formula variants.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple, Union
import logging

from src.errors import NonIntegerResult, ValueTooLarge

logger = logging.getLogger(__name__)

# Default expansion limit for counts, in bits
DEFAULT_BIT_BUDGET = 2 ** 20


class Variant(str, Enum):
    """Which reading of a formula to evaluate."""
    PUBLISHED = "published"
    CORRECTED = "corrected"


class ChromaticVariant(str, Enum):
    PUBLISHED = "published"
    BLOCK = "block"


def as_integer(value: Union[Fraction, int], what: str) -> int:
    """Return value as int, raising NonIntegerResult when it is not integral."""
    value = Fraction(value)
    if value.denominator != 1:
        raise NonIntegerResult(f"{what} evaluated to the non-integer {value}")
    return value.numerator


def bits_of(value: Union[Fraction, int]) -> int:
    value = Fraction(value)
    return max(abs(value.numerator).bit_length(), value.denominator.bit_length())


@dataclass(frozen=True)
class PowerProduct:
    """Product of base**exponent terms, kept unexpanded until asked for."""
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for base, exponent in self.factors:
            if exponent < 0:
                raise ValueError(f"negative exponent {exponent} for base {base}")

    @classmethod
    def power(cls, base: int, exponent: int) -> "PowerProduct":
        return cls(((base, exponent),))

    @classmethod
    def zero(cls) -> "PowerProduct":
        return cls(((0, 1),))

    @property
    def is_zero(self) -> bool:
        return any(base == 0 and exponent > 0 for base, exponent in self.factors)

    def exponent(self, base: int) -> int:
        return sum(e for b, e in self.factors if b == base)

    def bit_estimate(self) -> int:
        if self.is_zero:
            return 0
        return sum(e * abs(b).bit_length() for b, e in self.factors if abs(b) > 1) + 1

    def value(self, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
        """Expanded integer value; refuses when it would exceed the bit budget."""
        if self.is_zero:
            return 0
        estimate = self.bit_estimate()
        if estimate > bit_budget:
            raise ValueTooLarge(f"{self} needs about {estimate} bits (budget {bit_budget})")
        result = 1
        for base, exponent in self.factors:
            result *= base ** exponent
        return result

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if not self.factors:
            return "1"
        return "*".join(f"{b}^{e}" for b, e in self.factors)
