"""Truncated q-expansions with exact rational coefficients.

A QExpansion stores the coefficients of q^1 .. q^B; the constant term is
never tracked (everything here is a cusp expansion or is only used through
coefficients of positive index).  Arithmetic keeps the minimum precision of
its operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QExpansion:
    coeffs: tuple  # coefficient of q^(i+1) at position i; ints or Fractions
    weight: int
    level: int

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def coefficient(self, n: int):
        """Coefficient of q^n, 1 <= n <= precision."""
        if not 1 <= n <= self.precision:
            raise ValueError(f"coefficient q^{n} outside known precision {self.precision}")
        return self.coeffs[n - 1]

    def order(self) -> int | None:
        """Index of the first non-zero coefficient, or None if the truncation
        is identically zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i + 1
        return None

    def is_zero(self) -> bool:
        return self.order() is None

    def truncate(self, precision: int) -> "QExpansion":
        if precision > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {precision}")
        return QExpansion(self.coeffs[:precision], self.weight, self.level)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ValueError("cannot add expansions of different weights")
        b = min(self.precision, other.precision)
        coeffs = tuple(x + y for x, y in zip(self.coeffs[:b], other.coeffs[:b]))
        return QExpansion(coeffs, self.weight, max(self.level, other.level))

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "QExpansion":
        return QExpansion(tuple(scalar * c for c in self.coeffs), self.weight, self.level)

    def agrees_with(self, other: "QExpansion", upto: int | None = None) -> bool:
        """Coefficientwise equality up to min precision (or an explicit bound)."""
        b = min(self.precision, other.precision)
        if upto is not None:
            if upto > b:
                raise ValueError("comparison bound exceeds known precision")
            b = upto
        return all(Fraction(x) == Fraction(y) for x, y in zip(self.coeffs[:b], other.coeffs[:b]))


def from_coefficient_list(coeffs, weight: int, level: int) -> QExpansion:
    return QExpansion(tuple(coeffs), weight, level)
