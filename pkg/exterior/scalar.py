# =============================================================================
# exterior/scalar.py
# =============================================================================
# 🎯 Purpose:
# The two scalar modes every form operation runs in: exact rationals
# (fractions.Fraction) for identity proofs and float64 for analytic checks.
#
# ✅ Includes:
# - ScalarMode enum and coercion helpers
# - Tolerance-aware zero tests (float comparisons never use raw equality)
# - Exact square roots of rational squares
# =============================================================================

# -----------------------------------------------------------------------------
# 📚 Imports
# -----------------------------------------------------------------------------

import math
from enum import Enum                       # Fixed set of scalar modes
from fractions import Fraction              # Exact rational arithmetic
from typing import Union

from models.errors import ContractViolation


# -----------------------------------------------------------------------------
# 🔢 Modes and defaults
# -----------------------------------------------------------------------------

class ScalarMode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


Scalar = Union[Fraction, float]

DEFAULT_TOLERANCE = 1e-10


def to_scalar(value, mode: ScalarMode) -> Scalar:
    """Coerce ``value`` (int, Fraction, float or a "p/q" string) into ``mode``."""
    if mode == ScalarMode.EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            # binary floats are exact rationals; keep every bit
            return Fraction(value)
        return Fraction(value)
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


def mode_of(value) -> ScalarMode:
    return ScalarMode.FLOAT if isinstance(value, float) else ScalarMode.EXACT


def combine(*modes: ScalarMode) -> ScalarMode:
    """Float wins: any float operand makes the result float."""
    return ScalarMode.FLOAT if ScalarMode.FLOAT in modes else ScalarMode.EXACT


def zero(mode: ScalarMode) -> Scalar:
    return Fraction(0) if mode == ScalarMode.EXACT else 0.0


def one(mode: ScalarMode) -> Scalar:
    return Fraction(1) if mode == ScalarMode.EXACT else 1.0


def is_zero(value: Scalar, tolerance: float | None = None) -> bool:
    if isinstance(value, float):
        tol = DEFAULT_TOLERANCE if tolerance is None else tolerance
        return abs(value) <= tol
    return value == 0


def magnitude(value: Scalar) -> float:
    """Absolute value as a float, for residual reporting."""
    return float(abs(value))


def exact_sqrt(value: Fraction) -> Fraction:
    """Square root of a rational that is a perfect square of a rational.

    Raises:
        ContractViolation: if ``value`` is negative or not a rational square.
    """
    value = Fraction(value)
    if value < 0:
        raise ContractViolation(f"square root of negative value {value}")
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ContractViolation(
            f"{value} is not a rational square; orthonormalize in float mode instead"
        )
    return Fraction(rn, rd)


def sqrt(value: Scalar, mode: ScalarMode) -> Scalar:
    if mode == ScalarMode.EXACT:
        return exact_sqrt(value)
    return math.sqrt(float(value))


def rational_root(value: Fraction, n: int) -> Fraction | None:
    """The positive n-th root of a positive rational, or None when it is irrational."""
    value = Fraction(value)
    if value <= 0:
        return None
    roots = []
    for part in (value.numerator, value.denominator):
        try:
            r = round(part ** (1.0 / n))
        except OverflowError:
            return None
        match = next((c for c in (r - 1, r, r + 1) if c > 0 and c ** n == part), None)
        if match is None:
            return None
        roots.append(match)
    return Fraction(roots[0], roots[1])
