import fractions
import math
import os
import typing

import ufpp

Rational = int | fractions.Fraction


class IntegerOverflowError(ArithmeticError):
    def __init__(self, value: int, operation: str):
        super().__init__(
            f"Integer overflow in '{operation}': {value} does not fit into "
            f"{ufpp.constants.INTEGER_BITS}-bit signed arithmetic."
        )


_INTEGER_LIMIT = 2 ** (ufpp.constants.INTEGER_BITS - 1)


def checked(value: int, operation: str = "arithmetic") -> int:
    """Return ``value`` unchanged or raise if it leaves the signed 64-bit range.

    :param value: The integer to check.
    :param operation: Name of the operation, used in the error message.

    **Example:**

    >>> from ufpp import utilities
    >>> utilities.checked(2**62)
    4611686018427387904
    """
    if not -_INTEGER_LIMIT <= value < _INTEGER_LIMIT:
        raise IntegerOverflowError(value, operation)
    return value


def checked_mul(a: int, b: int, operation: str = "multiplication") -> int:
    return checked(checked(a, operation) * checked(b, operation), operation)


def checked_add(a: int, b: int, operation: str = "addition") -> int:
    return checked(checked(a, operation) + checked(b, operation), operation)


def checked_sum(value_iterable: typing.Iterable[int], operation: str = "sum") -> int:
    total = 0
    for value in value_iterable:
        total = checked_add(total, value, operation)
    return total


def parse_rational(value: typing.Any) -> fractions.Fraction:
    """Convert ``"a/b"`` strings, integers and fractions to an exact rational.

    Floats are refused: every parameter of the solvers is compared exactly.
    """
    if isinstance(value, float):
        raise ValueError(
            f"Refused floating point value '{value}'; write rationals as 'a/b'."
        )
    try:
        return fractions.Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as error:
        raise ValueError(f"Can't parse '{value}' as a rational number.") from error


def power_of_two(exponent: int) -> fractions.Fraction:
    """Exact 2^exponent, negative exponents included."""
    if exponent >= 0:
        return fractions.Fraction(2**exponent)
    return fractions.Fraction(1, 2 ** (-exponent))


def floor_log2(value: int) -> int:
    if value < 1:
        raise ValueError(f"floor_log2 expects a positive integer, got {value}.")
    return value.bit_length() - 1


def sqrt_bounds(
    value: fractions.Fraction, precision_bits: int = 60
) -> tuple[fractions.Fraction, fractions.Fraction]:
    """Rational lower and upper bound of sqrt(value).

    Both bounds coincide if ``value`` is the square of a rational; otherwise
    they differ by at most 2^-precision_bits / denominator.
    """
    value = fractions.Fraction(value)
    if value < 0:
        raise ValueError(f"Can't take the square root of negative value {value}.")
    numerator_root = math.isqrt(value.numerator)
    denominator_root = math.isqrt(value.denominator)
    if (
        numerator_root * numerator_root == value.numerator
        and denominator_root * denominator_root == value.denominator
    ):
        root = fractions.Fraction(numerator_root, denominator_root)
        return root, root
    # sqrt(p / q) = sqrt(p * q) / q
    scale = 2**precision_bits
    scaled = value.numerator * value.denominator * scale * scale
    lower = math.isqrt(scaled)
    return (
        fractions.Fraction(lower, value.denominator * scale),
        fractions.Fraction(lower + 1, value.denominator * scale),
    )


def state_budget() -> int:
    """Live-state budget of the sweep dynamic program.

    Read at call time so that ``UFPP_STATE_BUDGET`` can be changed between
    runs of the same process.
    """
    raw_budget = os.environ.get(ufpp.constants.STATE_BUDGET_ENVIRONMENT_VARIABLE)
    if not raw_budget:
        return ufpp.constants.DEFAULT_STATE_BUDGET
    try:
        budget = int(raw_budget)
    except ValueError as error:
        raise ValueError(
            f"{ufpp.constants.STATE_BUDGET_ENVIRONMENT_VARIABLE} must be an integer, "
            f"got '{raw_budget}'."
        ) from error
    if budget < 1:
        raise ValueError(
            f"{ufpp.constants.STATE_BUDGET_ENVIRONMENT_VARIABLE} must be positive."
        )
    return budget
