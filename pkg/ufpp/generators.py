"""Reproducible random instances.

All randomness comes from :class:`Xorshift64`, a 64-bit shift-register
generator with the update

    x ^= x << 13; x ^= x >> 7; x ^= x << 17     (mod 2**64)

seeded through one splitmix64 step. An integer in ``[low, high]`` is
``low + next() % (high - low + 1)``. Draw order per task is start, end,
demand (with redraws), profit, so corpora are identical in every language
following these rules.
"""

from __future__ import annotations

import fractions
import math
import typing

import ufpp

__all__ = (
    "Xorshift64",
    "PROFIT_STYLE_TUPLE",
    "gen_random",
    "gen_large",
    "gen_small",
    "gen_unit_demand",
)

MASK = (1 << 64) - 1
DEMAND_REDRAW_COUNT = 8
UNIFORM_PROFIT_MAX = 100
PROFIT_STYLE_TUPLE = ("uniform", "proportional")


class Xorshift64(object):
    """Deterministic 64-bit PRNG.

    **Example:**

    >>> from ufpp import generators
    >>> first, second = generators.Xorshift64(7), generators.Xorshift64(7)
    >>> [first.next() for _ in range(3)] == [second.next() for _ in range(3)]
    True
    """

    def __init__(self, seed: int):
        z = (seed + 0x9E3779B97F4A7C15) & MASK
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        self.state = (z ^ (z >> 31)) or 0x9E3779B97F4A7C15

    def next(self) -> int:
        x = self.state
        x ^= (x << 13) & MASK
        x ^= x >> 7
        x ^= (x << 17) & MASK
        self.state = x
        return x

    def randint(self, low: int, high: int) -> int:
        if high < low:
            raise ufpp.PreconditionError(f"Empty range [{low}, {high}].")
        return low + self.next() % (high - low + 1)


def _check_counts(**value_dict: int):
    for name, value in value_dict.items():
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ufpp.PreconditionError(f"{name} must be a positive integer, got {value}.")


def _profit(rng: Xorshift64, profit_style: str, s: int, t: int, d: int) -> int:
    if profit_style == "uniform":
        return rng.randint(1, UNIFORM_PROFIT_MAX)
    return ufpp.utilities.checked_mul(d, t - s, "profit")


def _generate(
    n: int,
    m: int,
    capacity_range: tuple[int, int],
    demand_range: typing.Callable[[int], tuple[int, int]],
    profit_style: str,
    seed: int,
) -> ufpp.Instance:
    if profit_style not in PROFIT_STYLE_TUPLE:
        raise ufpp.PreconditionError(
            f"Unknown profit style '{profit_style}'; use one of {', '.join(PROFIT_STYLE_TUPLE)}."
        )
    rng = Xorshift64(seed)
    capacity_tuple = tuple(rng.randint(*capacity_range) for _ in range(m))
    task_list = []
    for task_id in range(n):
        s = rng.randint(0, m - 1)
        t = rng.randint(s + 1, m)
        b = min(capacity_tuple[s:t])
        low, high = demand_range(b)
        d = rng.randint(low, high)
        for _ in range(DEMAND_REDRAW_COUNT):
            if d <= b:
                break
            d = rng.randint(low, high)
        d = min(d, b)
        task_list.append(ufpp.Task(s, t, d, _profit(rng, profit_style, s, t, d), task_id))
    return ufpp.Instance(m, capacity_tuple, tuple(task_list))


def gen_random(
    n: int,
    m: int,
    maxcap: int,
    maxdemand: int,
    profit_style: str = "uniform",
    seed: int = 0,
) -> ufpp.Instance:
    """Random instance with capacities in ``[1, maxcap]`` and demands in ``[1, maxdemand]``.

    Undeliverable demands are redrawn a few times and then clamped to the
    bottleneck capacity, so every task is deliverable.
    """

    _check_counts(n=n, m=m, maxcap=maxcap, maxdemand=maxdemand)
    return _generate(n, m, (1, maxcap), lambda b: (1, maxdemand), profit_style, seed)


def gen_large(
    n: int,
    m: int,
    maxcap: int,
    k: int = 2,
    profit_style: str = "uniform",
    seed: int = 0,
) -> ufpp.Instance:
    """Random instance whose tasks are all 1/k-large (``k * d > b``)."""

    _check_counts(n=n, m=m, maxcap=maxcap)
    if k < 2:
        raise ufpp.PreconditionError(f"k must be >= 2, got {k}.")
    return _generate(n, m, (1, maxcap), lambda b: (b // k + 1, b), profit_style, seed)


def gen_small(
    n: int,
    m: int,
    maxcap: int,
    delta: ufpp.utilities.Rational = fractions.Fraction(1, 2),
    profit_style: str = "uniform",
    seed: int = 0,
) -> ufpp.Instance:
    """Random instance whose tasks are all delta-small (``d <= delta * b``).

    Capacities are drawn from ``[ceil(1 / delta), maxcap]`` so that every
    edge admits a demand of one.
    """

    _check_counts(n=n, m=m, maxcap=maxcap)
    delta = ufpp.utilities.parse_rational(delta)
    if not 0 < delta <= 1:
        raise ufpp.PreconditionError(f"delta must lie in (0, 1], got {delta}.")
    low_capacity = math.ceil(1 / delta)
    if maxcap < low_capacity:
        raise ufpp.PreconditionError(
            f"maxcap={maxcap} leaves no room for {delta}-small tasks (need >= {low_capacity})."
        )
    return _generate(
        n,
        m,
        (low_capacity, maxcap),
        lambda b: (1, math.floor(delta * b)),
        profit_style,
        seed,
    )


def gen_unit_demand(n: int, m: int, maxcap: int, seed: int = 0) -> ufpp.Instance:
    """Random instance where every demand is one (interval scheduling with capacities)."""

    _check_counts(n=n, m=m, maxcap=maxcap)
    return _generate(n, m, (1, maxcap), lambda b: (1, 1), "uniform", seed)
