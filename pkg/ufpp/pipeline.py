"""Algorithm dispatch and the combined approximation algorithms."""

from __future__ import annotations

import dataclasses
import fractions
import typing

import ufpp

__all__ = (
    "UnknownAlgorithmError",
    "SolveConfig",
    "solve_main",
    "solve_fast",
    "solve",
)

FAST_DELTA = fractions.Fraction(1, 9)
FAST_ELL = 3
FAST_Q = 5


class UnknownAlgorithmError(ufpp.UfppError, ValueError):
    def __init__(self, name: str, known_tuple: tuple[str, ...]):
        super().__init__(
            f"Unknown algorithm '{name}'. Choose one of {', '.join(known_tuple)}."
        )


@dataclasses.dataclass(frozen=True)
class SolveConfig:
    algorithm: str = "main"
    eps: fractions.Fraction = fractions.Fraction(1)
    gamma: fractions.Fraction = fractions.Fraction(1, 2)
    k_large: int = 2
    beta_aug: fractions.Fraction = fractions.Fraction(1, 2)
    ell: typing.Optional[int] = None
    q: typing.Optional[int] = None
    exact_method: str = "sweep"

    def __post_init__(self):
        for field in ("eps", "gamma", "beta_aug"):
            object.__setattr__(
                self, field, ufpp.utilities.parse_rational(getattr(self, field))
            )
        if self.algorithm not in ufpp.constants.ALGORITHM_TUPLE:
            raise UnknownAlgorithmError(self.algorithm, ufpp.constants.ALGORITHM_TUPLE)
        if self.exact_method not in ufpp.constants.EXACT_METHOD_TUPLE:
            raise UnknownAlgorithmError(self.exact_method, ufpp.constants.EXACT_METHOD_TUPLE)
        if self.eps <= 0:
            raise ufpp.PreconditionError(f"eps must be positive, got {self.eps}.")
        if not 0 < self.gamma <= 1:
            raise ufpp.PreconditionError(f"gamma must lie in (0, 1], got {self.gamma}.")
        if self.k_large < 2:
            raise ufpp.PreconditionError(f"k_large must be >= 2, got {self.k_large}.")
        if self.beta_aug <= 0:
            raise ufpp.PreconditionError(f"beta_aug must be positive, got {self.beta_aug}.")


def _split(inst: ufpp.Instance, delta: fractions.Fraction) -> tuple[ufpp.Instance, ufpp.Instance]:
    small, large = ufpp.classify(inst, delta)
    return inst.restrict(small), inst.restrict(large)


def solve_main(
    inst: ufpp.Instance,
    eps: ufpp.utilities.Rational = 1,
    ell: typing.Optional[int] = None,
    q: typing.Optional[int] = None,
) -> ufpp.Solution:
    """(7 + eps)-approximation: best of the 1/2-small and the 1/2-large side."""

    small_inst, large_inst = _split(inst, fractions.Fraction(1, 2))
    ufpp.constants.LOGGER.info(
        f"Main: {small_inst.n} small and {large_inst.n} large tasks, eps={eps}."
    )
    small = ufpp.solve_small(small_inst, eps, fractions.Fraction(1, 2), ell, q)
    large = ufpp.its.solve_large(large_inst, 2)
    return ufpp.combine_best([small, large], inst).retag("main")


def solve_fast(inst: ufpp.Instance) -> ufpp.Solution:
    """Constant factor variant without the medium task dynamic program.

    1/9-large tasks go to the ITS solver, the 1/9-small tasks through the
    grouping framework with ``l = 3``, ``q = 5`` and only tiny task rounding.
    """

    small_inst, large_inst = _split(inst, FAST_DELTA)
    ufpp.constants.LOGGER.info(
        f"Fast: {small_inst.n} small and {large_inst.n} large tasks."
    )
    plan = ufpp.group(small_inst, FAST_ELL, FAST_Q, delta=FAST_DELTA)

    def group_solver(inst, plan, k, tiny_ids, other_ids):
        if other_ids:
            raise ufpp.PreconditionError(f"Group {k} holds tasks that aren't 1/9-small.")
        return ufpp.tiny_lp.solve_tiny(inst, plan, k, tiny_ids)

    small = ufpp.solve_groups(small_inst, plan, group_solver, algorithm_tag="fast-small")
    large = ufpp.its.solve_large(large_inst, 9)
    return ufpp.combine_best([small, large], inst).retag("fast")


def solve(inst: ufpp.Instance, config: typing.Optional[SolveConfig] = None) -> ufpp.Solution:
    """Run the configured algorithm and check the result before returning it."""

    if config is None:
        config = SolveConfig()
    ufpp.constants.LOGGER.info(f"Solve {inst.n} tasks on {inst.m} edges with {config}.")
    match config.algorithm:
        case "main":
            solution = solve_main(inst, config.eps, config.ell, config.q)
        case "fast":
            solution = solve_fast(inst)
        case "large":
            solution = ufpp.its.solve_large(inst, config.k_large)
        case "small":
            solution = ufpp.solve_small(inst, config.eps, config.gamma, config.ell, config.q)
        case "ra":
            solution = ufpp.solve_ra(inst, config.eps, config.beta_aug, config.ell, config.q)
        case "exact":
            solution = ufpp.oracle.exact(inst, config.exact_method).to_solution()
        case _:
            raise UnknownAlgorithmError(config.algorithm, ufpp.constants.ALGORITHM_TUPLE)
    solution.validate(inst)
    return solution
