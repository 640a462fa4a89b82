"""Rounding of tiny tasks inside one capacity group."""

from __future__ import annotations

import fractions
import math
import typing

import ufpp

__all__ = ("f_delta", "in_f_delta_domain", "demand_groups", "solve_tiny")


def in_f_delta_domain(delta_prime: ufpp.utilities.Rational) -> bool:
    """``0 < delta' <= (3 - sqrt(5)) / 2``, decided in exact arithmetic."""

    delta_prime = fractions.Fraction(delta_prime)
    distance = 3 - 2 * delta_prime
    return delta_prime > 0 and distance >= 0 and distance * distance >= 5


def f_delta(delta_prime: ufpp.utilities.Rational) -> fractions.Fraction:
    """Upper bound of ``(1 + sqrt(d')) / (1 - sqrt(d') - d')``.

    The bound is exact when ``d'`` is the square of a rational and otherwise
    exceeds the true value by far less than 2^-40.

    **Example:**

    >>> from ufpp import tiny_lp
    >>> tiny_lp.f_delta("1/4")
    Fraction(6, 1)
    """

    delta_prime = ufpp.utilities.parse_rational(delta_prime)
    if not in_f_delta_domain(delta_prime):
        raise ufpp.PreconditionError(
            f"delta' = {delta_prime} lies outside (0, (3 - sqrt(5)) / 2]."
        )
    _, root_upper = ufpp.utilities.sqrt_bounds(delta_prime)
    denominator = 1 - root_upper - delta_prime
    if denominator <= 0:
        raise ufpp.PreconditionError(f"delta' = {delta_prime} is too close to the domain edge.")
    return (1 + root_upper) / denominator


def demand_groups(
    task_sequence: typing.Sequence[ufpp.Task], delta_prime: fractions.Fraction
) -> list[list[ufpp.Task]]:
    """Runs of demand sorted tasks staying within a factor ``1 + sqrt(delta')``."""

    group_list: list[list[ufpp.Task]] = []
    for task in sorted(task_sequence, key=lambda task: (task.d, task.id)):
        if group_list:
            lowest = group_list[-1][0].d
            if (task.d - lowest) ** 2 <= lowest * lowest * delta_prime:
                group_list[-1].append(task)
                continue
        group_list.append([task])
    return group_list


def _repair(
    inst: ufpp.Instance,
    selected_set: set[int],
    capacities: typing.Sequence[ufpp.utilities.Rational],
    k: int,
):
    while True:
        report = ufpp.check_feasible(inst, selected_set, capacities)
        if report.feasible:
            return
        worst = max(
            report.violations,
            key=lambda violation: (violation.load - violation.capacity, -violation.edge),
        )
        dropped = min(
            (inst.task(task_id) for task_id in selected_set if inst.task(task_id).uses(worst.edge)),
            key=lambda task: (fractions.Fraction(task.w, task.d), task.id),
        )
        selected_set.discard(dropped.id)
        ufpp.constants.REPAIR_LOGGER.info(
            f"Group {k}: edge {worst.edge} carried {worst.load} > {worst.capacity}; "
            f"dropped task {dropped.id}."
        )


def solve_tiny(
    inst: ufpp.Instance,
    plan: ufpp.GroupPlan,
    k: int,
    tiny_ids: typing.Iterable[int],
    beta: typing.Optional[ufpp.utilities.Rational] = None,
    delta: typing.Optional[ufpp.utilities.Rational] = None,
) -> ufpp.GroupSolution:
    """(f(delta') / (1 - beta), beta)-approximative set of the tiny tasks of group ``k``.

    Tasks are grouped by demand. Every demand group gets a share of the
    modified capacity proportional to its mass in the relaxation and is then
    solved exactly as a uniform demand problem.
    """

    beta = fractions.Fraction(plan.beta if beta is None else beta)
    delta = plan.delta if delta is None else delta
    if delta is None:
        raise ufpp.PreconditionError("solve_tiny needs delta.")
    delta = fractions.Fraction(delta)
    if not 0 <= beta < 1:
        raise ufpp.PreconditionError(f"beta must lie in [0, 1), got {beta}.")
    if delta > (1 - beta) / ufpp.utilities.power_of_two(plan.ell):
        raise ufpp.PreconditionError(
            f"delta = {delta} exceeds (1 - beta) / 2^ell = "
            f"{(1 - beta) / ufpp.utilities.power_of_two(plan.ell)}."
        )
    delta_prime = delta / (1 - beta)
    alpha = f_delta(delta_prime) / (1 - beta)

    task_list = sorted((inst.task(task_id) for task_id in tiny_ids), key=lambda task: task.id)
    for task in task_list:
        if task.d > delta * inst.meta[task.id].b:
            raise ufpp.PreconditionError(f"Task {task.id} is not {delta}-small.")
    if not task_list:
        return ufpp.GroupSolution(k, frozenset(), alpha, beta)

    modified = ufpp.modified_capacities(inst, plan, k, beta)
    group_list = demand_groups(task_list, delta_prime)
    if len(group_list) > 1:
        x = ufpp.tiny_lp.lp_opt(inst, [task.id for task in task_list], modified).x
        mass_list = [[fractions.Fraction(0)] * inst.m for _ in group_list]
        for mass, group in zip(mass_list, group_list):
            for task in group:
                for edge in task.edges:
                    mass[edge] += x[task.id] * task.d
        total_mass = [sum(mass[edge] for mass in mass_list) for edge in range(inst.m)]

    selected_set: set[int] = set()
    for index, group in enumerate(group_list):
        demand = max(task.d for task in group)
        multiplicity_list = []
        for edge in range(inst.m):
            if len(group_list) == 1:
                share = modified[edge]
            elif total_mass[edge]:
                share = modified[edge] * mass_list[index][edge] / total_mass[edge]
            else:
                share = fractions.Fraction(modified[edge], len(group_list))
            multiplicity_list.append(max(0, math.floor(share / demand)))
        selected_set |= ufpp.tiny_lp.solve_uniform(
            multiplicity_list,
            [ufpp.tiny_lp.Interval(task.s, task.t, task.w, task.id) for task in group],
        )
        ufpp.constants.LOGGER.debug(
            f"Group {k}: demand class {index} with {len(group)} tasks and demand {demand}."
        )
    _repair(inst, selected_set, modified, k)
    return ufpp.GroupSolution(k, frozenset(selected_set), alpha, beta)
