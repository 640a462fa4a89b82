"""Exact sweep over path vertices for tasks with few crossings per edge.

The state at edge ``v`` is the set of selected tasks using ``v``. Moving to
vertex ``v`` closes every task ending there and branches on the subsets of
tasks starting there. The number of live states is bounded by a budget
(``UFPP_STATE_BUDGET``).
"""

from __future__ import annotations

import collections
import fractions
import math
import typing

import ufpp

__all__ = (
    "StateBudgetExceededError",
    "solve_exact_bounded",
    "two_partition",
    "solve_medium",
)


class StateBudgetExceededError(ufpp.ResourceLimitError):
    def __init__(self, vertex: int, state_count: int, budget: int):
        self.vertex = vertex
        self.state_count = state_count
        self.budget = budget
        super().__init__(
            f"Sweep at vertex {vertex} holds {state_count} live states, more than the "
            f"budget of {budget} (set {ufpp.constants.STATE_BUDGET_ENVIRONMENT_VARIABLE} "
            "to raise it). The instance is too large for the exact dynamic program."
        )


# (profit, chain of opened task tuples)
StateValue = tuple[int, typing.Optional[tuple]]


def solve_exact_bounded(
    inst: ufpp.Instance,
    task_ids: typing.Optional[typing.Iterable[int]] = None,
    capacities: typing.Optional[typing.Sequence[ufpp.utilities.Rational]] = None,
    crossing_bound: typing.Optional[int] = None,
    algorithm_tag: str = "exact",
) -> ufpp.Solution:
    """Optimal feasible subset of ``task_ids`` under ``capacities``.

    :param task_ids: Tasks to choose from, defaults to all tasks.
    :param capacities: Capacity vector, defaults to the instance capacities.
        Rational entries are allowed.
    :param crossing_bound: Maximum number of selected tasks on any edge,
        ``None`` for no bound.
    :param algorithm_tag: Tag of the returned solution.
    """

    if capacities is None:
        capacities = inst.capacities
    if task_ids is None:
        task_ids = inst.task_ids
    task_list = sorted((inst.task(task_id) for task_id in task_ids), key=lambda task: task.id)
    starting_at = collections.defaultdict(list)
    for task in task_list:
        starting_at[task.s].append(task)
    budget = ufpp.utilities.state_budget()

    # Open task tuple -> (profit, opened chain); insertion order breaks ties.
    state_dict: dict[tuple[int, ...], StateValue] = {(): (0, None)}
    peak_state_count = 1
    for vertex in range(inst.m + 1):
        closed_state_dict: dict[tuple[int, ...], StateValue] = {}
        for key, (profit, chain) in state_dict.items():
            new_key = tuple(task_id for task_id in key if inst.task(task_id).t != vertex)
            if new_key not in closed_state_dict or closed_state_dict[new_key][0] < profit:
                closed_state_dict[new_key] = (profit, chain)
        if vertex == inst.m:
            state_dict = closed_state_dict
            break

        capacity = capacities[vertex]
        candidate_list = starting_at.get(vertex, [])
        state_dict = {}

        def store(key: tuple[int, ...], value: StateValue):
            if key not in state_dict or state_dict[key][0] < value[0]:
                state_dict[key] = value
                if len(state_dict) > budget:
                    raise StateBudgetExceededError(vertex, len(state_dict), budget)

        for key, (profit, chain) in closed_state_dict.items():
            load = sum(inst.task(task_id).d for task_id in key)
            if load > capacity or (crossing_bound is not None and len(key) > crossing_bound):
                continue

            def branch(index: int, load: int, opened: tuple[int, ...], gain: int):
                if index == len(candidate_list):
                    new_key = tuple(sorted(key + opened))
                    new_chain = (opened, chain) if opened else chain
                    store(new_key, (ufpp.utilities.checked_add(profit, gain, "profit"), new_chain))
                    return
                branch(index + 1, load, opened, gain)
                task = candidate_list[index]
                if load + task.d <= capacity and (
                    crossing_bound is None or len(key) + len(opened) < crossing_bound
                ):
                    branch(index + 1, load + task.d, opened + (task.id,), gain + task.w)

            branch(0, load, (), 0)
        peak_state_count = max(peak_state_count, len(state_dict))

    profit, chain = state_dict[()]
    selected_list: list[int] = []
    while chain is not None:
        opened, chain = chain
        selected_list.extend(opened)
    ufpp.constants.LOGGER.debug(
        f"Sweep over {len(task_list)} tasks peaked at {peak_state_count} live states."
    )
    return ufpp.Solution(frozenset(selected_list), profit, algorithm_tag)


def two_partition(
    inst: ufpp.Instance,
    plan: ufpp.GroupPlan,
    k: int,
    task_ids: typing.Iterable[int],
    beta: typing.Optional[ufpp.utilities.Rational] = None,
) -> tuple[frozenset[int], frozenset[int]]:
    """Split a feasible group solution into two sets meeting the modified capacities.

    Tasks are taken in order of their start vertex and go to the first half
    that still fits.
    """

    if beta is None:
        beta = plan.beta
    modified = ufpp.modified_capacities(inst, plan, k, beta)
    half_list: list[list[int]] = [[], []]
    load_list = [[0] * inst.m, [0] * inst.m]
    for task in sorted(
        (inst.task(task_id) for task_id in task_ids), key=lambda task: (task.s, task.id)
    ):
        for half, load in zip(half_list, load_list):
            if all(load[edge] + task.d <= modified[edge] for edge in task.edges):
                half.append(task.id)
                for edge in task.edges:
                    load[edge] += task.d
                break
        else:
            raise ufpp.PreconditionError(
                f"Task {task.id} fits into neither half of group {k} with beta={beta}; "
                "the group solution is infeasible or contains tasks that aren't "
                f"(1-2*beta)-small."
            )
    return frozenset(half_list[0]), frozenset(half_list[1])


def solve_medium(
    inst: ufpp.Instance,
    plan: ufpp.GroupPlan,
    k: int,
    medium_ids: typing.Iterable[int],
    beta: typing.Optional[ufpp.utilities.Rational] = None,
    exact_cache: typing.Optional[dict] = None,
) -> ufpp.GroupSolution:
    """(2, beta)-approximation for the delta-large tasks of group ``k``.

    :param exact_cache: Optional dict reusing optima of equal task sets
        across groups.
    """

    if beta is None:
        beta = plan.beta
    medium_id_set = frozenset(medium_ids)
    if plan.delta is None:
        raise ufpp.PreconditionError("Group plan has no delta; can't bound crossings.")
    crossing_bound = math.ceil(
        ufpp.utilities.power_of_two(plan.ell + 1) / fractions.Fraction(plan.delta)
    )
    if exact_cache is None:
        exact_cache = {}
    cache_key = (medium_id_set, crossing_bound)
    try:
        optimum = exact_cache[cache_key]
    except KeyError:
        optimum = exact_cache[cache_key] = solve_exact_bounded(
            inst, medium_id_set, crossing_bound=crossing_bound, algorithm_tag="medium"
        )
    first, second = two_partition(inst, plan, k, optimum.selected, beta)
    selected = first if inst.profit(first) >= inst.profit(second) else second
    ufpp.constants.LOGGER.debug(
        f"Group {k}: {len(medium_id_set)} medium tasks, optimum {optimum.profit}, "
        f"kept half with profit {inst.profit(selected)}."
    )
    return ufpp.GroupSolution(k, selected, fractions.Fraction(2), fractions.Fraction(beta))
