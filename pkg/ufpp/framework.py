"""Capacity range grouping.

Group ``F^{k,l}`` holds every task with ``2^k <= b(i) < 2^{k+l}``; each task
lies in exactly ``l`` groups. Groups whose indices are ``l + q`` apart are
solved against capacities reduced by ``beta * 2^k`` and their union is
feasible. The best of the ``l + q`` offsets is returned.
"""

from __future__ import annotations

import dataclasses
import fractions
import math
import typing

import ufpp

__all__ = (
    "GroupPlan",
    "GroupSolution",
    "SmallParameters",
    "RaParameters",
    "group",
    "group_edges",
    "modified_capacities",
    "check_modified",
    "combine_offsets",
    "choose_delta_prime",
    "choose_small_parameters",
    "choose_ra_parameters",
    "inflated_capacities",
    "solve_groups",
    "solve_small",
    "solve_ra",
)


@dataclasses.dataclass(frozen=True)
class GroupPlan:
    ell: int
    q: int
    beta: fractions.Fraction
    groups: dict[int, frozenset[int]]
    delta: typing.Optional[fractions.Fraction] = None

    @property
    def period(self) -> int:
        return self.ell + self.q

    @property
    def occupied(self) -> tuple[int, ...]:
        return tuple(sorted(self.groups))

    def offsets(self, c: int) -> tuple[int, ...]:
        """Occupied group indices ``k`` with ``k = c mod (l + q)``."""

        return tuple(k for k in self.occupied if k % self.period == c)

    def members(self, k: int) -> frozenset[int]:
        return self.groups.get(k, frozenset())


@dataclasses.dataclass(frozen=True)
class GroupSolution:
    k: int
    selected: frozenset[int]
    alpha: fractions.Fraction
    beta: fractions.Fraction


def group(
    inst: ufpp.Instance,
    ell: int,
    q: int = 2,
    beta: typing.Optional[ufpp.utilities.Rational] = None,
    delta: typing.Optional[ufpp.utilities.Rational] = None,
) -> GroupPlan:
    """Group tasks by bottleneck capacity.

    Windows reach below index 0 for tasks with ``b < 2^(ell-1)``, so every
    task lies in exactly ``ell`` groups whatever its capacity.

    :param ell: Window width, every task ends up in ``ell`` groups.
    :param q: Gap between combined groups.
    :param beta: Reserved capacity fraction, defaults to ``2^(1-q)``.
    :param delta: Threshold between tiny and medium tasks.

    **Example:**

    >>> import ufpp
    >>> inst = ufpp.Instance(1, (8,), (ufpp.Task(0, 1, 1, 1, 0),))
    >>> ufpp.group(inst, 3).occupied
    (1, 2, 3)
    """

    if ell < 1 or q < 1:
        raise ufpp.PreconditionError(f"Need ell >= 1 and q >= 1, got ell={ell}, q={q}.")
    if beta is None:
        beta = ufpp.utilities.power_of_two(1 - q)
    group_dict: dict[int, set[int]] = {}
    for task in inst.tasks:
        top = ufpp.utilities.floor_log2(inst.meta[task.id].b)
        for k in range(top - ell + 1, top + 1):
            group_dict.setdefault(k, set()).add(task.id)
    return GroupPlan(
        ell,
        q,
        fractions.Fraction(beta),
        {k: frozenset(member_set) for k, member_set in group_dict.items()},
        None if delta is None else fractions.Fraction(delta),
    )


def group_edges(inst: ufpp.Instance, plan: GroupPlan, k: int) -> frozenset[int]:
    return frozenset(
        edge for task_id in plan.members(k) for edge in inst.task(task_id).edges
    )


def modified_capacities(
    inst: ufpp.Instance,
    plan: GroupPlan,
    k: int,
    beta: typing.Optional[ufpp.utilities.Rational] = None,
) -> tuple[ufpp.utilities.Rational, ...]:
    """``u_e - beta * 2^k`` on edges used by group ``k``, ``u_e`` elsewhere."""

    if beta is None:
        beta = plan.beta
    reserve = fractions.Fraction(beta) * ufpp.utilities.power_of_two(k)
    edge_set = group_edges(inst, plan, k)
    return tuple(
        capacity - reserve if edge in edge_set else capacity
        for edge, capacity in enumerate(inst.capacities)
    )


def check_modified(
    inst: ufpp.Instance,
    plan: GroupPlan,
    k: int,
    selected: typing.Iterable[int],
    beta: typing.Optional[ufpp.utilities.Rational] = None,
) -> bool:
    selected = frozenset(selected)
    if not selected <= plan.members(k):
        raise ufpp.PreconditionError(f"Selected tasks {sorted(selected - plan.members(k))} aren't in group {k}.")
    return ufpp.check_feasible(
        inst, selected, modified_capacities(inst, plan, k, beta)
    ).feasible


def combine_offsets(
    inst: ufpp.Instance,
    plan: GroupPlan,
    per_k: typing.Mapping[int, GroupSolution],
    capacities: typing.Optional[typing.Sequence[ufpp.utilities.Rational]] = None,
    algorithm_tag: str = "framework",
) -> ufpp.Solution:
    """Union of the group solutions of the best offset ``c`` (smallest on ties)."""

    for k, group_solution in per_k.items():
        if not check_modified(inst, plan, k, group_solution.selected, group_solution.beta):
            raise ufpp.PreconditionError(
                f"Solution of group {k} breaks its modified capacity constraint."
            )
    best_c, best_selected, best_profit = 0, frozenset(), -1
    for c in range(plan.period):
        selected = frozenset().union(
            *(per_k[k].selected for k in plan.offsets(c) if k in per_k)
        )
        profit = inst.profit(selected)
        if profit > best_profit:
            best_c, best_selected, best_profit = c, selected, profit
    ufpp.constants.LOGGER.debug(
        f"Best offset c={best_c} of {plan.period} with profit {best_profit}."
    )
    report = ufpp.check_feasible(inst, best_selected, capacities)
    if not report.feasible:
        raise ufpp.InfeasibleSolutionError(report, f"union of offset {best_c}")
    return ufpp.Solution.from_selection(inst, best_selected, algorithm_tag)


@dataclasses.dataclass(frozen=True)
class SmallParameters:
    eps: fractions.Fraction
    eps_prime: fractions.Fraction
    q: int
    beta: fractions.Fraction
    ell: int
    delta_prime: fractions.Fraction
    delta: fractions.Fraction


@dataclasses.dataclass(frozen=True)
class RaParameters:
    eps: fractions.Fraction
    eps_prime: fractions.Fraction
    q: int
    ell: int
    augmentation: fractions.Fraction
    delta_prime: fractions.Fraction
    delta: fractions.Fraction
    beta: fractions.Fraction = fractions.Fraction(0)


def choose_delta_prime(eps_prime: fractions.Fraction) -> fractions.Fraction:
    """Largest ``a / 2^j`` (``j >= 10``, smallest ``j`` first) with ``f(a / 2^j) <= 1 + eps'``."""

    denominator = 1024
    while True:
        best = None
        a = 1
        while True:
            candidate = fractions.Fraction(a, denominator)
            if not ufpp.tiny_lp.in_f_delta_domain(candidate):
                break
            try:
                value = ufpp.tiny_lp.f_delta(candidate)
            except ufpp.PreconditionError:
                break
            if value > 1 + eps_prime:
                break
            best = candidate
            a += 1
        if best is not None:
            return best
        denominator *= 2


def _check_positive(eps: fractions.Fraction):
    if eps <= 0:
        raise ufpp.PreconditionError(f"eps must be positive, got {eps}.")


def choose_small_parameters(
    eps: ufpp.utilities.Rational,
    gamma: ufpp.utilities.Rational,
    ell: typing.Optional[int] = None,
    q: typing.Optional[int] = None,
) -> SmallParameters:
    """Constants for the (3 + eps)-approximation of (1 - gamma)-small tasks.

    ``ell`` and ``q`` override the chosen values.

    **Example:**

    >>> import ufpp
    >>> parameters = ufpp.choose_small_parameters(1, "1/2")
    >>> parameters.q, parameters.ell, parameters.beta
    (5, 40, Fraction(1, 16))
    """

    eps, gamma = fractions.Fraction(eps), fractions.Fraction(gamma)
    _check_positive(eps)
    if not 0 < gamma <= 1:
        raise ufpp.PreconditionError(f"gamma must lie in (0, 1], got {gamma}.")
    eps_prime = eps / 8
    while True:
        chosen_q = 2
        while True:
            beta = ufpp.utilities.power_of_two(1 - chosen_q)
            if 1 / (1 - beta) <= 1 + eps_prime and 2 * beta <= gamma:
                break
            chosen_q += 1
        chosen_ell = math.ceil(chosen_q / eps_prime)
        if (2 + (1 + eps_prime) / (1 - beta)) * fractions.Fraction(
            chosen_ell + chosen_q, chosen_ell
        ) <= 3 + eps:
            break
        eps_prime /= 2
    if q is not None:
        chosen_q = q
        beta = ufpp.utilities.power_of_two(1 - q)
        if not (q >= 2 and 2 * beta <= gamma):
            raise ufpp.PreconditionError(f"q={q} leaves tasks that aren't (1 - 2 beta)-small.")
    if ell is not None:
        chosen_ell = ell
    delta_prime = choose_delta_prime(eps_prime)
    delta = min((1 - beta) * delta_prime, (1 - beta) / ufpp.utilities.power_of_two(chosen_ell))
    return SmallParameters(eps, eps_prime, chosen_q, beta, chosen_ell, delta_prime, delta)


def choose_ra_parameters(
    eps: ufpp.utilities.Rational,
    beta_aug: ufpp.utilities.Rational,
    ell: typing.Optional[int] = None,
    q: typing.Optional[int] = None,
) -> RaParameters:
    """Constants for the (2 + eps)-approximation with capacities ``u (1 + beta_aug)``.

    **Example:**

    >>> import ufpp
    >>> parameters = ufpp.choose_ra_parameters(1, "1/2")
    >>> parameters.q, parameters.ell
    (3, 8)
    """

    eps, beta_aug = fractions.Fraction(eps), fractions.Fraction(beta_aug)
    _check_positive(eps)
    if beta_aug <= 0:
        raise ufpp.PreconditionError(f"beta_aug must be positive, got {beta_aug}.")
    if q is None:
        q = 1
        while ufpp.utilities.power_of_two(2 - q) > beta_aug:
            q += 1
    elif q < 1:
        raise ufpp.PreconditionError(f"q must be positive, got {q}.")
    eps_prime = eps / 8
    if ell is None:
        ell = max(1, math.ceil(q * (2 + eps_prime) / (eps - eps_prime)))
    delta_prime = choose_delta_prime(eps_prime)
    delta = min(delta_prime, 1 / ufpp.utilities.power_of_two(ell))
    return RaParameters(
        eps, eps_prime, q, ell, ufpp.utilities.power_of_two(2 - q), delta_prime, delta
    )


def inflated_capacities(inst: ufpp.Instance, q: int) -> tuple[fractions.Fraction, ...]:
    factor = 1 + ufpp.utilities.power_of_two(2 - q)
    return tuple(capacity * factor for capacity in inst.capacities)


GroupSolver = typing.Callable[[ufpp.Instance, GroupPlan, int, frozenset, frozenset], GroupSolution]


def solve_groups(
    inst: ufpp.Instance,
    plan: GroupPlan,
    group_solver: GroupSolver,
    capacities: typing.Optional[typing.Sequence[ufpp.utilities.Rational]] = None,
    algorithm_tag: str = "framework",
) -> ufpp.Solution:
    """Run ``group_solver(inst, plan, k, tiny_ids, other_ids)`` on every occupied group."""

    per_k = {}
    for k in plan.occupied:
        tiny_list, other_list = [], []
        for task_id in sorted(plan.members(k)):
            task = inst.task(task_id)
            if task.d <= plan.delta * inst.meta[task_id].b:
                tiny_list.append(task_id)
            else:
                other_list.append(task_id)
        per_k[k] = group_solver(inst, plan, k, frozenset(tiny_list), frozenset(other_list))
    return combine_offsets(inst, plan, per_k, capacities, algorithm_tag)


def _best_group_solution(first: GroupSolution, second: GroupSolution, inst: ufpp.Instance) -> GroupSolution:
    # Both halves honour the same modified constraint, so the better one does too.
    if inst.profit(second.selected) > inst.profit(first.selected):
        return dataclasses.replace(second, alpha=first.alpha + second.alpha)
    return dataclasses.replace(first, alpha=first.alpha + second.alpha)


def solve_small(
    inst: ufpp.Instance,
    eps: ufpp.utilities.Rational = 1,
    gamma: ufpp.utilities.Rational = fractions.Fraction(1, 2),
    ell: typing.Optional[int] = None,
    q: typing.Optional[int] = None,
) -> ufpp.Solution:
    """(3 + eps)-approximation for instances of (1 - gamma)-small tasks."""

    gamma = fractions.Fraction(gamma)
    for task in inst.tasks:
        if task.d > (1 - gamma) * inst.meta[task.id].b:
            raise ufpp.PreconditionError(f"Task {task.id} is not {1 - gamma}-small.")
    parameters = choose_small_parameters(eps, gamma, ell, q)
    ufpp.constants.LOGGER.info(
        f"Small tasks: ell={parameters.ell}, q={parameters.q}, beta={parameters.beta}, "
        f"delta={parameters.delta}."
    )
    plan = group(inst, parameters.ell, parameters.q, parameters.beta, parameters.delta)
    exact_cache: dict = {}

    def group_solver(inst, plan, k, tiny_ids, medium_ids):
        tiny = ufpp.tiny_lp.solve_tiny(inst, plan, k, tiny_ids)
        medium = ufpp.medium_dp.solve_medium(inst, plan, k, medium_ids, exact_cache=exact_cache)
        return _best_group_solution(tiny, medium, inst)

    return solve_groups(inst, plan, group_solver, algorithm_tag="small")


def solve_ra(
    inst: ufpp.Instance,
    eps: ufpp.utilities.Rational = 1,
    beta_aug: ufpp.utilities.Rational = fractions.Fraction(1, 2),
    ell: typing.Optional[int] = None,
    q: typing.Optional[int] = None,
) -> ufpp.Solution:
    """(2 + eps)-approximation that may exceed capacities by a factor ``1 + 2^(2-q)``."""

    parameters = choose_ra_parameters(eps, beta_aug, ell, q)
    ufpp.constants.LOGGER.info(
        f"Resource augmentation: ell={parameters.ell}, q={parameters.q}, "
        f"augmentation={parameters.augmentation}, delta={parameters.delta}."
    )
    plan = group(inst, parameters.ell, parameters.q, 0, parameters.delta)
    crossing_bound = math.ceil(ufpp.utilities.power_of_two(plan.ell + 1) / plan.delta)
    exact_cache: dict = {}

    def group_solver(inst, plan, k, tiny_ids, large_ids):
        tiny = ufpp.tiny_lp.solve_tiny(inst, plan, k, tiny_ids, beta=0)
        try:
            optimum = exact_cache[large_ids]
        except KeyError:
            optimum = exact_cache[large_ids] = ufpp.medium_dp.solve_exact_bounded(
                inst, large_ids, crossing_bound=crossing_bound
            )
        exact = GroupSolution(k, optimum.selected, fractions.Fraction(1), fractions.Fraction(0))
        return _best_group_solution(tiny, exact, inst)

    solution = solve_groups(
        inst,
        plan,
        group_solver,
        capacities=inflated_capacities(inst, parameters.q),
        algorithm_tag="ra",
    )
    return dataclasses.replace(solution, augmentation=parameters.augmentation)
