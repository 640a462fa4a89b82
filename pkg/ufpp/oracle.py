"""Exact reference solvers for small instances."""

from __future__ import annotations

import dataclasses
import typing

import ufpp

__all__ = (
    "OracleCapExceededError",
    "OracleResult",
    "brute_force",
    "exact_sweep",
    "max_its_brute",
    "exact",
)


class OracleCapExceededError(ufpp.ResourceLimitError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"Exhaustive search over {n} tasks refused (cap is {cap} tasks)."
        )


@dataclasses.dataclass(frozen=True)
class OracleResult:
    profit: int
    witness: frozenset[int]
    method: str

    def to_solution(self, algorithm_tag: str = "exact") -> ufpp.Solution:
        return ufpp.Solution(self.witness, self.profit, algorithm_tag)


class _SubsetSearch(object):
    """Depth first enumeration with a profit bound.

    Equal profits are resolved towards the lexicographically smallest sorted
    witness.
    """

    def __init__(
        self,
        task_sequence: typing.Sequence[ufpp.Task],
        accept: typing.Callable[[list[ufpp.Task], ufpp.Task], bool],
        on_take: typing.Callable[[ufpp.Task], None] = lambda task: None,
        on_drop: typing.Callable[[ufpp.Task], None] = lambda task: None,
    ):
        self.task_tuple = tuple(sorted(task_sequence, key=lambda task: task.id))
        self.accept = accept
        self.on_take = on_take
        self.on_drop = on_drop
        self.remaining_profit_list = [0] * (len(self.task_tuple) + 1)
        for index in range(len(self.task_tuple) - 1, -1, -1):
            self.remaining_profit_list[index] = (
                self.remaining_profit_list[index + 1] + self.task_tuple[index].w
            )
        self.best_profit = -1
        self.best_witness: tuple[int, ...] = ()

    def run(self) -> tuple[int, frozenset[int]]:
        self._search(0, [], 0)
        return max(self.best_profit, 0), frozenset(self.best_witness)

    def _search(self, index: int, chosen: list[ufpp.Task], profit: int):
        if profit + self.remaining_profit_list[index] < self.best_profit:
            return
        if index == len(self.task_tuple):
            witness = tuple(sorted(task.id for task in chosen))
            if profit > self.best_profit or (
                profit == self.best_profit and witness < self.best_witness
            ):
                self.best_profit, self.best_witness = profit, witness
            return
        task = self.task_tuple[index]
        if self.accept(chosen, task):
            chosen.append(task)
            self.on_take(task)
            self._search(index + 1, chosen, profit + task.w)
            self.on_drop(task)
            chosen.pop()
        self._search(index + 1, chosen, profit)


def _check_cap(n: int, cap: typing.Optional[int]):
    if cap is None:
        cap = ufpp.constants.BRUTE_FORCE_TASK_CAP
    if n > cap:
        raise OracleCapExceededError(n, cap)


def brute_force(inst: ufpp.Instance, cap: typing.Optional[int] = None) -> OracleResult:
    """Optimum by enumerating every feasible subset.

    **Example:**

    >>> import ufpp
    >>> inst = ufpp.Instance(1, (10,), tuple(ufpp.Task(0, 1, d, d, d) for d in (6, 5, 4)))
    >>> ufpp.brute_force(inst).profit
    9
    """

    _check_cap(inst.n, cap)
    load_list = [0] * inst.m

    def accept(chosen, task):
        return all(load_list[edge] + task.d <= inst.capacities[edge] for edge in task.edges)

    def on_take(task):
        for edge in task.edges:
            load_list[edge] += task.d

    def on_drop(task):
        for edge in task.edges:
            load_list[edge] -= task.d

    profit, witness = _SubsetSearch(inst.tasks, accept, on_take, on_drop).run()
    return OracleResult(profit, witness, "subset_brute")


def exact_sweep(inst: ufpp.Instance) -> OracleResult:
    """Optimum by the vertex sweep without crossing bound (subject to the state budget)."""

    solution = ufpp.medium_dp.solve_exact_bounded(inst, crossing_bound=None)
    return OracleResult(solution.profit, solution.selected, "sweep_dp")


def max_its_brute(inst: ufpp.Instance, cap: typing.Optional[int] = None) -> OracleResult:
    """Best independent task set by enumeration over deliverable tasks."""

    _check_cap(inst.n, cap)
    rect_dict = {
        task.id: ufpp.its.rectangle(inst, task)
        for task in inst.tasks
        if inst.meta[task.id].slack >= 0
    }

    def accept(chosen, task):
        rect = rect_dict[task.id]
        return all(ufpp.its.compatible(rect, rect_dict[other.id]) for other in chosen)

    profit, witness = _SubsetSearch(
        [task for task in inst.tasks if task.id in rect_dict], accept
    ).run()
    return OracleResult(profit, witness, "its_brute")


def exact(inst: ufpp.Instance, method: str = "sweep", cap: typing.Optional[int] = None) -> OracleResult:
    if method == "brute":
        return brute_force(inst, cap)
    if method == "sweep":
        return exact_sweep(inst)
    if method == "its":
        return max_its_brute(inst, cap)
    raise ufpp.UnknownAlgorithmError(method, ufpp.constants.EXACT_METHOD_TUPLE)
