"""Dense simplex tableau over exact rationals with Bland's pivoting rule."""

from __future__ import annotations

import dataclasses
import fractions
import typing

import ufpp

__all__ = ("SimplexTableau", "LpValue", "lp_opt")


class SimplexTableau(object):
    """Maximise ``c x`` subject to ``A x <= b`` and ``x >= 0`` with ``b >= 0``.

    The slack variables form the starting basis. Variables ``0..n-1`` are the
    structural variables, ``n..n+m-1`` the slacks.
    """

    def __init__(
        self,
        a_matrix: typing.Sequence[typing.Sequence[ufpp.utilities.Rational]],
        b_vector: typing.Sequence[ufpp.utilities.Rational],
        c_vector: typing.Sequence[ufpp.utilities.Rational],
    ):
        self.m = len(b_vector)
        self.n = len(c_vector)
        if any(b < 0 for b in b_vector):
            raise ufpp.PreconditionError("Slack basis needs a non-negative right hand side.")
        self.a_matrix = [[fractions.Fraction(value) for value in row] for row in a_matrix]
        self.b_vector = [fractions.Fraction(value) for value in b_vector]
        # Reduced costs of the non-basic variables
        self.c_vector = [fractions.Fraction(value) for value in c_vector]
        self.objective = fractions.Fraction(0)
        self.non_basic_variable_list = list(range(self.n))
        self.basic_variable_list = list(range(self.n, self.n + self.m))
        self.pivot_count = 0

    def pivot(self, row: int, column: int):
        a_matrix, b_vector = self.a_matrix, self.b_vector
        pivot_value = a_matrix[row][column]
        delta = self.c_vector[column] / pivot_value
        self.objective += delta * b_vector[row]
        for index in range(self.n):
            self.c_vector[index] -= delta * a_matrix[row][index]
        self.c_vector[column] = -delta
        pivot_row = a_matrix[row]
        for index in range(self.n):
            pivot_row[index] = 1 / pivot_value if index == column else pivot_row[index] / pivot_value
        b_vector[row] /= pivot_value
        for other in range(self.m):
            if other == row:
                continue
            factor = a_matrix[other][column]
            if not factor:
                continue
            other_row = a_matrix[other]
            for index in range(self.n):
                other_row[index] = (
                    -factor / pivot_value
                    if index == column
                    else other_row[index] - factor * pivot_row[index]
                )
            b_vector[other] -= factor * b_vector[row]
        (
            self.non_basic_variable_list[column],
            self.basic_variable_list[row],
        ) = (self.basic_variable_list[row], self.non_basic_variable_list[column])
        self.pivot_count += 1

    def step(self) -> str:
        try:
            _, column = min(
                (self.non_basic_variable_list[index], index)
                for index in range(self.n)
                if self.c_vector[index] > 0
            )
        except ValueError:
            return "optimal"
        try:
            _, _, row = min(
                (self.b_vector[index] / self.a_matrix[index][column], self.basic_variable_list[index], index)
                for index in range(self.m)
                if self.a_matrix[index][column] > 0
            )
        except ValueError:
            return "unbounded"
        self.pivot(row, column)
        return "go_on"

    def solve(self) -> str:
        while (state := self.step()) == "go_on":
            pass
        return state

    def primal_solution(self) -> list[fractions.Fraction]:
        solution = [fractions.Fraction(0)] * self.n
        for row, variable in enumerate(self.basic_variable_list):
            if variable < self.n:
                solution[variable] = self.b_vector[row]
        return solution


@dataclasses.dataclass(frozen=True)
class LpValue:
    value: fractions.Fraction
    # Optimal fractional value of every task variable
    x: dict[int, fractions.Fraction]


def lp_opt(
    inst: ufpp.Instance,
    task_ids: typing.Optional[typing.Iterable[int]] = None,
    capacities: typing.Optional[typing.Sequence[ufpp.utilities.Rational]] = None,
) -> LpValue:
    """Optimum of the relaxation ``0 <= x_i <= 1`` of the task selection program.

    **Example:**

    >>> import ufpp
    >>> inst = ufpp.Instance(1, (3,), (ufpp.Task(0, 1, 2, 1, 0), ufpp.Task(0, 1, 2, 1, 1)))
    >>> ufpp.tiny_lp.lp_opt(inst).value
    Fraction(3, 2)
    """

    if capacities is None:
        capacities = inst.capacities
    if task_ids is None:
        task_ids = inst.task_ids
    task_list = sorted((inst.task(task_id) for task_id in task_ids), key=lambda task: task.id)
    if not task_list:
        return LpValue(fractions.Fraction(0), {})
    used_edge_list = sorted({edge for task in task_list for edge in task.edges})
    a_matrix, b_vector = [], []
    for edge in used_edge_list:
        a_matrix.append([task.d if task.uses(edge) else 0 for task in task_list])
        b_vector.append(capacities[edge])
    for index in range(len(task_list)):
        a_matrix.append([1 if column == index else 0 for column in range(len(task_list))])
        b_vector.append(1)
    tableau = SimplexTableau(a_matrix, b_vector, [task.w for task in task_list])
    # Bounded by x_i <= 1, so "unbounded" can't happen.
    tableau.solve()
    ufpp.constants.LOGGER.debug(
        f"Relaxation over {len(task_list)} tasks solved after {tableau.pivot_count} pivots."
    )
    solution = tableau.primal_solution()
    return LpValue(
        tableau.objective,
        {task.id: value for task, value in zip(task_list, solution)},
    )
