"""Exact maximum profit independent task set via corner recursion.

A corner ``(x, y, z)`` is the region left of vertex ``x`` above height ``y``
and right of ``x`` above height ``z``, cut off by the capacity profile. The
best ITS fitting into a corner is computed from smaller corners. The table is
filled with an explicit stack so that deep recursions don't hit Python's
recursion limit.
"""

from __future__ import annotations

import dataclasses
import typing

import ufpp

__all__ = (
    "Corner",
    "MemoTable",
    "corner_make",
    "corner_contains",
    "CornerProgram",
    "max_its",
    "solve_large",
)


CornerKey = tuple[int, int, int]


@dataclasses.dataclass(frozen=True)
class Corner:
    x: int
    y: int
    z: int
    wL: int
    wR: int

    @property
    def key(self) -> CornerKey:
        return (self.x, self.y, self.z)

    def area(self, u_max: int) -> int:
        return (self.x - self.wL) * (u_max - self.y) + (self.wR - self.x) * (
            u_max - self.z
        )


def _scan_left(capacities: typing.Sequence[int], x: int, y: int) -> int:
    w_left = x
    while w_left > 0 and capacities[w_left - 1] > y:
        w_left -= 1
    return w_left


def _scan_right(capacities: typing.Sequence[int], x: int, z: int) -> int:
    w_right = x
    while w_right < len(capacities) and capacities[w_right] > z:
        w_right += 1
    return w_right


def corner_make(inst: ufpp.Instance, x: int, y: int, z: int) -> Corner:
    """Corner with its left and right boundary vertices.

    **Example:**

    >>> import ufpp
    >>> inst = ufpp.Instance(5, (40, 61, 122, 63, 44), ())
    >>> ufpp.its.corner_make(inst, 3, 15, 50)
    Corner(x=3, y=15, z=50, wL=0, wR=4)
    """

    if not 0 <= x <= inst.m or y < 0 or z < 0:
        raise ufpp.PreconditionError(f"Invalid corner ({x}, {y}, {z}).")
    return Corner(
        x, y, z, _scan_left(inst.capacities, x, y), _scan_right(inst.capacities, x, z)
    )


def corner_contains(inst: ufpp.Instance, corner: Corner, task: ufpp.Task) -> bool:
    slack = inst.meta[task.id].slack
    return (
        (corner.wL <= task.s and task.t <= corner.wR and slack >= max(corner.y, corner.z))
        or (corner.wL <= task.s and task.t <= corner.x and slack >= corner.y)
        or (corner.x <= task.s and task.t <= corner.wR and slack >= corner.z)
    )


# Choice records of the memo table
#   ("shrink", child)            best set also fits into the neighbouring corner
#   ("split", left, right)       region falls apart into two corners
#   ("task", id, first, second)  special task plus two sub corners
# A child is ``None`` when it normalises to the empty corner.
Choice = tuple


@dataclasses.dataclass
class MemoTable:
    value: dict[CornerKey, int] = dataclasses.field(default_factory=dict)
    choice: dict[CornerKey, Choice] = dataclasses.field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.value)

    def __contains__(self, key: CornerKey) -> bool:
        return key in self.value


class CornerProgram(object):
    """Fill the corner table of one instance with pairwise distinct capacities.

    Every deliverable task of ``inst`` takes part; the caller removes
    undeliverable tasks first.
    """

    def __init__(self, inst: ufpp.Instance):
        if len(set(inst.capacities)) != inst.m:
            raise ufpp.PreconditionError("Corner recursion needs distinct capacities.")
        self.inst = inst
        self.u_max = inst.u_max
        self.memo_table = MemoTable()
        self._relevant_height_set = {0, self.u_max} | set(inst.capacities)
        self._left_cache: dict[tuple[int, int], int] = {}
        self._right_cache: dict[tuple[int, int], int] = {}
        self._task_data_tuple = tuple(
            (task.id, task.s, task.t, task.w, inst.meta[task.id].b, inst.meta[task.id].slack)
            for task in sorted(inst.tasks, key=lambda task: task.id)
        )

    def _w_left(self, x: int, y: int) -> int:
        try:
            return self._left_cache[(x, y)]
        except KeyError:
            w_left = self._left_cache[(x, y)] = _scan_left(self.inst.capacities, x, y)
            return w_left

    def _w_right(self, x: int, z: int) -> int:
        try:
            return self._right_cache[(x, z)]
        except KeyError:
            w_right = self._right_cache[(x, z)] = _scan_right(self.inst.capacities, x, z)
            return w_right

    def normalise(self, x: int, y: int, z: int) -> typing.Optional[Corner]:
        """Standard form of a corner, ``None`` for the empty corner."""

        capacities, u_max = self.inst.capacities, self.u_max
        while True:
            if x == 0 or y >= capacities[x - 1]:
                y = u_max
            if x == self.inst.m or z >= capacities[x]:
                z = u_max
            w_left, w_right = self._w_left(x, y), self._w_right(x, z)
            if w_left == w_right:
                return None
            if y == z:
                x, z = w_right, u_max
                continue
            assert y in self._relevant_height_set and z in self._relevant_height_set
            return Corner(x, y, z, w_left, w_right)

    def _children(self, corner: Corner) -> list[tuple[Choice, tuple[typing.Optional[Corner], ...]]]:
        """Every alternative of the recursion at a normalised corner."""

        x, y, z = corner.key
        capacities, normalise = self.inst.capacities, self.normalise
        alternative_list = []
        if y < z:
            if x < self.inst.m and capacities[x - 1] <= z < capacities[x]:
                return [(("split",), (normalise(x, y, self.u_max), normalise(x, self.u_max, z)))]
            alternative_list.append((("shrink",), (normalise(x - 1, y, z),)))
            for task_id, s, t, w, b, slack in self._task_data_tuple:
                if t <= x and s >= corner.wL and slack >= y:
                    alternative_list.append(
                        (("task", task_id, w), (normalise(s, y, b), normalise(x, b, z)))
                    )
        else:
            if x >= 1 and capacities[x] <= y < capacities[x - 1]:
                return [(("split",), (normalise(x, y, self.u_max), normalise(x, self.u_max, z)))]
            alternative_list.append((("shrink",), (normalise(x + 1, y, z),)))
            for task_id, s, t, w, b, slack in self._task_data_tuple:
                if s >= x and t <= corner.wR and slack >= z:
                    alternative_list.append(
                        (("task", task_id, w), (normalise(t, b, z), normalise(x, y, b)))
                    )
        return alternative_list

    def solve(self, x: int, y: int, z: int) -> int:
        """Value of the corner ``(x, y, z)``; fills the memo table on the way."""

        root = self.normalise(x, y, z)
        if root is None:
            return 0
        value, choice = self.memo_table.value, self.memo_table.choice
        pending_children: dict[CornerKey, list] = {}
        stack = [root]
        while stack:
            corner = stack[-1]
            key = corner.key
            if key in value:
                stack.pop()
                continue
            try:
                alternative_list = pending_children[key]
            except KeyError:
                alternative_list = pending_children[key] = self._children(corner)
                if __debug__:
                    parent_area = corner.area(self.u_max)
                    for _, child_tuple in alternative_list:
                        for child in child_tuple:
                            assert child is None or child.area(self.u_max) < parent_area
                missing = [
                    child
                    for _, child_tuple in alternative_list
                    for child in child_tuple
                    if child is not None and child.key not in value
                ]
                if missing:
                    stack.extend(missing)
                    continue
            stack.pop()
            del pending_children[key]
            value[key], choice[key] = self._evaluate(alternative_list)
        return value[root.key]

    def _evaluate(self, alternative_list) -> tuple[int, Choice]:
        value = self.memo_table.value

        def child_value(child: typing.Optional[Corner]) -> int:
            return 0 if child is None else value[child.key]

        def child_key(child: typing.Optional[Corner]) -> typing.Optional[CornerKey]:
            return None if child is None else child.key

        (head, head_children), *rest = alternative_list
        if head[0] == "split":
            first, second = head_children
            return (
                child_value(first) + child_value(second),
                ("split", child_key(first), child_key(second)),
            )
        (shrink_child,) = head_children
        best_value, best_choice = child_value(shrink_child), ("shrink", child_key(shrink_child))
        # Task alternatives come in ascending id order, so strict improvement
        # prefers "shrink" and then the lowest task id.
        for (_, task_id, w), (first, second) in rest:
            candidate = w + child_value(first) + child_value(second)
            if candidate > best_value:
                best_value = candidate
                best_choice = ("task", task_id, child_key(first), child_key(second))
        return best_value, best_choice

    def reconstruct(self, x: int, y: int, z: int) -> frozenset[int]:
        root = self.normalise(x, y, z)
        if root is None:
            return frozenset()
        selected_list = []
        stack: list[typing.Optional[CornerKey]] = [root.key]
        while stack:
            key = stack.pop()
            if key is None:
                continue
            record = self.memo_table.choice[key]
            if record[0] == "shrink":
                stack.append(record[1])
            elif record[0] == "split":
                stack.extend(record[1:])
            else:
                selected_list.append(record[1])
                stack.extend(record[2:])
        return frozenset(selected_list)


def max_its(inst: ufpp.Instance) -> ufpp.Solution:
    """Maximum profit independent task set of ``inst``.

    Undeliverable tasks are dropped, the path is compacted and capacities are
    made distinct before the corner recursion runs from ``(m, 0, u_max)``.
    The result is checked on the original instance.
    """

    deliverable = ufpp.filter_deliverable(inst)
    if not deliverable.tasks:
        return ufpp.Solution.empty("its")
    compacted, _ = ufpp.compact(deliverable)
    distinct = ufpp.its.rectangle_safe_perturbation(compacted)
    program = CornerProgram(distinct)
    profit = program.solve(distinct.m, 0, distinct.u_max)
    selected = program.reconstruct(distinct.m, 0, distinct.u_max)
    ufpp.constants.LOGGER.debug(
        f"Corner recursion filled {len(program.memo_table)} corners for "
        f"{deliverable.n} tasks on {distinct.m} edges."
    )
    solution = ufpp.Solution.from_selection(inst, selected, "its")
    if solution.profit != profit:
        raise ufpp.UfppError(
            f"Reconstructed ITS profit {solution.profit} differs from table value {profit}."
        )
    if not ufpp.its.is_its(inst, selected):
        raise ufpp.UfppError("Reconstructed task set is not independent.")
    report = ufpp.check_feasible(inst, selected)
    if not report.feasible:
        raise ufpp.InfeasibleSolutionError(report, "independent task set")
    return solution


def solve_large(inst: ufpp.Instance, k: int) -> ufpp.Solution:
    """2k-approximation for instances whose tasks are all 1/k-large."""

    if k < 2:
        raise ufpp.PreconditionError(f"solve_large needs k >= 2, got {k}.")
    for task in inst.tasks:
        if task.d * k <= inst.meta[task.id].b:
            raise ufpp.PreconditionError(
                f"Task {task.id} is not 1/{k}-large (d={task.d}, b={inst.meta[task.id].b})."
            )
    return max_its(inst).retag("large")
