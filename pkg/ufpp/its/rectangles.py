"""Associated rectangles and independent task sets.

Task ``i`` is drawn as the rectangle with upper left corner ``(s, b(i))`` and
lower right corner ``(t, l(i))`` where ``l(i) = b(i) - d`` is its slack. A set
of tasks whose rectangles share no internal point is an independent task set
(ITS) and always fits under the capacity profile.
"""

from __future__ import annotations

import dataclasses
import itertools
import typing

import ufpp

__all__ = (
    "Rect",
    "rectangle",
    "compatible",
    "tasks_compatible",
    "is_its",
    "its_chain_holds",
    "tight_instance",
    "rectangle_safe_perturbation",
    "dump_rectangles",
)


@dataclasses.dataclass(frozen=True)
class Rect:
    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self):
        if not (self.x1 < self.x2 and 0 <= self.y2 <= self.y1):
            raise ufpp.InvalidInstanceError(
                "rect", f"degenerate rectangle ({self.x1}, {self.y1}, {self.x2}, {self.y2})"
            )


def rectangle(inst: ufpp.Instance, task: ufpp.Task) -> Rect:
    meta = inst.meta[task.id]
    if meta.slack < 0:
        raise ufpp.PreconditionError(
            f"Task {task.id} is undeliverable (demand {task.d} > bottleneck {meta.b})."
        )
    return Rect(task.s, meta.b, task.t, meta.slack)


def compatible(r1: Rect, r2: Rect) -> bool:
    """True if the rectangles share no internal point (touching is fine)."""

    return r1.x2 <= r2.x1 or r2.x2 <= r1.x1 or r1.y1 <= r2.y2 or r2.y1 <= r1.y2


def tasks_compatible(inst: ufpp.Instance, task_a: ufpp.Task, task_b: ufpp.Task) -> bool:
    return compatible(rectangle(inst, task_a), rectangle(inst, task_b))


def is_its(inst: ufpp.Instance, selected: typing.Iterable[int]) -> bool:
    rect_list = [rectangle(inst, inst.task(task_id)) for task_id in sorted(selected)]
    return all(
        compatible(r1, r2) for r1, r2 in itertools.combinations(rect_list, 2)
    )


def its_chain_holds(inst: ufpp.Instance, selected: typing.Iterable[int]) -> bool:
    """Tasks of an ITS crossing an edge stack up: ``b(i_j) <= l(i_{j+1})``."""

    rect_list = [rectangle(inst, inst.task(task_id)) for task_id in selected]
    for edge in range(inst.m):
        crossing = sorted(
            (rect for rect in rect_list if rect.x1 <= edge < rect.x2),
            key=lambda rect: (rect.y2, rect.y1),
        )
        if any(lower.y1 > upper.y2 for lower, upper in zip(crossing, crossing[1:])):
            return False
    return True


def tight_instance(k: int, profits: typing.Optional[typing.Sequence[int]] = None) -> ufpp.Instance:
    """Instance whose tasks are feasible together but pairwise incompatible.

    It contains ``2k`` tasks, each of them ``1/k``-large, so any ITS holds
    exactly one task while the full set is a feasible solution.

    :param k: Integer ``>= 2``.
    :param profits: Optional profits in task order, defaults to unit profits.

    **Example:**

    >>> from ufpp import its
    >>> its.tight_instance(2).capacities
    (8, 12, 24, 12, 8)
    """

    if k < 2:
        raise ufpp.PreconditionError(f"The tight family needs k >= 2, got {k}.")
    outer, inner = 2 * k * k, 2 * k * k + 2 * k
    capacity_tuple = (outer, inner, 2 * inner, inner, outer)
    span_list = (
        [(0, 3, 2 * k + 1)] * (k - 1)
        + [(2, 5, 2 * k + 1)] * (k - 1)
        + [(1, 3, 2 * k + 3), (2, 4, 2 * k + 3)]
    )
    if profits is None:
        profits = [1] * len(span_list)
    if len(profits) != len(span_list):
        raise ufpp.PreconditionError(
            f"Tight instance for k={k} has {len(span_list)} tasks, got {len(profits)} profits."
        )
    return ufpp.Instance(
        5,
        capacity_tuple,
        tuple(
            ufpp.Task(s, t, d, w, task_id)
            for task_id, ((s, t, d), w) in enumerate(zip(span_list, profits))
        ),
    )


def rectangle_safe_perturbation(inst: ufpp.Instance) -> ufpp.Instance:
    """Make capacities distinct without changing which rectangles overlap.

    With ``M = m * (n + 1)`` the instance gets ``u'_e = M * u_e + e`` and
    ``d' = M * d - m``. Feasible sets, deliverable tasks and the compatibility
    relation are the same before and after.
    """

    multiplier = ufpp.utilities.checked_mul(inst.m, inst.n + 1, "perturbation")
    capacity_tuple = tuple(
        ufpp.utilities.checked_add(
            ufpp.utilities.checked_mul(multiplier, capacity, "perturbation"),
            edge,
            "perturbation",
        )
        for edge, capacity in enumerate(inst.capacities)
    )
    task_tuple = tuple(
        dataclasses.replace(
            task,
            d=ufpp.utilities.checked_mul(multiplier, task.d, "perturbation") - inst.m,
        )
        for task in inst.tasks
    )
    return ufpp.Instance(inst.m, capacity_tuple, task_tuple)


def dump_rectangles(inst: ufpp.Instance, file_path: str):
    """Write ``id x1 y1 x2 y2`` per deliverable task plus the capacity profile."""

    line_list = ["# ufpp rectangles v1"]
    for task in inst.tasks:
        if inst.meta[task.id].slack < 0:
            continue
        rect = rectangle(inst, task)
        line_list.append(f"{task.id} {rect.x1} {rect.y1} {rect.x2} {rect.y2}")
    profile_point_list = []
    for edge, capacity in enumerate(inst.capacities):
        profile_point_list.extend((f"{edge},{capacity}", f"{edge + 1},{capacity}"))
    line_list.append("profile " + " ".join(profile_point_list))
    with open(file_path, "w", encoding="utf-8") as rectangle_file:
        rectangle_file.write("\n".join(line_list) + "\n")
    ufpp.constants.LOGGER.info(f"Wrote {len(line_list) - 2} rectangles to '{file_path}'.")
