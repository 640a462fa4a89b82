"""Instance, task and solution model of unsplittable flow on a path.

A path has vertices ``0..m`` and edges ``e = {i, i+1}`` addressed by their
left vertex ``i``. A task ``(s, t, d, w)`` uses the edges ``s <= i < t``.
"""

from __future__ import annotations

import dataclasses
import fractions
import functools
import json
import re
import typing
import warnings

import ufpp

__all__ = (
    "UfppError",
    "InvalidInstanceError",
    "InstanceFormatError",
    "UnknownTaskError",
    "InfeasibleSolutionError",
    "PreconditionError",
    "ResourceLimitError",
    "UndeliverableTaskWarning",
    "Task",
    "TaskMeta",
    "Instance",
    "Solution",
    "Violation",
    "FeasibilityReport",
    "CompactionMap",
    "parse_instance",
    "emit_instance",
    "read_instance",
    "write_instance",
    "parse_solution",
    "emit_solution",
    "edge_loads",
    "check_feasible",
    "bottleneck",
    "classify",
    "filter_deliverable",
    "compact",
    "perturb",
    "combine_best",
)

INTEGER_TOKEN = re.compile(r"-?[0-9]+")


class UfppError(Exception):
    """Base class of every error raised by ufpp."""


class InvalidInstanceError(UfppError, ValueError):
    def __init__(self, field: str, message: str, line: typing.Optional[int] = None):
        self.field = field
        self.line = line
        location = f"line {line}: " if line is not None else ""
        super().__init__(f"{location}invalid '{field}': {message}")


class InstanceFormatError(UfppError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnknownTaskError(UfppError, LookupError):
    def __init__(self, task_id: typing.Any):
        self.task_id = task_id
        super().__init__(f"Unknown task id '{task_id}'.")


class InfeasibleSolutionError(UfppError):
    def __init__(self, report: FeasibilityReport, context: str = "solution"):
        self.report = report
        violation_text = ", ".join(
            f"edge {violation.edge} (load {violation.load} > {violation.capacity})"
            for violation in report.violations
        )
        super().__init__(f"Infeasible {context}: {violation_text}.")


class PreconditionError(UfppError):
    """An operation was called with inputs outside its contract."""


class ResourceLimitError(UfppError):
    """A configured resource budget was exhausted."""


class UndeliverableTaskWarning(Warning):
    def __init__(self, task: Task, bottleneck_capacity: int):
        super().__init__(
            f"Dropped task {task.id}: demand {task.d} exceeds its bottleneck "
            f"capacity {bottleneck_capacity}."
        )


def _require_integer(value: typing.Any, field: str, line: typing.Optional[int]):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInstanceError(field, f"expected an integer, got '{value}'", line)
    try:
        ufpp.utilities.checked(value, field)
    except ufpp.utilities.IntegerOverflowError as error:
        raise InvalidInstanceError(field, str(error), line) from error


@dataclasses.dataclass(frozen=True)
class Task:
    s: int
    t: int
    d: int
    w: int
    id: int

    def __post_init__(self):
        for field in ("s", "t", "d", "w", "id"):
            _require_integer(getattr(self, field), field, None)
        if self.s >= self.t:
            raise InvalidInstanceError("s", f"task {self.id}: start {self.s} >= end {self.t}")
        if self.s < 0:
            raise InvalidInstanceError("s", f"task {self.id}: negative start {self.s}")
        if self.d < 1:
            raise InvalidInstanceError("d", f"task {self.id}: demand must be >= 1")
        if self.w < 0:
            raise InvalidInstanceError("w", f"task {self.id}: profit must be >= 0")

    @property
    def edges(self) -> range:
        return range(self.s, self.t)

    def uses(self, edge: int) -> bool:
        return self.s <= edge < self.t


@dataclasses.dataclass(frozen=True)
class TaskMeta:
    b: int
    slack: int
    bottleneck_edge: int


@dataclasses.dataclass(frozen=True)
class Instance:
    """An immutable UFPP instance.

    Task ids are stable ordinals. Instances read from a file number their
    tasks ``0..n-1``; sub-instances created by :meth:`restrict` keep the ids
    of the instance they were cut from.
    """

    m: int
    capacities: tuple[int, ...]
    tasks: tuple[Task, ...]

    def __post_init__(self):
        object.__setattr__(self, "capacities", tuple(self.capacities))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        _require_integer(self.m, "m", None)
        if self.m < 1:
            raise InvalidInstanceError("m", f"path needs at least one edge, got {self.m}")
        if len(self.capacities) != self.m:
            raise InvalidInstanceError(
                "cap",
                f"capacity count mismatch: {len(self.capacities)} capacities for m={self.m}",
            )
        for index, capacity in enumerate(self.capacities):
            _require_integer(capacity, "cap", None)
            if capacity < 1:
                raise InvalidInstanceError("cap", f"edge {index} has capacity {capacity} < 1")
        seen_id_set = set()
        for task in self.tasks:
            if task.t > self.m:
                raise InvalidInstanceError(
                    "t", f"task {task.id}: end {task.t} beyond last vertex {self.m}"
                )
            if task.id in seen_id_set:
                raise InvalidInstanceError("id", f"duplicate task id {task.id}")
            seen_id_set.add(task.id)

    @property
    def n(self) -> int:
        return len(self.tasks)

    @functools.cached_property
    def u_max(self) -> int:
        return max(self.capacities)

    @functools.cached_property
    def task_by_id(self) -> dict[int, Task]:
        return {task.id: task for task in self.tasks}

    @functools.cached_property
    def meta(self) -> dict[int, TaskMeta]:
        return {task.id: bottleneck(self, task) for task in self.tasks}

    @property
    def task_ids(self) -> frozenset[int]:
        return frozenset(self.task_by_id)

    def task(self, task_id: int) -> Task:
        try:
            return self.task_by_id[task_id]
        except KeyError:
            raise UnknownTaskError(task_id)

    def profit(self, task_id_iterable: typing.Iterable[int]) -> int:
        return ufpp.utilities.checked_sum(
            (self.task(task_id).w for task_id in task_id_iterable), "profit"
        )

    def restrict(self, task_id_iterable: typing.Iterable[int]) -> Instance:
        """Same path, only the given tasks (ids unchanged)."""

        task_id_set = set(task_id_iterable)
        for task_id in task_id_set:
            self.task(task_id)
        return Instance(
            self.m,
            self.capacities,
            tuple(task for task in self.tasks if task.id in task_id_set),
        )

    def replace_tasks(self, task_iterable: typing.Iterable[Task]) -> Instance:
        return Instance(self.m, self.capacities, tuple(task_iterable))


@dataclasses.dataclass(frozen=True)
class Solution:
    selected: frozenset[int]
    profit: int
    algorithm_tag: str
    # The solution is certified for capacities u_e * (1 + augmentation).
    augmentation: fractions.Fraction = fractions.Fraction(0)

    @classmethod
    def from_selection(
        cls,
        inst: Instance,
        task_id_iterable: typing.Iterable[int],
        algorithm_tag: str,
        augmentation: ufpp.utilities.Rational = 0,
    ) -> Solution:
        selected = frozenset(task_id_iterable)
        return cls(
            selected,
            inst.profit(selected),
            algorithm_tag,
            fractions.Fraction(augmentation),
        )

    @classmethod
    def empty(cls, algorithm_tag: str) -> Solution:
        return cls(frozenset(), 0, algorithm_tag)

    def retag(self, algorithm_tag: str) -> Solution:
        return dataclasses.replace(self, algorithm_tag=algorithm_tag)

    def certified_capacities(self, inst: Instance) -> tuple[ufpp.utilities.Rational, ...]:
        if not self.augmentation:
            return inst.capacities
        factor = 1 + self.augmentation
        return tuple(capacity * factor for capacity in inst.capacities)

    def validate(self, inst: Instance):
        """Check profit consistency and feasibility under the certified capacities."""

        if self.profit != inst.profit(self.selected):
            raise PreconditionError(
                f"Solution '{self.algorithm_tag}' claims profit {self.profit}, "
                f"recomputed {inst.profit(self.selected)}."
            )
        report = check_feasible(inst, self.selected, self.certified_capacities(inst))
        if not report.feasible:
            raise InfeasibleSolutionError(report, f"solution '{self.algorithm_tag}'")


@dataclasses.dataclass(frozen=True)
class Violation:
    edge: int
    load: int
    capacity: ufpp.utilities.Rational


@dataclasses.dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[Violation, ...]


@dataclasses.dataclass(frozen=True)
class CompactionMap:
    """Original vertex of every vertex of a compacted instance.

    Edge ``j`` of the compacted path stands for the original edges
    ``vertices[j] <= i < vertices[j + 1]``.
    """

    vertices: tuple[int, ...]

    def original_edges(self, edge: int) -> range:
        return range(self.vertices[edge], self.vertices[edge + 1])

    @property
    def is_identity(self) -> bool:
        return all(vertex == index for index, vertex in enumerate(self.vertices))


def parse_instance(text: str) -> Instance:
    """Read the line based instance format.

    :param text: Content of an instance file.

    **Example:**

    >>> import ufpp
    >>> ufpp.parse_instance("ufpp v1\\nm 1\\ncap 5\\ntask 0 1 3 7\\n").n
    1
    """

    header_seen = False
    m: typing.Optional[int] = None
    capacity_list: typing.Optional[list[int]] = None
    task_list: list[Task] = []

    def integers(token_list: list[str], line_number: int, field: str) -> list[int]:
        for token in token_list:
            if not INTEGER_TOKEN.fullmatch(token):
                raise InstanceFormatError(
                    line_number, f"non-integer value '{token}' in '{field}' line"
                )
        return [int(token) for token in token_list]

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != ufpp.constants.INSTANCE_HEADER:
                raise InstanceFormatError(
                    line_number, f"expected header '{ufpp.constants.INSTANCE_HEADER}'"
                )
            header_seen = True
            continue
        keyword, *token_list = line.split()
        if keyword == "m":
            if m is not None:
                raise InstanceFormatError(line_number, "repeated 'm' line")
            if len(token_list) != 1:
                raise InstanceFormatError(line_number, "'m' expects one value")
            (m,) = integers(token_list, line_number, "m")
            if m < 1:
                raise InvalidInstanceError("m", f"path needs at least one edge, got {m}", line_number)
        elif keyword == "cap":
            if m is None:
                raise InstanceFormatError(line_number, "'cap' before 'm'")
            if capacity_list is not None:
                raise InstanceFormatError(line_number, "repeated 'cap' line")
            capacity_list = integers(token_list, line_number, "cap")
            if len(capacity_list) != m:
                raise InvalidInstanceError(
                    "cap",
                    f"capacity count mismatch: {len(capacity_list)} capacities for m={m}",
                    line_number,
                )
            for index, capacity in enumerate(capacity_list):
                if capacity < 1:
                    raise InvalidInstanceError(
                        "cap", f"edge {index} has capacity {capacity} < 1", line_number
                    )
        elif keyword == "task":
            if capacity_list is None:
                raise InstanceFormatError(line_number, "'task' before 'cap'")
            if len(token_list) != 4:
                raise InstanceFormatError(line_number, "'task' expects 's t d w'")
            s, t, d, w = integers(token_list, line_number, "task")
            try:
                task = Task(s, t, d, w, len(task_list))
            except InvalidInstanceError as error:
                raise InvalidInstanceError(error.field, str(error), line_number) from error
            if t > m:
                raise InvalidInstanceError("t", f"end {t} beyond last vertex {m}", line_number)
            task_list.append(task)
        else:
            raise InstanceFormatError(line_number, f"unknown keyword '{keyword}'")

    if not header_seen:
        raise InstanceFormatError(1, "empty instance file")
    if m is None or capacity_list is None:
        raise InstanceFormatError(
            len(text.splitlines()) or 1, "missing 'm' or 'cap' line"
        )
    return Instance(m, tuple(capacity_list), tuple(task_list))


def emit_instance(inst: Instance) -> str:
    """Canonical text of ``inst``; task ids are written as file order."""

    line_list = [
        ufpp.constants.INSTANCE_HEADER,
        f"m {inst.m}",
        "cap " + " ".join(str(capacity) for capacity in inst.capacities),
    ]
    line_list.extend(
        f"task {task.s} {task.t} {task.d} {task.w}" for task in inst.tasks
    )
    return "\n".join(line_list) + "\n"


def read_instance(file_path: str) -> Instance:
    with open(file_path, "r", encoding="utf-8") as instance_file:
        return parse_instance(instance_file.read())


def write_instance(inst: Instance, file_path: str):
    with open(file_path, "w", encoding="utf-8", newline="\n") as instance_file:
        instance_file.write(emit_instance(inst))


def emit_solution(solution: Solution, inst: Instance) -> str:
    feasible = check_feasible(
        inst, solution.selected, solution.certified_capacities(inst)
    ).feasible
    payload = {
        "schema": ufpp.constants.SOLUTION_SCHEMA,
        "algorithm": solution.algorithm_tag,
        "profit": solution.profit,
        "selected": sorted(solution.selected),
        "feasible": feasible,
    }
    if solution.augmentation:
        payload["augmentation"] = str(solution.augmentation)
    return json.dumps(payload, indent=2) + "\n"


def parse_solution(text: str, inst: Instance) -> Solution:
    """Solution of a JSON file; a missing ``profit`` is recomputed.

    The claimed profit is kept as written so that :meth:`Solution.validate`
    can compare it with the selection.
    """

    try:
        payload = json.loads(text)
        selected = frozenset(int(task_id) for task_id in payload["selected"])
        claimed_profit = payload.get("profit")
        if claimed_profit is not None:
            claimed_profit = int(claimed_profit)
        augmentation = ufpp.utilities.parse_rational(payload.get("augmentation", "0"))
    except (ValueError, KeyError, TypeError) as error:
        raise InstanceFormatError(1, f"malformed solution file: {error}") from error
    for task_id in selected:
        inst.task(task_id)
    if claimed_profit is None:
        claimed_profit = inst.profit(selected)
    return Solution(
        selected,
        claimed_profit,
        str(payload.get("algorithm", "external")),
        augmentation,
    )


def edge_loads(inst: Instance, selected: typing.Iterable[int]) -> list[int]:
    """Total demand on every edge (difference array over task spans)."""

    delta_list = [0] * (inst.m + 1)
    for task_id in selected:
        task = inst.task(task_id)
        delta_list[task.s] += task.d
        delta_list[task.t] -= task.d
    load_list, load = [], 0
    for edge in range(inst.m):
        load += delta_list[edge]
        load_list.append(ufpp.utilities.checked(load, "edge load"))
    return load_list


def check_feasible(
    inst: Instance,
    selected: typing.Iterable[int],
    capacities: typing.Optional[typing.Sequence[ufpp.utilities.Rational]] = None,
) -> FeasibilityReport:
    """Compare every edge load with its capacity.

    :param capacities: Capacities to check against, defaults to the
        capacities of ``inst``. Rational entries are allowed.
    """

    if capacities is None:
        capacities = inst.capacities
    violation_list = [
        Violation(edge, load, capacities[edge])
        for edge, load in enumerate(edge_loads(inst, selected))
        if load > capacities[edge]
    ]
    return FeasibilityReport(not violation_list, tuple(violation_list))


def bottleneck(inst: Instance, task: Task) -> TaskMeta:
    b, bottleneck_edge = min(
        (inst.capacities[edge], edge) for edge in range(task.s, task.t)
    )
    return TaskMeta(b, b - task.d, bottleneck_edge)


def classify(
    inst: Instance, delta: ufpp.utilities.Rational
) -> tuple[frozenset[int], frozenset[int]]:
    """Split task ids into delta-small (``d <= delta * b``) and delta-large."""

    delta = fractions.Fraction(delta)
    if not 0 < delta <= 1:
        raise PreconditionError(f"delta must lie in (0, 1], got {delta}.")
    small_list, large_list = [], []
    for task in inst.tasks:
        b = inst.meta[task.id].b
        if task.d * delta.denominator <= delta.numerator * b:
            small_list.append(task.id)
        else:
            large_list.append(task.id)
    return frozenset(small_list), frozenset(large_list)


def filter_deliverable(inst: Instance) -> Instance:
    """Drop every task whose demand exceeds its bottleneck capacity."""

    kept_list = []
    for task in inst.tasks:
        meta = inst.meta[task.id]
        if meta.slack < 0:
            warnings.warn(UndeliverableTaskWarning(task, meta.b))
        else:
            kept_list.append(task)
    if len(kept_list) == inst.n:
        return inst
    return inst.replace_tasks(kept_list)


def compact(inst: Instance) -> tuple[Instance, CompactionMap]:
    """Contract every run of edges without task endpoints into one edge.

    A task free instance becomes a single edge carrying the minimum capacity.
    """

    if not inst.tasks:
        return (
            Instance(1, (min(inst.capacities),), ()),
            CompactionMap((0, inst.m)),
        )
    vertex_tuple = tuple(
        sorted({task.s for task in inst.tasks} | {task.t for task in inst.tasks})
    )
    index_of_vertex = {vertex: index for index, vertex in enumerate(vertex_tuple)}
    capacity_tuple = tuple(
        min(inst.capacities[left:right])
        for left, right in zip(vertex_tuple, vertex_tuple[1:])
    )
    task_tuple = tuple(
        Task(index_of_vertex[task.s], index_of_vertex[task.t], task.d, task.w, task.id)
        for task in inst.tasks
    )
    return (
        Instance(len(vertex_tuple) - 1, capacity_tuple, task_tuple),
        CompactionMap(vertex_tuple),
    )


def perturb(inst: Instance) -> Instance:
    """Make all capacities distinct: ``u'_i = m * u_i + i``, ``d' = m * d``.

    A task set is feasible afterwards iff it was feasible before, because
    loads are multiples of ``m`` and the added ``i`` stays below ``m``.
    """

    capacity_tuple = tuple(
        ufpp.utilities.checked_add(
            ufpp.utilities.checked_mul(inst.m, capacity, "perturb"), index, "perturb"
        )
        for index, capacity in enumerate(inst.capacities)
    )
    task_tuple = tuple(
        dataclasses.replace(task, d=ufpp.utilities.checked_mul(inst.m, task.d, "perturb"))
        for task in inst.tasks
    )
    return Instance(inst.m, capacity_tuple, task_tuple)


def combine_best(solution_sequence: typing.Sequence[Solution], inst: Instance) -> Solution:
    """Best of several feasible solutions; ties go to the smallest tag."""

    if not solution_sequence:
        raise PreconditionError("combine_best needs at least one solution.")
    for solution in solution_sequence:
        solution.validate(inst)
    return min(
        solution_sequence, key=lambda solution: (-solution.profit, solution.algorithm_tag)
    )
