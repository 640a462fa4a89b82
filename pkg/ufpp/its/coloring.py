"""Partition of a feasible set of large tasks into few independent task sets.

A coloring is *nice* if, for every task ``i`` and every bottleneck edge ``e``
of ``i``, all tasks using ``e`` that are incompatible with ``i`` get pairwise
different colors. A feasible set of ``1/k``-large tasks always has a nice
coloring with ``2k`` colors; every color class is then an ITS.
"""

from __future__ import annotations

import itertools
import typing
import warnings

import networkx as nx

import ufpp

__all__ = (
    "ColoringFallbackWarning",
    "bottleneck_edges",
    "separator_edges",
    "coloring_constraints",
    "is_nice_coloring",
    "nice_coloring",
)

Coloring = dict[int, int]


class ColoringFallbackWarning(Warning):
    def __init__(self, task_count: int, color_count: int):
        super().__init__(
            f"Inductive coloring of {task_count} tasks failed validation; "
            f"searched a {color_count}-coloring exhaustively instead."
        )


def bottleneck_edges(inst: ufpp.Instance, task: ufpp.Task) -> tuple[int, ...]:
    b = inst.meta[task.id].b
    return tuple(edge for edge in task.edges if inst.capacities[edge] == b)


def _incompatible(inst: ufpp.Instance, task_id_a: int, task_id_b: int) -> bool:
    return not ufpp.its.tasks_compatible(inst, inst.task(task_id_a), inst.task(task_id_b))


def separator_edges(inst: ufpp.Instance, task_ids: typing.Iterable[int]) -> tuple[int, ...]:
    """Bottleneck edges ``e`` of some ``i`` where every other task on ``e`` clashes with ``i``."""

    task_id_tuple = tuple(sorted(task_ids))
    separator_set = set()
    for task_id in task_id_tuple:
        for edge in bottleneck_edges(inst, inst.task(task_id)):
            if all(
                _incompatible(inst, task_id, other_id)
                for other_id in task_id_tuple
                if other_id != task_id and inst.task(other_id).uses(edge)
            ):
                separator_set.add(edge)
    return tuple(sorted(separator_set))


def coloring_constraints(inst: ufpp.Instance, task_ids: typing.Iterable[int]) -> nx.Graph:
    """Graph whose edges join every pair of tasks that must differ in color."""

    task_id_tuple = tuple(sorted(task_ids))
    graph = nx.Graph()
    graph.add_nodes_from(task_id_tuple)
    for task_id_a, task_id_b in itertools.combinations(task_id_tuple, 2):
        if _incompatible(inst, task_id_a, task_id_b):
            graph.add_edge(task_id_a, task_id_b)
    for task_id in task_id_tuple:
        for edge in bottleneck_edges(inst, inst.task(task_id)):
            clique = [
                other_id
                for other_id in task_id_tuple
                if other_id != task_id
                and inst.task(other_id).uses(edge)
                and _incompatible(inst, task_id, other_id)
            ]
            graph.add_edges_from(itertools.combinations(clique, 2))
    return graph


def is_nice_coloring(
    inst: ufpp.Instance, task_ids: typing.Iterable[int], coloring: Coloring, k: int
) -> bool:
    task_id_set = set(task_ids)
    if set(coloring) != task_id_set:
        return False
    if any(not 1 <= color <= 2 * k for color in coloring.values()):
        return False
    graph = coloring_constraints(inst, task_id_set)
    return all(coloring[a] != coloring[b] for a, b in graph.edges)


def _check_preconditions(inst: ufpp.Instance, task_id_set: set[int], k: int):
    if k < 2:
        raise ufpp.PreconditionError(f"Nice colorings need k >= 2, got {k}.")
    for task_id in task_id_set:
        task = inst.task(task_id)
        if task.d * k <= inst.meta[task_id].b:
            raise ufpp.PreconditionError(f"Task {task_id} is not 1/{k}-large.")
    report = ufpp.check_feasible(inst, task_id_set)
    if not report.feasible:
        raise ufpp.PreconditionError(f"Task set to color is infeasible: {report.violations}.")


class _InductiveColoring(object):
    def __init__(self, inst: ufpp.Instance, k: int):
        self.inst = inst
        self.color_count = 2 * k

    def uses(self, task_id: int, edge: int) -> bool:
        return self.inst.task(task_id).uses(edge)

    def color(self, task_id_set: frozenset[int]) -> typing.Optional[Coloring]:
        if len(task_id_set) <= self.color_count:
            return {
                task_id: color
                for color, task_id in enumerate(sorted(task_id_set), start=1)
            }
        inst = self.inst
        e_b = min(
            (inst.capacities[edge], edge)
            for task_id in task_id_set
            for edge in bottleneck_edges(inst, inst.task(task_id))
        )[1]
        low_set = frozenset(task_id for task_id in task_id_set if self.uses(task_id, e_b))
        separator_list = sorted(
            {
                edge
                for task_id in task_id_set
                if task_id in low_set
                or any(_incompatible(inst, task_id, low_id) for low_id in low_set)
                for edge in bottleneck_edges(inst, inst.task(task_id))
            }
        )
        piece_list = self._pieces(task_id_set, separator_list)
        for index, piece in enumerate(piece_list):
            if piece == task_id_set:
                return self._extend_low_tasks(task_id_set, low_set, separator_list, index)
        return self._merge_pieces(piece_list, separator_list)

    def _pieces(
        self, task_id_set: frozenset[int], separator_list: list[int]
    ) -> list[frozenset[int]]:
        inst, p = self.inst, len(separator_list)
        piece_list = [
            frozenset(
                task_id for task_id in task_id_set if inst.task(task_id).s <= separator_list[0]
            )
        ]
        for j in range(p - 1):
            piece_list.append(
                frozenset(
                    task_id
                    for task_id in task_id_set
                    if inst.task(task_id).s <= separator_list[j + 1]
                    and inst.task(task_id).t > separator_list[j]
                )
            )
        piece_list.append(
            frozenset(
                task_id for task_id in task_id_set if inst.task(task_id).t > separator_list[-1]
            )
        )
        return piece_list

    def _merge_pieces(
        self, piece_list: list[frozenset[int]], separator_list: list[int]
    ) -> typing.Optional[Coloring]:
        merged = self.color(piece_list[0])
        if merged is None:
            return None
        for j, piece in enumerate(piece_list[1:]):
            piece_coloring = self.color(piece)
            if piece_coloring is None:
                return None
            overlap = [
                task_id for task_id in piece if self.uses(task_id, separator_list[j])
            ]
            permutation: dict[int, int] = {}
            for task_id in overlap:
                if task_id not in merged:
                    return None
                source, target = piece_coloring[task_id], merged[task_id]
                if permutation.setdefault(source, target) != target:
                    return None
            if len(set(permutation.values())) != len(permutation):
                return None
            free_target_iterator = iter(
                sorted(set(range(1, self.color_count + 1)) - set(permutation.values()))
            )
            for source in range(1, self.color_count + 1):
                if source not in permutation:
                    permutation[source] = next(free_target_iterator)
            for task_id, color in piece_coloring.items():
                merged.setdefault(task_id, permutation[color])
        return merged

    def _extend_low_tasks(
        self,
        task_id_set: frozenset[int],
        low_set: frozenset[int],
        separator_list: list[int],
        index: int,
    ) -> typing.Optional[Coloring]:
        rest = task_id_set - low_set
        coloring = self.color(rest)
        if coloring is None:
            return None
        boundary_edge_list = [
            separator_list[j] for j in (index - 1, index) if 0 <= j < len(separator_list)
        ]
        blocked_set = {
            coloring[task_id]
            for task_id in rest
            if any(self.uses(task_id, edge) for edge in boundary_edge_list)
        }
        constraint_graph = coloring_constraints(self.inst, task_id_set)
        for low_id in sorted(low_set):
            free_list = [
                color
                for color in range(1, self.color_count + 1)
                if color not in blocked_set
            ]
            if not free_list:
                return None
            neighbour_color_set = {
                coloring[other_id]
                for other_id in constraint_graph[low_id]
                if other_id in coloring
            }
            chosen = next(
                (color for color in free_list if color not in neighbour_color_set),
                free_list[0],
            )
            coloring[low_id] = chosen
            blocked_set.add(chosen)
        return coloring


def _exact_coloring(graph: nx.Graph, color_count: int) -> typing.Optional[Coloring]:
    """Backtracking search, picking the most saturated vertex first."""

    coloring: Coloring = {}

    def pick() -> int:
        return max(
            (node for node in graph if node not in coloring),
            key=lambda node: (
                len({coloring[n] for n in graph[node] if n in coloring}),
                graph.degree(node),
                -node,
            ),
        )

    def search() -> bool:
        if len(coloring) == len(graph):
            return True
        node = pick()
        used = {coloring[n] for n in graph[node] if n in coloring}
        for color in range(1, color_count + 1):
            if color not in used:
                coloring[node] = color
                if search():
                    return True
                del coloring[node]
        return False

    return dict(coloring) if search() else None


def nice_coloring(inst: ufpp.Instance, task_ids: typing.Iterable[int], k: int) -> Coloring:
    """Nice coloring with at most ``2k`` colors.

    :param task_ids: Feasible set of ``1/k``-large tasks.
    :param k: Integer ``>= 2``.
    """

    task_id_set = frozenset(task_ids)
    _check_preconditions(inst, set(task_id_set), k)
    coloring = _InductiveColoring(inst, k).color(task_id_set)
    if coloring is not None and is_nice_coloring(inst, task_id_set, coloring, k):
        return coloring
    warnings.warn(ColoringFallbackWarning(len(task_id_set), 2 * k))
    coloring = _exact_coloring(coloring_constraints(inst, task_id_set), 2 * k)
    if coloring is None:
        raise ufpp.PreconditionError(
            f"No nice {2 * k}-coloring exists for the given {len(task_id_set)} tasks."
        )
    return coloring
