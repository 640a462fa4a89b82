"""Interval selection under per-edge multiplicities via min-cost flow.

Every path vertex is a node. A source feeds the increases of the multiplicity
profile and a sink drains its decreases, so a maximum flow carries exactly
``c_e`` units over each edge ``e``. Backbone arcs ``v -> v+1`` are free, a task
is a unit arc ``s -> t`` of cost ``-w``. Any maximum flow of minimum cost
selects an optimal interval set with at most ``c_e`` intervals per edge.
"""

from __future__ import annotations

import dataclasses
import heapq
import typing

import ufpp

__all__ = ("Arc", "FlowNetwork", "Interval", "solve_uniform")

INFINITY = float("inf")


@dataclasses.dataclass
class Arc:
    source: int
    target: int
    capacity: int
    cost: int
    flow: int = 0

    @property
    def residual(self) -> int:
        return self.capacity - self.flow


class FlowNetwork(object):
    """Residual network; arc ``2i + 1`` is the reverse of arc ``2i``."""

    def __init__(self, node_count: int):
        self.node_count = node_count
        self.arc_list: list[Arc] = []
        self.adjacency_list: list[list[int]] = [[] for _ in range(node_count)]

    def add_arc(self, source: int, target: int, capacity: int, cost: int = 0) -> int:
        if capacity < 0:
            raise ufpp.PreconditionError(f"Arc {source}->{target} has negative capacity.")
        arc_index = len(self.arc_list)
        self.arc_list.append(Arc(source, target, capacity, cost))
        self.adjacency_list[source].append(arc_index)
        self.arc_list.append(Arc(target, source, 0, -cost))
        self.adjacency_list[target].append(arc_index + 1)
        return arc_index

    def push(self, arc_index: int, amount: int):
        self.arc_list[arc_index].flow += amount
        self.arc_list[arc_index ^ 1].flow -= amount

    def dag_potentials(self, topological_order: typing.Sequence[int]) -> list[float]:
        """Shortest distances from the first node, valid while the network is acyclic."""

        potential_list = [INFINITY] * self.node_count
        potential_list[topological_order[0]] = 0
        for node in topological_order:
            if potential_list[node] == INFINITY:
                continue
            for arc_index in self.adjacency_list[node]:
                arc = self.arc_list[arc_index]
                if arc.residual > 0 and potential_list[node] + arc.cost < potential_list[arc.target]:
                    potential_list[arc.target] = potential_list[node] + arc.cost
        # Unreachable nodes stay unreachable; their potential is never read.
        return [0 if potential == INFINITY else potential for potential in potential_list]

    def _shortest_paths(
        self, source: int, potential_list: list[float]
    ) -> tuple[list[float], list[typing.Optional[int]]]:
        distance_list = [INFINITY] * self.node_count
        parent_arc_list: list[typing.Optional[int]] = [None] * self.node_count
        distance_list[source] = 0
        heap = [(0, source)]
        while heap:
            distance, node = heapq.heappop(heap)
            if distance > distance_list[node]:
                continue
            for arc_index in self.adjacency_list[node]:
                arc = self.arc_list[arc_index]
                if arc.residual <= 0:
                    continue
                reduced_cost = arc.cost + potential_list[node] - potential_list[arc.target]
                candidate = distance + reduced_cost
                if candidate < distance_list[arc.target]:
                    distance_list[arc.target] = candidate
                    parent_arc_list[arc.target] = arc_index
                    heapq.heappush(heap, (candidate, arc.target))
        return distance_list, parent_arc_list

    def min_cost_max_flow(
        self, source: int, sink: int, potential_list: list[float]
    ) -> tuple[int, int]:
        """Successive shortest augmenting paths; returns (flow value, cost)."""

        flow_value = cost = augmentation_count = 0
        while True:
            distance_list, parent_arc_list = self._shortest_paths(source, potential_list)
            if distance_list[sink] == INFINITY:
                break
            longest = max(distance for distance in distance_list if distance != INFINITY)
            for node in range(self.node_count):
                potential_list[node] += (
                    distance_list[node] if distance_list[node] != INFINITY else longest
                )
            path_arc_list = []
            node = sink
            while node != source:
                arc_index = parent_arc_list[node]
                path_arc_list.append(arc_index)
                node = self.arc_list[arc_index].source
            amount = min(self.arc_list[arc_index].residual for arc_index in path_arc_list)
            for arc_index in path_arc_list:
                self.push(arc_index, amount)
                cost += amount * self.arc_list[arc_index].cost
            flow_value += amount
            augmentation_count += 1
        ufpp.constants.LOGGER.debug(
            f"Min-cost flow: value {flow_value}, cost {cost}, "
            f"{augmentation_count} augmentations."
        )
        return flow_value, cost


@dataclasses.dataclass(frozen=True)
class Interval:
    s: int
    t: int
    w: int
    id: int


def solve_uniform(
    multiplicities: typing.Sequence[int], interval_sequence: typing.Sequence[Interval]
) -> frozenset[int]:
    """Maximum weight set of intervals with at most ``multiplicities[e]`` on edge ``e``.

    **Example:**

    >>> from ufpp import tiny_lp
    >>> tiny_lp.solve_uniform(
    ...     [1], [tiny_lp.Interval(0, 1, w, i) for i, w in enumerate((2, 9, 4))]
    ... )
    frozenset({1})
    """

    m = len(multiplicities)
    if any(multiplicity < 0 for multiplicity in multiplicities):
        raise ufpp.PreconditionError("Edge multiplicities must be non-negative.")
    source, sink = m + 1, m + 2
    network = FlowNetwork(m + 3)
    for vertex in range(m + 1):
        before = multiplicities[vertex - 1] if vertex > 0 else 0
        after = multiplicities[vertex] if vertex < m else 0
        if after > before:
            network.add_arc(source, vertex, after - before)
        elif before > after:
            network.add_arc(vertex, sink, before - after)
    for edge, multiplicity in enumerate(multiplicities):
        network.add_arc(edge, edge + 1, multiplicity)
    task_arc_dict = {}
    for interval in sorted(interval_sequence, key=lambda interval: interval.id):
        if not 0 <= interval.s < interval.t <= m:
            raise ufpp.PreconditionError(f"Interval {interval.id} leaves the path.")
        # Worthless intervals never improve the optimum.
        if interval.w > 0:
            task_arc_dict[interval.id] = network.add_arc(interval.s, interval.t, 1, -interval.w)
    potential_list = network.dag_potentials([source] + list(range(m + 1)) + [sink])
    network.min_cost_max_flow(source, sink, potential_list)
    return frozenset(
        interval_id
        for interval_id, arc_index in task_arc_dict.items()
        if network.arc_list[arc_index].flow == 1
    )
