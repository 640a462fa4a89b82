"""Instances with a certified optimum built from subcubic graphs.

A connected graph with maximum degree 3 (other than K4) is turned into a
path instance whose optimum is ``MIS(G) + sum_i alpha(v_i) * n * (m + i)``,
where ``alpha`` is a proper 3-coloring. Path edge ``2k - 2`` (0-based)
belongs to the odd edges of the construction.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import typing

import networkx as nx

import ufpp

__all__ = (
    "InvalidGraphError",
    "Graph",
    "parse_graph",
    "emit_graph",
    "read_graph",
    "write_graph",
    "brooks_coloring",
    "mis_brute",
    "HardnessCertificate",
    "reduce",
    "uniformize",
    "uniformize_with_certificate",
    "standard_form_vertices",
    "saturated_odd_edges",
)


class InvalidGraphError(ufpp.UfppError, ValueError):
    """The graph isn't connected, subcubic and different from K4."""


@dataclasses.dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``1..n``; edge ``e_k`` is ``edges[k - 1]``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((min(a, b), max(a, b)) for a, b in self.edges)
        )
        if self.n < 1 or not self.edges:
            raise InvalidGraphError("Graph needs at least one edge.")
        for a, b in self.edges:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise InvalidGraphError(f"Edge ({a}, {b}) leaves vertex range 1..{self.n}.")
            if a == b:
                raise InvalidGraphError(f"Self loop at vertex {a}.")
        if len(set(self.edges)) != len(self.edges):
            raise InvalidGraphError("Graph has parallel edges.")
        graph = self.nx_graph
        if not nx.is_connected(graph):
            raise InvalidGraphError("Graph isn't connected.")
        if max(degree for _, degree in graph.degree) > 3:
            raise InvalidGraphError("Graph has a vertex of degree > 3.")
        if self.n == 4 and len(self.edges) == 6:
            raise InvalidGraphError("K4 has no 3-coloring.")

    @property
    def m(self) -> int:
        return len(self.edges)

    @functools.cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    def incident_edges(self, vertex: int) -> tuple[int, ...]:
        """1-based indices of the edges at ``vertex`` in increasing order."""

        return tuple(
            index for index, edge in enumerate(self.edges, start=1) if vertex in edge
        )


def parse_graph(text: str) -> Graph:
    header_seen, n, edge_list = False, None, []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != ufpp.constants.GRAPH_HEADER:
                raise ufpp.InstanceFormatError(
                    line_number, f"expected header '{ufpp.constants.GRAPH_HEADER}'"
                )
            header_seen = True
            continue
        keyword, *token_list = line.split()
        try:
            value_list = [int(token) for token in token_list]
        except ValueError:
            raise ufpp.InstanceFormatError(line_number, "non-integer value")
        if keyword == "n" and len(value_list) == 1 and n is None:
            (n,) = value_list
        elif keyword == "edge" and len(value_list) == 2 and n is not None:
            edge_list.append(tuple(value_list))
        else:
            raise ufpp.InstanceFormatError(line_number, f"unexpected line '{line}'")
    if n is None:
        raise ufpp.InstanceFormatError(1, "missing 'n' line")
    return Graph(n, tuple(edge_list))


def emit_graph(graph: Graph) -> str:
    line_list = [ufpp.constants.GRAPH_HEADER, f"n {graph.n}"]
    line_list.extend(f"edge {a} {b}" for a, b in graph.edges)
    return "\n".join(line_list) + "\n"


def read_graph(file_path: str) -> Graph:
    with open(file_path, "r", encoding="utf-8") as graph_file:
        return parse_graph(graph_file.read())


def write_graph(graph: Graph, file_path: str):
    with open(file_path, "w", encoding="utf-8") as graph_file:
        graph_file.write(emit_graph(graph))


def _is_proper(graph: Graph, coloring: typing.Mapping[int, int]) -> bool:
    return all(coloring[a] != coloring[b] for a, b in graph.edges) and all(
        coloring.get(vertex) in (1, 2, 3) for vertex in range(1, graph.n + 1)
    )


def _kempe_repair(nx_graph: nx.Graph, coloring: dict[int, int]):
    """Move vertices with color >= 3 (0-based) into {0, 1, 2} by chain swaps."""

    for vertex in sorted(nx_graph):
        if coloring[vertex] < 3:
            continue
        neighbour_color_set = {coloring[neighbour] for neighbour in nx_graph[vertex]}
        free = [color for color in range(3) if color not in neighbour_color_set]
        if free:
            coloring[vertex] = free[0]
            continue
        for a, b in itertools.combinations(range(3), 2):
            start = next(
                neighbour for neighbour in nx_graph[vertex] if coloring[neighbour] == a
            )
            chain_graph = nx_graph.subgraph(
                node for node in nx_graph if coloring[node] in (a, b)
            )
            chain = nx.node_connected_component(chain_graph, start)
            if any(coloring[neighbour] == b and neighbour in chain for neighbour in nx_graph[vertex]):
                continue
            for node in chain:
                coloring[node] = b if coloring[node] == a else a
            coloring[vertex] = a
            break


def _backtracking_coloring(graph: Graph) -> typing.Optional[dict[int, int]]:
    coloring: dict[int, int] = {}
    order = list(nx.dfs_preorder_nodes(graph.nx_graph, source=1))

    def search(index: int) -> bool:
        if index == len(order):
            return True
        vertex = order[index]
        used = {coloring[n] for n in graph.nx_graph[vertex] if n in coloring}
        for color in (1, 2, 3):
            if color not in used:
                coloring[vertex] = color
                if search(index + 1):
                    return True
                del coloring[vertex]
        return False

    return coloring if search(0) else None


def brooks_coloring(graph: Graph) -> dict[int, int]:
    """Proper 3-coloring; colors are numbered by first appearance in vertex order.

    **Example:**

    >>> from ufpp import hardness
    >>> hardness.brooks_coloring(hardness.Graph(3, ((1, 2), (2, 3), (1, 3))))
    {1: 1, 2: 2, 3: 3}
    """

    coloring = nx.coloring.greedy_color(
        graph.nx_graph, strategy="smallest_last", interchange=True
    )
    if max(coloring.values()) >= 3:
        _kempe_repair(graph.nx_graph, coloring)
    relabel: dict[int, int] = {}
    for vertex in range(1, graph.n + 1):
        relabel.setdefault(coloring[vertex], len(relabel) + 1)
    result = {vertex: relabel[coloring[vertex]] for vertex in range(1, graph.n + 1)}
    if not _is_proper(graph, result):
        ufpp.constants.LOGGER.debug("Greedy 3-coloring failed, using backtracking.")
        result = _backtracking_coloring(graph)
        if result is None:
            raise InvalidGraphError("Graph has no proper 3-coloring.")
        relabel = {}
        for vertex in range(1, graph.n + 1):
            relabel.setdefault(result[vertex], len(relabel) + 1)
        result = {vertex: relabel[result[vertex]] for vertex in range(1, graph.n + 1)}
    return result


def mis_brute(graph: Graph, cap: typing.Optional[int] = None) -> int:
    """Size of a maximum independent set (clique of the complement)."""

    if cap is None:
        cap = ufpp.constants.MIS_VERTEX_CAP
    if graph.n > cap:
        raise ufpp.OracleCapExceededError(graph.n, cap)
    _, size = nx.max_weight_clique(nx.complement(graph.nx_graph), weight=None)
    return size


@dataclasses.dataclass(frozen=True)
class HardnessCertificate:
    graph: Graph
    coloring: dict[int, int]
    base_profit: int
    mis_size: typing.Optional[int]
    # task id -> (role, vertex); roles are long, short, low and dummy
    roles: dict[int, tuple[str, typing.Optional[int]]]
    dummy_shift: int = 0

    @property
    def expected_opt(self) -> typing.Optional[int]:
        if self.mis_size is None:
            return None
        return self.base_profit + self.mis_size + self.dummy_shift


def _odd_edge_count(s: int, t: int) -> int:
    # even 0-based indices in [s, t)
    return (t + 1) // 2 - (s + 1) // 2


def reduce(
    graph: Graph, coloring: typing.Optional[typing.Mapping[int, int]] = None
) -> tuple[ufpp.Instance, HardnessCertificate]:
    """Path instance of ``graph`` together with its optimum certificate."""

    if coloring is None:
        coloring = brooks_coloring(graph)
    coloring = dict(coloring)
    if not _is_proper(graph, coloring):
        raise InvalidGraphError("Coloring isn't a proper 3-coloring.")
    n, m = graph.n, graph.m
    alpha_total = sum(coloring.values())
    capacity_list = []
    for k in range(1, m + 1):
        capacity_list.extend((alpha_total, alpha_total - 1))
    for k in range(m + 1, n + m + 1):
        suffix = sum(coloring[i] for i in range(k - m, n + 1))
        capacity_list.extend((suffix, suffix))

    task_list: list[ufpp.Task] = []
    role_dict: dict[int, tuple[str, typing.Optional[int]]] = {}

    def add(s: int, t: int, vertex: int, role: str, w: typing.Optional[int] = None):
        alpha = coloring[vertex]
        if w is None:
            w = ufpp.utilities.checked_mul(alpha * n, _odd_edge_count(s, t), "profit")
        role_dict[len(task_list)] = (role, vertex)
        task_list.append(ufpp.Task(s, t, alpha, w, len(task_list)))

    for vertex in range(1, n + 1):
        add(0, 2 * m + 2 * vertex - 1, vertex, "long")
        boundary_list = [0]
        for sigma in graph.incident_edges(vertex):
            boundary_list.extend((2 * sigma - 1, 2 * sigma))
        boundary_list.append(2 * m + 2 * vertex)
        for s, t in zip(boundary_list[::2], boundary_list[1::2]):
            add(s, t, vertex, "short")
        add(2 * m + 2 * vertex - 1, 2 * m + 2 * vertex, vertex, "low", w=1)

    inst = ufpp.Instance(2 * n + 2 * m, tuple(capacity_list), tuple(task_list))
    base_profit = ufpp.utilities.checked_sum(
        coloring[i] * n * (m + i) for i in range(1, n + 1)
    )
    mis_size = mis_brute(graph) if n <= ufpp.constants.MIS_VERTEX_CAP else None
    certificate = HardnessCertificate(graph, coloring, base_profit, mis_size, role_dict)
    ufpp.constants.LOGGER.info(
        f"Reduced graph with {n} vertices and {m} edges to {inst.n} tasks; "
        f"expected optimum {certificate.expected_opt}."
    )
    return inst, certificate


def _dummy_tasks(inst: ufpp.Instance) -> tuple[list[ufpp.Task], int]:
    weight = ufpp.utilities.checked_add(1, inst.profit(inst.task_ids), "dummy profit")
    next_id = max(inst.task_ids, default=-1) + 1
    dummy_list = []
    for edge, capacity in enumerate(inst.capacities):
        for _ in range(inst.u_max - capacity):
            dummy_list.append(ufpp.Task(edge, edge + 1, 1, weight, next_id))
            next_id += 1
    return dummy_list, weight


def uniformize(inst: ufpp.Instance) -> ufpp.Instance:
    """Raise every capacity to the maximum and fill the gap with unit dummy tasks.

    A dummy has profit ``X = 1 + total profit``, so every optimum takes all of
    them and the optimum grows by ``X * sum(u_max - u_e)``.
    """

    dummy_list, _ = _dummy_tasks(inst)
    if not dummy_list:
        return inst
    return ufpp.Instance(
        inst.m, (inst.u_max,) * inst.m, inst.tasks + tuple(dummy_list)
    )


def uniformize_with_certificate(
    inst: ufpp.Instance, certificate: HardnessCertificate
) -> tuple[ufpp.Instance, HardnessCertificate]:
    dummy_list, weight = _dummy_tasks(inst)
    role_dict = dict(certificate.roles)
    role_dict.update({task.id: ("dummy", None) for task in dummy_list})
    shift = ufpp.utilities.checked_mul(weight, len(dummy_list), "dummy shift")
    return uniformize(inst), dataclasses.replace(
        certificate,
        roles=role_dict,
        dummy_shift=ufpp.utilities.checked_add(certificate.dummy_shift, shift, "dummy shift"),
    )


def standard_form_vertices(
    certificate: HardnessCertificate, witness: typing.Iterable[int]
) -> frozenset[int]:
    """Vertices whose long task is selected; an independent set for optimal witnesses."""

    return frozenset(
        certificate.roles[task_id][1]
        for task_id in witness
        if certificate.roles.get(task_id, ("", None))[0] == "long"
    )


def saturated_odd_edges(inst: ufpp.Instance, witness: typing.Iterable[int]) -> bool:
    """True if the witness uses the full capacity of every odd edge."""

    load_list = ufpp.edge_loads(inst, witness)
    return all(
        load_list[edge] == inst.capacities[edge] for edge in range(0, inst.m, 2)
    )
