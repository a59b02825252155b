"""
Leveled planar networks on the integer grid.

Every edge joins column x to column x + 1, so the networks are acyclic by
construction. Fall edges that the path conditions forbid are never created,
which lets path enumeration run without side conditions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from operator import mul
from typing import Iterable, List, Optional, Tuple

import graphviz
import networkx as nx

from src.core.errors import NetworkError
from src.core.matrix import RatMatrix, format_rat
from src.core.params import Index, ParamSet

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


class NetworkKind(str, Enum):
    L = "L"
    D = "D"
    U = "U"
    LINV = "Linv"
    DINV = "Dinv"
    UINV = "Uinv"
    COMPOSITE = "composite"


_INVERTED = {NetworkKind.L: NetworkKind.LINV, NetworkKind.D: NetworkKind.DINV, NetworkKind.U: NetworkKind.UINV}

_ALLOWED_STEPS = {
    NetworkKind.L: {-1, 0},
    NetworkKind.LINV: {-1, 0},
    NetworkKind.D: {0},
    NetworkKind.DINV: {0},
    NetworkKind.U: {0, 1},
    NetworkKind.UINV: {0, 1},
    NetworkKind.COMPOSITE: {-1, 0, 1},
}


@dataclass(frozen=True)
class Edge:
    tail: Point
    head: Point
    weight: Fraction
    parameter: Optional[Index] = None

    @property
    def step(self) -> int:
        return self.head[1] - self.tail[1]

    def shifted(self, dx: int) -> "Edge":
        return Edge((self.tail[0] + dx, self.tail[1]), (self.head[0] + dx, self.head[1]), self.weight, self.parameter)


@dataclass(frozen=True)
class LatticePath:
    points: Tuple[Point, ...]
    edges: Tuple[Edge, ...]
    weight: Fraction

    @property
    def heights(self) -> Tuple[int, ...]:
        return tuple(y for _, y in self.points)

    def fall_steps(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.step == -1]

    def rise_steps(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.step == 1]

    def fall_parameters(self) -> List[Index]:
        """Parameter index (y, s) carried by each fall edge, left to right."""
        return [edge.parameter for edge in self.fall_steps() if edge.parameter is not None]


@dataclass(frozen=True)
class PlanarNetwork:
    order: int
    x_offset: int
    width: int
    edges: Tuple[Edge, ...]
    kind: NetworkKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", NetworkKind(self.kind))
        allowed = _ALLOWED_STEPS[self.kind]
        for edge in self.edges:
            if edge.head[0] != edge.tail[0] + 1:
                raise NetworkError(f"edge {edge.tail}->{edge.head} does not advance one column")
            if not self.x_offset <= edge.tail[0] < self.x_offset + self.width:
                raise NetworkError(f"edge {edge.tail}->{edge.head} lies outside the network columns")
            for _, y in (edge.tail, edge.head):
                if not 0 <= y <= self.order:
                    raise NetworkError(f"edge {edge.tail}->{edge.head} leaves heights 0..{self.order}")
            if edge.step not in allowed:
                raise NetworkError(f"{self.kind.value} network cannot contain edge {edge.tail}->{edge.head}")
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: (e.tail, e.head))))

    @property
    def sources(self) -> List[Point]:
        return [(self.x_offset, i) for i in range(self.order + 1)]

    @property
    def sinks(self) -> List[Point]:
        return [(self.x_offset + self.width, i) for i in range(self.order + 1)]

    def nodes(self) -> List[Point]:
        return [
            (x, y)
            for x in range(self.x_offset, self.x_offset + self.width + 1)
            for y in range(self.order + 1)
        ]

    @cached_property
    def _graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes())
        for edge in self.edges:
            graph.add_edge(edge.tail, edge.head, edge=edge)
        return graph

    def graph(self) -> nx.DiGraph:
        return self._graph.copy()


def build_network(
    kind: NetworkKind | str,
    params: ParamSet,
    x_offset: int = 0,
    inverted: bool = False,
) -> PlanarNetwork:
    kind = NetworkKind(kind)
    n = params.order
    m = x_offset
    edges: List[Edge] = []
    if kind is NetworkKind.D:
        for i in range(n + 1):
            weight = params.t(i, i)
            if inverted:
                if weight == 0:
                    raise NetworkError(f"cannot invert zero diagonal parameter t({i},{i})")
                weight = 1 / weight
            edges.append(Edge((m, i), (m + 1, i), weight, (i, i)))
        width = 1
    elif kind is NetworkKind.L:
        width = n
        for i in range(n):
            for j in range(n + 1):
                edges.append(Edge((m + i, j), (m + i + 1, j), Fraction(1)))
                if j >= 1 and j >= n - i:
                    index = (j, n - i - 1) if inverted else (j, i + j - n)
                    weight = -params.t(*index) if inverted else params.t(*index)
                    edges.append(Edge((m + i, j), (m + i + 1, j - 1), weight, index))
    elif kind is NetworkKind.U:
        width = n
        for i in range(n):
            for j in range(n + 1):
                edges.append(Edge((m + i, j), (m + i + 1, j), Fraction(1)))
                if j + 1 <= n and j >= i:
                    index = (i, j + 1) if inverted else (j - i, j + 1)
                    weight = -params.t(*index) if inverted else params.t(*index)
                    edges.append(Edge((m + i, j), (m + i + 1, j + 1), weight, index))
    else:
        raise NetworkError(f"build_network takes kind L, D or U, got {kind.value}")
    built = _INVERTED[kind] if inverted else kind
    return PlanarNetwork(n, m, width, tuple(edges), built)


def concatenate(left: PlanarNetwork, right: PlanarNetwork) -> PlanarNetwork:
    if left.order != right.order:
        raise NetworkError(f"cannot concatenate order {left.order} with order {right.order}")
    dx = left.x_offset + left.width - right.x_offset
    edges = left.edges + tuple(edge.shifted(dx) for edge in right.edges)
    return PlanarNetwork(left.order, left.x_offset, left.width + right.width, edges, NetworkKind.COMPOSITE)


def chain(networks: Iterable[PlanarNetwork]) -> PlanarNetwork:
    return reduce(concatenate, networks)


def essential_network(params: ParamSet, x_offset: int = 0, inverted: bool = False) -> PlanarNetwork:
    """L | D | U, or Uinv | Dinv | Linv whose weight matrix is the inverse."""
    kinds = (NetworkKind.U, NetworkKind.D, NetworkKind.L) if inverted else (NetworkKind.L, NetworkKind.D, NetworkKind.U)
    parts = [
        build_network(kind, params, x_offset=x_offset if position == 0 else 0, inverted=inverted)
        for position, kind in enumerate(kinds)
    ]
    return chain(parts)


def enumerate_paths(net: PlanarNetwork, source: int, sink: int) -> List[LatticePath]:
    for label, index in (("source", source), ("sink", sink)):
        if not 0 <= index <= net.order:
            raise NetworkError(f"{label} {index} out of range 0..{net.order}")
    start = (net.x_offset, source)
    end = (net.x_offset + net.width, sink)
    if start == end:
        return [LatticePath((start,), (), Fraction(1))]
    graph = net._graph
    paths: List[LatticePath] = []
    for nodes in nx.all_simple_paths(graph, start, end):
        edges = tuple(graph.edges[tail, head]["edge"] for tail, head in zip(nodes, nodes[1:]))
        weight = reduce(mul, (edge.weight for edge in edges), Fraction(1))
        paths.append(LatticePath(tuple(nodes), edges, weight))
    paths.sort(key=lambda path: path.heights)
    logger.debug("%s network order %d: %d paths %d->%d", net.kind.value, net.order, len(paths), source, sink)
    return paths


def weight_matrix(net: PlanarNetwork) -> RatMatrix:
    size = net.order + 1
    return RatMatrix(
        [
            [sum((path.weight for path in enumerate_paths(net, i, j)), Fraction(0)) for j in range(size)]
            for i in range(size)
        ]
    )


def export_dot(net: PlanarNetwork) -> str:
    dot = graphviz.Digraph(name=f"{net.kind.value}_order_{net.order}")
    dot.attr(rankdir="LR")
    dot.attr("node", shape="circle")
    for x in range(net.x_offset, net.x_offset + net.width + 1):
        with dot.subgraph(name=f"column_{x}") as column:
            column.attr(rank="same")
            for y in range(net.order, -1, -1):
                column.node(_node_name((x, y)), pos=f"{x},{y}!")
    for edge in net.edges:
        dot.edge(_node_name(edge.tail), _node_name(edge.head), label=format_rat(edge.weight))
    return dot.source


def _node_name(point: Point) -> str:
    return f"{point[0]}_{point[1]}"

