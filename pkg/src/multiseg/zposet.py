"""Intersection-union moves and lower sets for the Zelevinsky order."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .core import Multisegment, Segment, lengths, linked, union_intersection

DEFAULT_BUDGET = 100_000


class BudgetExceeded(RuntimeError):
    pass


def iu_moves(m: Multisegment) -> list[tuple[tuple[Segment, Segment], Multisegment]]:
    """Every single intersection-union move out of ``m``, one per distinct result."""
    segs = m.distinct()
    out: dict[Multisegment, tuple[Segment, Segment]] = {}
    for i, d1 in enumerate(segs):
        for d2 in segs[i + 1:]:
            if not linked(d1, d2):
                continue
            union, inter = union_intersection(d1, d2)
            child = m - Multisegment([d1, d2]) + Multisegment([union, inter])
            out.setdefault(child, (d1, d2))
    return [(pair, child) for child, pair in out.items()]


def length_profile(m: Multisegment) -> tuple[int, ...]:
    """Relative lengths sorted decreasingly; strictly grows (lex) along every move."""
    return tuple(sorted((lengths(s)[0] for s in m), reverse=True))


@dataclass(frozen=True)
class Edge:
    parent: Multisegment
    child: Multisegment
    pair: tuple[Segment, Segment]


@dataclass
class PosetGraph:
    root: Multisegment
    nodes: list[Multisegment] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def __contains__(self, m: Multisegment) -> bool:
        return m in self._node_set

    def __len__(self):
        return len(self.nodes)

    def __post_init__(self):
        self._node_set = set(self.nodes)

    def children(self, m: Multisegment) -> list[Multisegment]:
        return [e.child for e in self.edges if e.parent == m]

    def minimal(self) -> list[Multisegment]:
        parents = {e.parent for e in self.edges}
        return [n for n in self.nodes if n not in parents]

    def depth(self) -> dict[Multisegment, int]:
        """BFS distance from the root (number of moves on a shortest path)."""
        dist = {self.root: 0}
        queue = deque([self.root])
        kids: dict = {}
        for e in self.edges:
            kids.setdefault(e.parent, []).append(e.child)
        while queue:
            node = queue.popleft()
            for c in kids.get(node, ()):
                if c not in dist:
                    dist[c] = dist[node] + 1
                    queue.append(c)
        return dist

    def to_json(self) -> dict:
        from .notation import print_multisegment as p

        return {
            "root": p(self.root),
            "nodes": [p(n) for n in self.nodes],
            "edges": [
                {"parent": p(e.parent), "child": p(e.child), "pair": [str(e.pair[0]), str(e.pair[1])]}
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        from .notation import print_multisegment as p

        index = {n: i for i, n in enumerate(self.nodes)}
        lines = ["digraph lower_set {", "  rankdir=TB;"]
        for n, i in index.items():
            lines.append(f'  n{i} [label="{p(n)}"];')
        for e in self.edges:
            lines.append(f'  n{index[e.parent]} -> n{index[e.child]} [label="{e.pair[0]},{e.pair[1]}"];')
        lines.append("}")
        return "\n".join(lines)


def lower_set(m: Multisegment, budget: int = DEFAULT_BUDGET) -> PosetGraph:
    """All m' <=_Z m by breadth-first closure under intersection-union moves."""
    seen = {m}
    order = [m]
    edges = []
    queue = deque([m])
    while queue:
        node = queue.popleft()
        for pair, child in iu_moves(node):
            edges.append(Edge(node, child, pair))
            if child not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"lower set of {m} exceeds {budget} nodes")
                seen.add(child)
                order.append(child)
                queue.append(child)
    return PosetGraph(m, order, edges)


def leq_z(m1: Multisegment, m2: Multisegment, budget: int = DEFAULT_BUDGET) -> bool:
    if m1 == m2:
        return True
    if m1.support() != m2.support():
        return False
    target = length_profile(m1)
    seen = {m2}
    queue = deque([m2])
    while queue:
        node = queue.popleft()
        for _, child in iu_moves(node):
            if child == m1:
                return True
            # profiles only go up, so anything already past the target is a dead end
            if child not in seen and length_profile(child) < target:
                if len(seen) >= budget:
                    raise BudgetExceeded(f"search below {m2} exceeds {budget} nodes")
                seen.add(child)
                queue.append(child)
    return False


def strictly_descends(parent: Multisegment, child: Multisegment) -> bool:
    return length_profile(parent) < length_profile(child)


def is_acyclic(graph: PosetGraph) -> Optional[list[Multisegment]]:
    """None if acyclic, else one cycle found by depth-first search."""
    kids: dict = {}
    for e in graph.edges:
        kids.setdefault(e.parent, []).append(e.child)
    state: dict = {}
    stack_path: list = []

    def visit(n) -> Optional[list]:
        state[n] = 1
        stack_path.append(n)
        for c in kids.get(n, ()):
            if state.get(c) == 1:
                return stack_path[stack_path.index(c):] + [c]
            if c not in state:
                found = visit(c)
                if found:
                    return found
        stack_path.pop()
        state[n] = 2
        return None

    for n in graph.nodes:
        if n not in state:
            cyc = visit(n)
            if cyc:
                return cyc
    return None
