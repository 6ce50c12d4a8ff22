"""Exact-rational network flow.

A small Edmonds-Karp max-flow over Fraction capacities plus the standard
reduction from circulation-with-lower-bounds feasibility to max-flow.  Graph
sizes here are tiny (traders + goods), so asymptotics are irrelevant; what
matters is that every comparison is exact.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction


class FlowNetwork:
    def __init__(self):
        self.adj: dict = {}
        self.edges: list[list] = []  # [to, capacity, flow], paired with reverse at idx^1

    def _node(self, u):
        if u not in self.adj:
            self.adj[u] = []
        return u

    def add_edge(self, u, v, cap: Fraction) -> int:
        """Add a directed edge and its zero-capacity reverse; returns edge id."""
        self._node(u)
        self._node(v)
        eid = len(self.edges)
        self.edges.append([v, Fraction(cap), Fraction(0)])
        self.edges.append([u, Fraction(0), Fraction(0)])
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def flow_on(self, eid: int) -> Fraction:
        return self.edges[eid][2]

    def max_flow(self, s, t) -> Fraction:
        self._node(s)
        self._node(t)
        total = Fraction(0)
        while True:
            parent_edge: dict = {s: None}
            queue = deque([s])
            while queue and t not in parent_edge:
                u = queue.popleft()
                for eid in self.adj[u]:
                    to, cap, flow = self.edges[eid]
                    if cap - flow > 0 and to not in parent_edge:
                        parent_edge[to] = eid
                        queue.append(to)
            if t not in parent_edge:
                return total
            bottleneck = None
            v = t
            while v != s:
                eid = parent_edge[v]
                to, cap, flow = self.edges[eid]
                slack = cap - flow
                bottleneck = slack if bottleneck is None else min(bottleneck, slack)
                v = self.edges[eid ^ 1][0]
            v = t
            while v != s:
                eid = parent_edge[v]
                self.edges[eid][2] += bottleneck
                self.edges[eid ^ 1][2] -= bottleneck
                v = self.edges[eid ^ 1][0]
            total += bottleneck


@dataclass(frozen=True)
class Arc:
    tail: object
    head: object
    lower: Fraction
    upper: Fraction


def feasible_circulation(arcs: list[Arc]) -> list[Fraction] | None:
    """Find arc flows meeting [lower, upper] bounds with balanced nodes.

    Standard transformation: route each lower bound through a super
    source/sink and demand a saturating max-flow.  Returns per-arc flows in
    input order, or None when infeasible.
    """
    for a in arcs:
        if a.lower > a.upper:
            return None
    net = FlowNetwork()
    excess: dict = {}
    ids = []
    for a in arcs:
        ids.append(net.add_edge(("n", a.tail), ("n", a.head), a.upper - a.lower))
        excess[a.head] = excess.get(a.head, Fraction(0)) + a.lower
        excess[a.tail] = excess.get(a.tail, Fraction(0)) - a.lower
    source, sink = ("super", "s"), ("super", "t")
    need = Fraction(0)
    for node, e in excess.items():
        if e > 0:
            net.add_edge(source, ("n", node), e)
            need += e
        elif e < 0:
            net.add_edge(("n", node), sink, -e)
    if net.max_flow(source, sink) != need:
        return None
    return [arcs[i].lower + net.flow_on(eid) for i, eid in enumerate(ids)]
