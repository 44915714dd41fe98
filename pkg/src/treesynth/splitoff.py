"""Eliminating inner nodes from a capacitated graph without losing connectivity.

A split at the active node s replaces one unit of capacity on each of (s, u)
and (s, w) with a unit on (u, w); splitting a pair with u == w just burns two
units into a loop, which is dropped. Amounts are chosen so the pairwise
connectivity snapshot taken when s became active keeps holding among all other
nodes.
"""

from itertools import combinations_with_replacement

from .errors import NoSplittablePair, NotANeighbor, ResidualInnerDegree, UnknownNode
from .maxflow import CapacitatedMultigraph, connectivity_snapshot, max_flow
from .model import Realization, node_pair


class SplitState:
    """Mutable bookkeeping while one node is being eliminated.

    `demands` maps node pairs (never touching the active node) to the
    connectivity that must survive every split; by default it is the snapshot
    of the graph at activation. `events` records executed splits as
    (u, w, amount) triples in order.
    """

    def __init__(self, graph, active_node, demands=None):
        if active_node not in graph:
            raise UnknownNode(f"unknown node {active_node!r}")
        if demands is None:
            demands = connectivity_snapshot(graph, active_node)
        else:
            demands = {node_pair(*p): int(v) for p, v in dict(demands).items()}
            for (x, y), v in demands.items():
                if active_node in (x, y):
                    raise ValueError(f"demand {x!r}-{y!r} touches the active node")
                if x not in graph or y not in graph:
                    raise UnknownNode(f"demand pair {x!r}-{y!r} outside the graph")
                if v < 0:
                    raise ValueError(f"negative demand on {x!r}-{y!r}")
        self.graph = graph
        self.active = active_node
        self.demands = demands
        self._checks = _dominant_demands(demands)
        self.events = []


def _dominant_demands(demands):
    """Spanning subset of demand pairs whose satisfaction implies all of them.

    Connectivity of any graph obeys lam(x, y) >= min(lam(x, z), lam(z, y)),
    and on a maximum-weight spanning tree of the demand map every tree path
    bottleneck is at least the direct demand, so checking the tree pairs is
    exact. Cuts the per-split flow checks from quadratic to linear.
    """
    nodes = sorted({x for p in demands for x in p})
    if len(nodes) < 2:
        return []
    start = nodes[0]
    best = {v: (demands.get(node_pair(start, v), 0), start) for v in nodes[1:]}
    out = []
    while best:
        top = None
        for v, (w, _) in best.items():
            if top is None or w > best[top][0]:
                top = v
        weight, anchor = best.pop(top)
        if weight > 0:
            out.append((anchor, top, weight))
        for v in best:
            cand = demands.get(node_pair(top, v), 0)
            if cand > best[v][0]:
                best[v] = (cand, top)
    return out


def expand_capacity_graph(instance, capacity):
    """Capacitated graph on the tree nodes with the tree edges as its edges."""
    graph = CapacitatedMultigraph(instance.tree.nodes)
    for (u, v), c in capacity.items():
        if c > 0:
            graph.set_capacity(u, v, c)
    return graph


def _apply_split(graph, s, u, w, amount):
    if u == w:
        graph.add_capacity(s, u, -2 * amount)
    else:
        graph.add_capacity(s, u, -amount)
        graph.add_capacity(s, w, -amount)
        graph.add_capacity(u, w, amount)


def _demands_hold(state):
    graph = state.graph
    for x, y, needed in state._checks:
        if max_flow(graph, x, y) < needed:
            return False
    return True


def admissible_amount(state, u, w):
    """Largest amount the pair (u, w) can be split at the active node.

    Bounded by the incident capacities (half of one capacity when u == w) and
    by demand preservation, which is monotone in the amount, so a binary
    search over flow checks finds the maximum. Returns 0 for unsplittable
    pairs; raises NotANeighbor when u or w has no capacity to the node.
    """
    graph, s = state.graph, state.active
    if u == s or w == s:
        raise NotANeighbor(f"{s!r} is the active node, not a neighbor of itself")
    zu = graph.capacity(s, u)
    zw = graph.capacity(s, w)
    if zu <= 0 or zw <= 0:
        missing = u if zu <= 0 else w
        raise NotANeighbor(f"{missing!r} does not neighbor {s!r}")
    cap = zu // 2 if u == w else min(zu, zw)
    if cap == 0:
        return 0
    if u == w and graph.neighbors(s) == (u,):
        # sole neighbor: no simple path between other nodes crosses s,
        # so burning capacity into a loop cannot hurt any demand
        return cap

    def splittable(amount):
        _apply_split(graph, s, u, w, amount)
        try:
            return _demands_hold(state)
        finally:
            _apply_split(graph, s, u, w, -amount)

    if not splittable(1):
        return 0
    if cap == 1 or splittable(cap):
        return cap
    lo, hi = 1, cap - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if splittable(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def split_node(state, on_split=None):
    """Drive the active node's degree to zero by admissible splits.

    Neighbor pairs are scanned in lexicographic order (repeats allowed) and
    the first pair with a positive admissible amount is split at its maximum.
    The demand snapshot keeps holding after every step. Raises
    NoSplittablePair when nothing works, which means the input graph broke a
    precondition (some demand cut of value 0 or 1).
    """
    graph, s = state.graph, state.active
    while graph.degree(s) > 0:
        assert graph.degree(s) % 2 == 0, f"odd degree at {s!r}"
        found = False
        for u, w in combinations_with_replacement(sorted(graph.neighbors(s)), 2):
            amount = admissible_amount(state, u, w)
            if amount > 0:
                _apply_split(graph, s, u, w, amount)
                state.events.append((u, w, amount))
                if on_split is not None:
                    on_split(state, u, w, amount)
                found = True
                break
        if not found:
            raise NoSplittablePair(f"no admissible split remains at {s!r}")
    return graph


def extract_realization(graph, terminals):
    """Read the terminal-pair capacities off a fully reduced graph.

    Loops are discarded. Any non-terminal with positive (loop-free) degree
    means elimination is incomplete and raises ResidualInnerDegree.
    """
    terminal_set = set(terminals)
    for t in terminal_set:
        if t not in graph:
            raise UnknownNode(f"terminal {t!r} missing from the graph")
    for v in graph.nodes:
        if v not in terminal_set and graph.degree(v) > 0:
            raise ResidualInnerDegree(f"{v!r} still has degree {graph.degree(v)}")
    values = {}
    for (u, v), c in graph.positive_pairs():
        if u != v and u in terminal_set and v in terminal_set:
            values[(u, v)] = c
    return Realization(values)


def realize_capacity(instance, capacity, on_split=None):
    """Run the full elimination: expand, split out each inner node, extract.

    Inner nodes are processed in ascending identifier order, each against a
    fresh connectivity snapshot. Returns (realization, trace) where trace is
    a tuple of (node, u, w, amount) split records.
    """
    graph = expand_capacity_graph(instance, capacity)
    trace = []
    for s in sorted(instance.inner_nodes()):
        if graph.degree(s) == 0:
            continue
        state = SplitState(graph, s)
        split_node(state, on_split=on_split)
        trace.extend((s, u, w, amount) for u, w, amount in state.events)
    return extract_realization(graph, instance.terminals), tuple(trace)
