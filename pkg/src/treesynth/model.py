"""Core domain types: metric trees, requirements, instances, capacities, realizations.

All arithmetic is exact: edge lengths are `fractions.Fraction`, capacities and
requirements are Python ints. Every structure here is treated as immutable
after construction.
"""

from collections import deque
from fractions import Fraction

from .errors import (
    DuplicateRequirement,
    EmptyOrFullCut,
    InvalidInstance,
    NegativeLength,
    NotATree,
    SelfRequirement,
    TerminalNotInTree,
    UnknownEdge,
    UnknownNode,
    UnknownTerminalPair,
)


def node_pair(u, v):
    """Canonical unordered pair of node identifiers."""
    return (u, v) if u <= v else (v, u)


def as_length(value):
    """Coerce an edge length to an exact Fraction.

    Accepts int, Fraction, or a string like "2", "0.5", "7/3". Floats are
    rejected so no inexact value can sneak in.
    """
    if isinstance(value, float):
        raise InvalidInstance(
            f"edge length {value!r} is a float; pass an int, Fraction, or string"
        )
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInstance(f"cannot read {value!r} as an exact length") from exc


class MetricTree:
    """A tree with exact nonnegative edge lengths and a distinguished root.

    `nodes` keeps input order, `edges` keeps input order as canonical pairs.
    Pairwise distances are path lengths, computed lazily and cached.
    """

    def __init__(self, nodes, edges, root):
        self.nodes = tuple(nodes)
        node_set = set(self.nodes)
        if not self.nodes:
            raise NotATree("a tree needs at least one node")
        if len(node_set) != len(self.nodes):
            raise NotATree("duplicate node identifiers")
        if root not in node_set:
            raise UnknownNode(f"root {root!r} is not a tree node")
        self.root = root

        adj = {v: {} for v in self.nodes}
        lengths = {}
        order = []
        for u, v, raw in edges:
            if u not in node_set or v not in node_set:
                raise UnknownNode(f"edge {u!r}-{v!r} has an endpoint outside the node list")
            if u == v:
                raise NotATree(f"self-loop at {u!r}")
            e = node_pair(u, v)
            if e in lengths:
                raise NotATree(f"duplicate edge {e[0]}-{e[1]}")
            length = as_length(raw)
            if length < 0:
                raise NegativeLength(f"edge {e[0]}-{e[1]} has negative length {length}")
            lengths[e] = length
            adj[u][v] = length
            adj[v][u] = length
            order.append(e)
        if len(order) != len(self.nodes) - 1:
            raise NotATree(
                f"{len(self.nodes)} nodes need {len(self.nodes) - 1} edges, got {len(order)}"
            )
        # edge count is right, so connectivity alone rules out cycles
        seen = {self.nodes[0]}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(self.nodes):
            raise NotATree("edge list is disconnected")

        self.edges = tuple(order)
        self.lengths = lengths
        self._adj = adj
        self._dist = None

    def __eq__(self, other):
        if not isinstance(other, MetricTree):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.edges == other.edges
            and self.lengths == other.lengths
            and self.root == other.root
        )

    __hash__ = None

    def neighbors(self, v):
        if v not in self._adj:
            raise UnknownNode(f"unknown tree node {v!r}")
        return tuple(self._adj[v])

    def degree(self, v):
        return len(self.neighbors(v))

    def leaves(self):
        return tuple(v for v in self.nodes if len(self._adj[v]) <= 1)

    def _ensure_distances(self):
        if self._dist is not None:
            return
        dist = {}
        for src in self.nodes:
            row = {src: Fraction(0)}
            queue = deque([src])
            while queue:
                x = queue.popleft()
                for y, length in self._adj[x].items():
                    if y not in row:
                        row[y] = row[x] + length
                        queue.append(y)
            dist[src] = row
        self._dist = dist

    def distance(self, i, j):
        """Exact path length between two tree nodes."""
        if i not in self._adj:
            raise UnknownNode(f"unknown tree node {i!r}")
        if j not in self._adj:
            raise UnknownNode(f"unknown tree node {j!r}")
        self._ensure_distances()
        return self._dist[i][j]

    def side_containing(self, edge, start):
        """Tree nodes reachable from `start` without crossing `edge`."""
        e = node_pair(*edge)
        if e not in self.lengths:
            raise UnknownEdge(f"{edge!r} is not a tree edge")
        if start not in self._adj:
            raise UnknownNode(f"unknown tree node {start!r}")
        seen = {start}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if node_pair(x, y) == e or y in seen:
                    continue
                seen.add(y)
                queue.append(y)
        return frozenset(seen)


class RequirementMatrix:
    """Symmetric nonnegative integer requirements on unordered pairs.

    Only positive entries are stored; absent pairs default to 0.
    """

    def __init__(self, triples=()):
        values = {}
        seen = set()
        for s, t, r in triples:
            if s == t:
                raise SelfRequirement(f"requirement pairs {s!r} with itself")
            if isinstance(r, bool) or not isinstance(r, int):
                raise InvalidInstance(f"requirement r({s!r},{t!r}) must be an int, got {r!r}")
            if r < 0:
                raise InvalidInstance(f"requirement r({s!r},{t!r}) is negative")
            e = node_pair(s, t)
            if e in seen:
                raise DuplicateRequirement(f"pair {e[0]}-{e[1]} appears twice")
            seen.add(e)
            if r > 0:
                values[e] = r
        self.values = values

    def get(self, s, t):
        return self.values.get(node_pair(s, t), 0)

    def pairs(self):
        """Iterate (pair, value) over the stored positive entries."""
        return self.values.items()

    def max_value(self):
        return max(self.values.values(), default=0)

    def __eq__(self, other):
        if not isinstance(other, RequirementMatrix):
            return NotImplemented
        return self.values == other.values

    __hash__ = None

    def __len__(self):
        return len(self.values)


class Instance:
    """A validated problem: terminals, a representing tree, and requirements.

    The tree root is a terminal and every tree leaf is a terminal; use
    `build_instance` to get pruning and root selection from raw input.
    """

    def __init__(self, terminals, tree, requirements):
        self.terminals = tuple(terminals)
        if not self.terminals:
            raise InvalidInstance("at least one terminal is required")
        if len(set(self.terminals)) != len(self.terminals):
            raise InvalidInstance("duplicate terminal identifiers")
        node_set = set(tree.nodes)
        for t in self.terminals:
            if t not in node_set:
                raise TerminalNotInTree(f"terminal {t!r} is missing from the tree")
        self.terminal_set = frozenset(self.terminals)
        if tree.root not in self.terminal_set:
            raise InvalidInstance(f"tree root {tree.root!r} must be a terminal")
        for leaf in tree.leaves():
            if leaf not in self.terminal_set:
                raise InvalidInstance(
                    f"tree leaf {leaf!r} is not a terminal; build_instance prunes these"
                )
        for (s, t), _ in requirements.pairs():
            if s not in self.terminal_set or t not in self.terminal_set:
                raise UnknownNode(f"requirement references non-terminal {s!r}-{t!r}")
        self.tree = tree
        self.requirements = requirements
        self._cut_sides = {}
        self._base = None

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.terminals == other.terminals
            and self.tree == other.tree
            and self.requirements == other.requirements
        )

    __hash__ = None

    def is_terminal(self, v):
        return v in self.terminal_set

    def inner_nodes(self):
        """Tree nodes that are not terminals, in node order."""
        return tuple(v for v in self.tree.nodes if v not in self.terminal_set)

    def cut_side(self, edge):
        """Terminals on the root side of the cut a tree edge induces."""
        e = node_pair(*edge)
        cached = self._cut_sides.get(e)
        if cached is None:
            component = self.tree.side_containing(e, self.tree.root)
            cached = frozenset(component & self.terminal_set)
            self._cut_sides[e] = cached
        return cached

    def cut_requirement(self, side):
        """Largest requirement separated by the cut (side, complement)."""
        side = frozenset(side)
        stray = side - self.terminal_set
        if stray:
            raise UnknownNode(f"cut side contains non-terminals: {sorted(stray)!r}")
        if not side or side == self.terminal_set:
            raise EmptyOrFullCut("cut side must be a nonempty proper subset of the terminals")
        best = 0
        for (s, t), r in self.requirements.pairs():
            if r > best and (s in side) != (t in side):
                best = r
        return best

    def base_capacity(self):
        """Per-edge cut requirements: the fractional-relaxation support capacity."""
        if self._base is None:
            values = {e: self.cut_requirement(self.cut_side(e)) for e in self.tree.edges}
            self._base = EdgeCapacity(self.tree, values)
        return self._base

    def realization_cost(self, realization):
        """Total cost of a terminal-pair capacity map under tree distances."""
        total = Fraction(0)
        for (i, j), value in realization.items():
            if i not in self.terminal_set or j not in self.terminal_set:
                raise UnknownTerminalPair(f"{i!r}-{j!r} is not a terminal pair")
            total += self.tree.distance(i, j) * value
        return total


class EdgeCapacity:
    """Nonnegative integer capacities keyed exactly by a tree's edges."""

    def __init__(self, tree, values):
        cleaned = {}
        for edge, value in values.items():
            e = node_pair(*edge)
            if e not in tree.lengths:
                raise UnknownEdge(f"{edge!r} is not an edge of the tree")
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInstance(f"capacity on {e} must be an int, got {value!r}")
            if value < 0:
                raise InvalidInstance(f"capacity on {e} is negative")
            cleaned[e] = value
        missing = set(tree.edges) - set(cleaned)
        if missing:
            raise UnknownEdge(f"capacity missing for edges: {sorted(missing)!r}")
        self.tree = tree
        self.values = cleaned

    def __getitem__(self, edge):
        e = node_pair(*edge)
        if e not in self.values:
            raise UnknownEdge(f"{edge!r} is not an edge of the tree")
        return self.values[e]

    def items(self):
        return self.values.items()

    def load(self, v):
        """Sum of capacities on edges incident to a tree node."""
        return sum(self.values[node_pair(v, u)] for u in self.tree.neighbors(v))

    def cost(self):
        """Length-weighted total, an exact Fraction."""
        total = Fraction(0)
        for e, c in self.values.items():
            total += self.tree.lengths[e] * c
        return total

    def bump(self, edges):
        """A new capacity with +1 on each of the given edges."""
        values = dict(self.values)
        for edge in edges:
            values[node_pair(*edge)] += 1
        return EdgeCapacity(self.tree, values)

    def __eq__(self, other):
        if not isinstance(other, EdgeCapacity):
            return NotImplemented
        return self.values == other.values and self.tree == other.tree

    __hash__ = None


class Realization:
    """Sparse integer capacities on unordered terminal pairs; zeros are dropped."""

    def __init__(self, values=()):
        items = values.items() if hasattr(values, "items") else values
        store = {}
        for pair, value in items:
            u, v = pair
            if u == v:
                raise InvalidInstance(f"realization pairs {u!r} with itself")
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInstance(f"realization value on {pair!r} must be an int")
            if value < 0:
                raise InvalidInstance(f"realization value on {pair!r} is negative")
            e = node_pair(u, v)
            if e in store:
                raise InvalidInstance(f"pair {e} appears twice")
            if value > 0:
                store[e] = value
        self.values = store

    def get(self, u, v):
        return self.values.get(node_pair(u, v), 0)

    def items(self):
        return self.values.items()

    def __len__(self):
        return len(self.values)

    def __bool__(self):
        return bool(self.values)

    def __eq__(self, other):
        if not isinstance(other, Realization):
            return NotImplemented
        return self.values == other.values

    __hash__ = None

    def __repr__(self):
        inside = ", ".join(f"{u}-{v}: {c}" for (u, v), c in sorted(self.values.items()))
        return f"Realization({{{inside}}})"


def build_instance(terminals, tree_nodes, tree_edges, requirements=()):
    """Validate raw input and assemble an Instance.

    The root is the first terminal. Leaves that are not terminals sit on no
    terminal-to-terminal path and are pruned (repeatedly) before the instance
    is built, so they never influence cuts, costs, or parities.
    """
    terminals = list(terminals)
    if not terminals:
        raise InvalidInstance("at least one terminal is required")
    node_list = list(tree_nodes)
    node_set = set(node_list)
    for t in terminals:
        if t not in node_set:
            raise TerminalNotInTree(f"terminal {t!r} is missing from the tree nodes")
    tree = MetricTree(node_list, tree_edges, terminals[0])
    tree = _prune_non_terminal_leaves(tree, set(terminals))
    matrix = RequirementMatrix(requirements)
    return Instance(terminals, tree, matrix)


def _prune_non_terminal_leaves(tree, terminal_set):
    degrees = {v: len(tree._adj[v]) for v in tree.nodes}
    alive = set(tree.nodes)
    queue = deque(v for v in tree.nodes if v not in terminal_set and degrees[v] <= 1)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for u in tree._adj[v]:
            if u not in alive:
                continue
            degrees[u] -= 1
            if u not in terminal_set and degrees[u] <= 1:
                queue.append(u)
    if len(alive) == len(tree.nodes):
        return tree
    nodes = [v for v in tree.nodes if v in alive]
    edges = [
        (u, v, tree.lengths[(u, v)])
        for (u, v) in tree.edges
        if u in alive and v in alive
    ]
    return MetricTree(nodes, edges, tree.root)
