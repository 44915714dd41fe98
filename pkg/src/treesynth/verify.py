"""Independent checkers and exhaustive reference solvers.

Nothing here shares logic with the solver pipeline: realizations are checked
by max-flow, capacities by direct parity/coverage scans, and the brute-force
solver enumerates candidate realizations against explicit cuts.
"""

from fractions import Fraction
from itertools import combinations, product
from math import lcm

from .errors import TooLarge, UnknownTerminalPair, ValueOne
from .maxflow import CapacitatedMultigraph, max_flow
from .model import EdgeCapacity, Realization, node_pair

BRUTE_FORCE_TERMINAL_LIMIT = 5


def verify_realization(instance, realization):
    """All requirement violations of a realization, as (s, t, deficit) triples.

    Each positive requirement is checked by an exact max-flow on the graph the
    realization spans over the terminals; an empty list means feasible.
    """
    for (u, v), _ in realization.items():
        if u not in instance.terminal_set or v not in instance.terminal_set:
            raise UnknownTerminalPair(f"{u!r}-{v!r} is not a terminal pair")
    graph = CapacitatedMultigraph(instance.terminals, dict(realization.items()))
    violations = []
    for (s, t), r in sorted(instance.requirements.pairs()):
        flow = max_flow(graph, s, t)
        if flow < r:
            violations.append((s, t, r - flow))
    return violations


def verify_feasible_capacity(instance, capacity):
    """Violations of the two feasible-capacity conditions.

    Inner nodes need even capacity load ("parity" entries) and every tree
    edge needs capacity at least its cut requirement ("coverage" entries).
    """
    violations = []
    for v in instance.inner_nodes():
        load = capacity.load(v)
        if load % 2 != 0:
            violations.append(("parity", v, load))
    for e in instance.tree.edges:
        needed = instance.cut_requirement(instance.cut_side(e))
        have = capacity[e]
        if have < needed:
            violations.append(("coverage", e, have, needed))
    return violations


def fractional_lower_bound(instance):
    """Length-weighted sum of per-edge cut requirements.

    No realization, fractional or integral, can cost less than this.
    """
    return instance.base_capacity().cost()


def uniform_integer_formula(values):
    """Closed-form optimum for a uniform half-length star: ceil(sum / 2).

    `values` are the per-terminal requirement maxima. Undefined when any value
    is 1 (raises ValueOne); a value of 1 forces slack the formula ignores.
    """
    values = list(values)
    total = 0
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ValueError(f"requirement maxima must be nonnegative ints, got {v!r}")
        if v == 1:
            raise ValueOne("the closed form needs every requirement maximum to differ from 1")
        total += v
    return (total + 1) // 2


def capacity_projection(instance, realization):
    """Tree-edge loads induced by a terminal-pair capacity map.

    Each pair contributes its value to every edge whose cut separates the
    pair, i.e. to each edge on the tree path between the endpoints.
    """
    values = {}
    for e in instance.tree.edges:
        side = instance.cut_side(e)
        values[e] = sum(
            y for (i, j), y in realization.items() if (i in side) != (j in side)
        )
    return EdgeCapacity(instance.tree, values)


def brute_force_insp(instance, per_edge_bound=None):
    """Exhaustive minimum-cost realization with entries in [0, per_edge_bound].

    The bound defaults to the largest requirement, which always admits the
    trivial realization that carries each requirement on its own pair.
    Candidates are screened against every terminal cut (enumerable at this
    size), and the winner is re-checked with verify_realization so the two
    feasibility routes guard each other. Guarded to at most 5 terminals.
    """
    terminals = instance.terminals
    n = len(terminals)
    if n > BRUTE_FORCE_TERMINAL_LIMIT:
        raise TooLarge(f"{n} terminals; exhaustive search is capped at {BRUTE_FORCE_TERMINAL_LIMIT}")
    max_r = instance.requirements.max_value()
    bound = max_r if per_edge_bound is None else int(per_edge_bound)
    if bound > max_r:
        raise TooLarge(f"per-edge bound {bound} exceeds the largest requirement {max_r}")
    if bound < 0:
        raise ValueError("per-edge bound cannot be negative")
    if max_r == 0:
        return Realization({})

    pairs = [node_pair(a, b) for a, b in combinations(terminals, 2)]
    distances = [instance.tree.distance(*p) for p in pairs]
    # scale lengths to ints so the inner loop never touches Fractions
    denominator = lcm(*(d.denominator for d in distances)) if distances else 1
    weights = [int(d * denominator) for d in distances]

    rest = terminals[1:]
    cuts = []
    for mask in range(2 ** len(rest) - 1):
        side = {terminals[0]}
        side.update(rest[i] for i in range(len(rest)) if mask >> i & 1)
        needed = instance.cut_requirement(side)
        if needed == 0:
            continue
        crossing = [k for k, (a, b) in enumerate(pairs) if (a in side) != (b in side)]
        cuts.append((needed, crossing))

    # seed the search with the trivial per-pair realization for early pruning
    seed = tuple(min(instance.requirements.get(*p), bound) for p in pairs)
    best = None
    best_cost = None
    if all(sum(seed[k] for k in crossing) >= needed for needed, crossing in cuts):
        best = seed
        best_cost = sum(w * c for w, c in zip(weights, seed))
    for combo in product(range(bound + 1), repeat=len(pairs)):
        cost = 0
        for w, c in zip(weights, combo):
            cost += w * c
        if best_cost is not None and cost >= best_cost:
            continue
        if all(sum(combo[k] for k in crossing) >= needed for needed, crossing in cuts):
            best = combo
            best_cost = cost
    if best is None:
        raise TooLarge(f"no feasible realization with entries bounded by {bound}")
    realization = Realization({p: c for p, c in zip(pairs, best) if c})
    leftover = verify_realization(instance, realization)
    assert not leftover, f"cut screen and flow check disagree: {leftover}"
    return realization
