"""Shared builders and hypothesis strategies for the test suite."""

import json
import os

from hypothesis import strategies as st

from treesynth import MetricTree, build_instance, generate_document, parse_instance

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "instances")

LENGTH_POOL = ("0", "1/2", "1", "2", "7/3")


def fixture_path(name):
    return os.path.join(FIXTURE_DIR, name)


def star_instance(rmap, length="1/2", hub="hub"):
    """Star with the given requirement dict {(a, b): r} and one inner hub."""
    terminals = sorted({x for pair in rmap for x in pair})
    return build_instance(
        terminals,
        terminals + [hub],
        [(hub, t, length) for t in terminals],
        [(a, b, r) for (a, b), r in rmap.items()],
    )


def uniform_star(k, r, length="1/2"):
    terminals = [f"t{i}" for i in range(k)]
    rmap = {}
    for i in range(k):
        for j in range(i + 1, k):
            rmap[(terminals[i], terminals[j])] = r
    return star_instance(rmap, length=length)


def path_instance(labels, lengths, requirements):
    """Path graph over `labels`; non-terminal labels start with '_'."""
    terminals = [x for x in labels if not x.startswith("_")]
    edges = [(labels[i], labels[i + 1], lengths[i]) for i in range(len(labels) - 1)]
    return build_instance(terminals, list(labels), edges, requirements)


def zero_bridge_instance():
    """Two requirement-3 triads joined by a requirement-0 bridge edge."""
    with open(fixture_path("zero_bridge_triads.json")) as fh:
        return parse_instance(fh.read())


def random_instance(seed, terminals, inner, rmin=2, rmax=6, lengths=LENGTH_POOL):
    doc = generate_document(
        terminals=terminals, inner=inner, rmin=rmin, rmax=rmax, seed=seed, lengths=lengths
    )
    return parse_instance(json.dumps(doc))


@st.composite
def metric_trees(draw, min_nodes=1, max_nodes=8, lengths=LENGTH_POOL):
    """Random recursive tree over string node names, rooted at the first node."""
    n = draw(st.integers(min_nodes, max_nodes))
    names = [f"n{i}" for i in range(n)]
    edges = []
    for j in range(1, n):
        parent = draw(st.integers(0, j - 1))
        edges.append((names[parent], names[j], draw(st.sampled_from(lengths))))
    return MetricTree(names, edges, names[0])


@st.composite
def parity_marked_trees(draw, max_nodes=8):
    """A random tree plus disjoint even/odd node subsets."""
    tree = draw(metric_trees(max_nodes=max_nodes))
    marks = [draw(st.sampled_from("eof")) for _ in tree.nodes]
    even = frozenset(v for v, m in zip(tree.nodes, marks) if m == "e")
    odd = frozenset(v for v, m in zip(tree.nodes, marks) if m == "o")
    return tree, even, odd


@st.composite
def solvable_instances(draw, max_terminals=6, max_inner=3, rmin=2, rmax=6):
    k = draw(st.integers(2, max_terminals))
    m = draw(st.integers(0, max_inner))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(seed, terminals=k, inner=m, rmin=rmin, rmax=rmax)
