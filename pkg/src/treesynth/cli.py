"""Command-line front end and the INSP-JSON instance format.

One JSON document per instance. Lengths are exact: JSON integers or strings
like "0.5" / "7/3"; bare JSON floats are rejected. Exit codes: 0 success,
1 input error, 2 precondition violation, 3 verification failure, 4 internal
invariant failure.
"""

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction

from .errors import (
    NoSplittablePair,
    ParseError,
    PreconditionViolated,
    SolverInternalError,
    TreeSynthError,
)
from .join import ParityInstance, min_cost_ij_join
from .model import Realization, build_instance, node_pair
from .solver import check_preconditions, optimal_cost_formula, solve
from .verify import fractional_lower_bound, verify_realization

FORMAT_VERSION = "insp-json-v1"
DEFAULT_LENGTH_POOL = ("0", "1/2", "1", "2", "7/3")


def format_rational(value):
    """Serialize an exact rational as a JSON int or a "p/q" string."""
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(raw, where="value"):
    """Read an exact rational from a JSON int or string; floats are refused."""
    if isinstance(raw, bool):
        raise ParseError(f"{where}: expected a number, got a boolean")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        raise ParseError(f'{where}: floats are inexact; quote it, e.g. "1/2" or "0.5"')
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: cannot read {raw!r} as a rational") from exc
    raise ParseError(f"{where}: expected an int or string, got {type(raw).__name__}")


def _expect_keys(obj, required, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{where}: missing fields {sorted(missing)}")
    unknown = set(obj) - required
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")


def _string_list(raw, where):
    if not isinstance(raw, list):
        raise ParseError(f"{where}: expected a list")
    for item in raw:
        if not isinstance(item, str):
            raise ParseError(f"{where}: identifiers must be strings, got {item!r}")
    return list(raw)


def parse_instance(text):
    """Parse an INSP-JSON document into a validated Instance."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    _expect_keys(doc, {"version", "terminals", "tree", "requirements"}, "document")
    if doc["version"] != FORMAT_VERSION:
        raise ParseError(f"unsupported version {doc['version']!r}; expected {FORMAT_VERSION!r}")
    terminals = _string_list(doc["terminals"], "terminals")
    _expect_keys(doc["tree"], {"nodes", "edges"}, "tree")
    nodes = _string_list(doc["tree"]["nodes"], "tree.nodes")
    if not isinstance(doc["tree"]["edges"], list):
        raise ParseError("tree.edges: expected a list")
    edges = []
    for k, entry in enumerate(doc["tree"]["edges"]):
        where = f"tree.edges[{k}]"
        _expect_keys(entry, {"u", "v", "length"}, where)
        if not isinstance(entry["u"], str) or not isinstance(entry["v"], str):
            raise ParseError(f"{where}: endpoints must be strings")
        edges.append((entry["u"], entry["v"], parse_rational(entry["length"], f"{where}.length")))
    if not isinstance(doc["requirements"], list):
        raise ParseError("requirements: expected a list")
    requirements = []
    for k, entry in enumerate(doc["requirements"]):
        where = f"requirements[{k}]"
        _expect_keys(entry, {"s", "t", "r"}, where)
        if not isinstance(entry["s"], str) or not isinstance(entry["t"], str):
            raise ParseError(f"{where}: endpoints must be strings")
        r = entry["r"]
        if isinstance(r, bool) or not isinstance(r, int):
            raise ParseError(f"{where}.r: expected an integer, got {r!r}")
        requirements.append((entry["s"], entry["t"], r))
    return build_instance(terminals, nodes, edges, requirements)


def instance_document(instance):
    """Serialize an Instance back to its INSP-JSON document."""
    tree = instance.tree
    return {
        "version": FORMAT_VERSION,
        "terminals": list(instance.terminals),
        "tree": {
            "nodes": list(tree.nodes),
            "edges": [
                {"u": u, "v": v, "length": format_rational(tree.lengths[(u, v)])}
                for (u, v) in tree.edges
            ],
        },
        "requirements": [
            {"s": s, "t": t, "r": r}
            for (s, t), r in sorted(instance.requirements.pairs())
        ],
    }


def instance_hash(instance):
    """Stable hex digest of the instance content, order-insensitive where possible."""
    doc = instance_document(instance)
    canonical = {
        "version": doc["version"],
        "terminals": doc["terminals"],
        "tree": {
            "nodes": sorted(doc["tree"]["nodes"]),
            "edges": sorted(
                doc["tree"]["edges"], key=lambda e: (e["u"], e["v"])
            ),
        },
        "requirements": doc["requirements"],
    }
    blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def generate_document(terminals, inner, rmin, rmax, seed, lengths=DEFAULT_LENGTH_POOL):
    """Deterministic random instance document.

    Construction, driven entirely by random.Random(seed):
      1. Inner nodes s0..s{m-1} form a random recursive tree (each attaches
         to a uniform earlier inner node); with no inner nodes the terminals
         t0..t{k-1} form the recursive tree instead.
      2. Every inner node short of degree 2 is padded with terminal children
         (terminals assigned by a seeded shuffle), so no leaf is inner; the
         inner tree is redrawn if the padding needs more terminals than exist.
      3. Remaining terminals attach to a uniform already-placed node.
      4. Edge lengths are uniform draws from `lengths`; every terminal pair
         gets a requirement uniform in [rmin, rmax].
    """
    if terminals < 1:
        raise ValueError("need at least one terminal")
    if inner < 0:
        raise ValueError("inner node count cannot be negative")
    if not 0 <= rmin <= rmax:
        raise ValueError("need 0 <= rmin <= rmax")
    pool = [format_rational(parse_rational(x, "length pool")) for x in lengths]
    if not pool:
        raise ValueError("length pool is empty")
    rng = random.Random(seed)
    term_names = [f"t{i}" for i in range(terminals)]
    inner_names = [f"s{i}" for i in range(inner)]

    links = []
    if inner == 0:
        for j in range(1, terminals):
            links.append((term_names[rng.randrange(j)], term_names[j]))
    else:
        for _ in range(1000):
            skeleton = [(inner_names[rng.randrange(j)], inner_names[j]) for j in range(1, inner)]
            degree = {v: 0 for v in inner_names}
            for a, b in skeleton:
                degree[a] += 1
                degree[b] += 1
            padding = [v for v in inner_names for _ in range(max(0, 2 - degree[v]))]
            if len(padding) <= terminals:
                break
        else:
            raise ValueError("cannot pad every inner node with the terminals available")
        links.extend(skeleton)
        order = list(range(terminals))
        rng.shuffle(order)
        placed = list(inner_names)
        for slot, idx in enumerate(order):
            t = term_names[idx]
            if slot < len(padding):
                links.append((padding[slot], t))
            else:
                links.append((placed[rng.randrange(len(placed))], t))
            placed.append(t)

    edges = []
    for a, b in links:
        u, v = node_pair(a, b)
        edges.append({"u": u, "v": v, "length": rng.choice(pool)})
    requirements = []
    for i in range(terminals):
        for j in range(i + 1, terminals):
            requirements.append(
                {"s": term_names[i], "t": term_names[j], "r": rng.randrange(rmin, rmax + 1)}
            )
    return {
        "version": FORMAT_VERSION,
        "terminals": term_names,
        "tree": {"nodes": term_names + inner_names, "edges": edges},
        "requirements": requirements,
    }


def _emit(doc, stream=None):
    print(json.dumps(doc, indent=2), file=stream or sys.stdout)


def _diag(message):
    print(message, file=sys.stderr)


def _load_instance(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _realization_entries(doc, where):
    if not isinstance(doc, list):
        raise ParseError(f"{where}: expected a list of realization entries")
    values = {}
    for k, entry in enumerate(doc):
        spot = f"{where}[{k}]"
        _expect_keys(entry, {"s", "t", "y"}, spot)
        y = entry["y"]
        if isinstance(y, bool) or not isinstance(y, int):
            raise ParseError(f"{spot}.y: expected an integer")
        key = node_pair(entry["s"], entry["t"])
        if key in values:
            raise ParseError(f"{spot}: duplicate pair {key}")
        values[key] = y
    return values


def _load_realization(path):
    """Read a realization file: either a bare entry list or a solve document."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    declared_hash = None
    if isinstance(doc, dict):
        if "realization" not in doc:
            raise ParseError(f"{path}: no 'realization' field")
        declared_hash = doc.get("instance_hash")
        entries = _realization_entries(doc["realization"], "realization")
    else:
        entries = _realization_entries(doc, "realization")
    try:
        return Realization(entries), declared_hash
    except TreeSynthError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _realization_rows(realization):
    return [
        {"s": s, "t": t, "y": y} for (s, t), y in sorted(realization.items())
    ]


def _cmd_solve(args):
    instance = _load_instance(args.instance)
    on_split = None
    if args.trace:
        def on_split(state, u, w, amount):
            _diag(f"split {state.active} {u} {w} {amount}")
    solution = solve(instance, on_split=on_split)
    if args.check:
        violations = verify_realization(instance, solution.realization)
        if violations:
            _diag(f"internal check failed: realization violates {violations}")
            return 4
        if optimal_cost_formula(instance) != solution.cost:
            _diag("internal check failed: formula value drifted from the solution cost")
            return 4
    _emit(
        {
            "status": "ok",
            "instance_hash": instance_hash(instance),
            "cost": format_rational(solution.cost),
            "formula_cost": format_rational(solution.formula_cost),
            "capacity": [
                {"u": u, "v": v, "c": c} for (u, v), c in sorted(solution.capacity.items())
            ],
            "join": [{"u": u, "v": v} for (u, v) in sorted(solution.join.edges)],
            "realization": _realization_rows(solution.realization),
        }
    )
    return 0


def _cmd_bound(args):
    instance = _load_instance(args.instance)
    doc = {
        "status": "ok",
        "instance_hash": instance_hash(instance),
        "fractional_lower_bound": format_rational(fractional_lower_bound(instance)),
    }
    bad = check_preconditions(instance)
    if bad:
        doc["integer_cost_formula"] = None
        doc["precondition_violations"] = [
            {"u": u, "v": v, "cut_requirement": r} for (u, v), r in bad
        ]
    else:
        doc["integer_cost_formula"] = format_rational(optimal_cost_formula(instance))
    _emit(doc)
    return 0


def _parse_node_list(raw, instance, label):
    names = [x for x in (part.strip() for part in raw.split(",")) if x]
    for name in names:
        if name not in set(instance.tree.nodes):
            raise ParseError(f"--{label}: {name!r} is not a tree node")
    return frozenset(names)


def _cmd_join(args):
    instance = _load_instance(args.instance)
    even = _parse_node_list(args.even, instance, "even")
    odd = _parse_node_list(args.odd, instance, "odd")
    if even & odd:
        raise ParseError(f"nodes cannot be both even and odd: {sorted(even & odd)}")
    result = min_cost_ij_join(ParityInstance(instance.tree, even, odd))
    if result is None:
        _emit({"status": "infeasible"})
        return 0
    _emit(
        {
            "status": "ok",
            "cost": format_rational(result.cost),
            "edges": [{"u": u, "v": v} for (u, v) in sorted(result.edges)],
        }
    )
    return 0


def _cmd_verify(args):
    instance = _load_instance(args.instance)
    realization, declared_hash = _load_realization(args.realization)
    if declared_hash is not None and declared_hash != instance_hash(instance):
        _diag(
            "instance hash mismatch: the realization document was produced "
            "for a different instance"
        )
        return 1
    violations = verify_realization(instance, realization)
    if violations:
        _emit(
            {
                "status": "violations",
                "violations": [
                    {"s": s, "t": t, "deficit": d} for s, t, d in violations
                ],
            }
        )
        return 3
    _emit({"status": "ok", "cost": format_rational(instance.realization_cost(realization))})
    return 0


def _cmd_gen(args):
    lengths = [x.strip() for x in args.lengths.split(",") if x.strip()]
    doc = generate_document(
        terminals=args.terminals,
        inner=args.inner,
        rmin=args.rmin,
        rmax=args.rmax,
        seed=args.seed,
        lengths=lengths,
    )
    _emit(doc)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="treesynth",
        description="Exact integer network synthesis with tree-metric costs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance and print the result document")
    p.add_argument("instance")
    p.add_argument("--trace", action="store_true", help="log each split to stderr")
    p.add_argument("--check", action="store_true", help="re-verify the result before printing")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bound", help="print the fractional lower bound and, when defined, the exact optimum")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("join", help="minimum parity-constrained edge set on the instance tree")
    p.add_argument("instance")
    p.add_argument("--even", default="", help="comma-separated nodes needing even degree")
    p.add_argument("--odd", default="", help="comma-separated nodes needing odd degree")
    p.set_defaults(func=_cmd_join)

    p = sub.add_parser("verify", help="check a realization file against an instance")
    p.add_argument("instance")
    p.add_argument("realization")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate a deterministic random instance document")
    p.add_argument("--terminals", type=int, required=True)
    p.add_argument("--inner", type=int, default=0)
    p.add_argument("--rmin", type=int, default=2)
    p.add_argument("--rmax", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--lengths",
        default=",".join(DEFAULT_LENGTH_POOL),
        help="comma-separated pool of exact edge lengths",
    )
    p.set_defaults(func=_cmd_gen)
    return parser


def run(argv=None):
    """Entry point returning an exit code; never raises on bad input."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except PreconditionViolated as exc:
        _diag(f"precondition violated: {exc}")
        return 2
    except (SolverInternalError, NoSplittablePair, AssertionError) as exc:
        _diag(f"internal invariant failure: {exc}")
        return 4
    except TreeSynthError as exc:
        _diag(f"error: {exc}")
        return 1
    except ValueError as exc:
        _diag(f"error: {exc}")
        return 1


def main():
    sys.exit(run(sys.argv[1:]))
