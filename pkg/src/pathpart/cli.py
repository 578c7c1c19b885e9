"""Command-line front end: parse graphs, dispatch solvers, emit JSON results.

Graph files are DIMACS-flavoured text: a ``p <undirected|directed> <n> <m>``
header, ``c`` comment lines, and one ``e <u> <v>`` line per edge with
1-indexed endpoints (arcs read left to right in directed files).  Everything
the tool prints on stdout is a single JSON document, except ``generate``
which prints the reduction target.

Exit codes: 0 ok/valid, 1 invalid solution, 2 parse error, 3 unsupported
combination, 4 budget exceeded, 5 generator error.
"""

import argparse
import json
import os
import random
import sys
import time

from . import dagpp, ndsolver, oracle, reductions, sppxp, vcsolver
from .checker import Kind, Mode, PathSystem, Variant, verify
from .graph import (
    Graph,
    all_pairs_distances,
    bipartition,
    connected_components,
    degeneracy,
    diameter,
    induced_subgraph,
    topological_order,
    underlying_undirected,
)

KINDS = {"pp": Kind.UNRESTRICTED, "ipp": Kind.INDUCED, "spp": Kind.SHORTEST}
MODES = {
    "partition": Mode.PARTITION,
    "cover": Mode.COVER,
    "ed-cover": Mode.EDGE_DISJOINT_COVER,
}

DEFAULT_LIMITS = {"XP_MAX_K": 4, "XP_MAX_N": 40, "ND_MAX_CLASSES": 8}


class GraphParseError(Exception):
    pass


def load_limits():
    """Auto-dispatch thresholds, overridable via a PATHPART_LIMITS file."""
    limits = dict(DEFAULT_LIMITS)
    path = os.environ.get("PATHPART_LIMITS")
    if path:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, value = line.partition("=")
                key = key.strip().upper()
                if key in limits:
                    limits[key] = int(value.strip())
    return limits


def parse_graph_file(path):
    with open(path, encoding="utf-8") as fh:
        header = None
        edges = []
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if header is not None:
                    raise GraphParseError(f"{path}:{lineno}: duplicate header")
                if len(parts) != 4 or parts[1] not in ("undirected", "directed"):
                    raise GraphParseError(f"{path}:{lineno}: bad header")
                header = (parts[1] == "directed", int(parts[2]), int(parts[3]))
            elif parts[0] == "e":
                if header is None:
                    raise GraphParseError(f"{path}:{lineno}: edge before header")
                if len(parts) != 3:
                    raise GraphParseError(f"{path}:{lineno}: bad edge line")
                u, v = int(parts[1]), int(parts[2])
                if not (1 <= u <= header[1] and 1 <= v <= header[1]):
                    raise GraphParseError(f"{path}:{lineno}: endpoint out of range")
                edges.append((u - 1, v - 1))
            else:
                raise GraphParseError(f"{path}:{lineno}: unknown line {parts[0]!r}")
    if header is None:
        raise GraphParseError(f"{path}: missing header")
    directed, n, m = header
    if len(edges) != m:
        raise GraphParseError(f"{path}: header claims {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges, directed=directed)
    except ValueError as exc:
        raise GraphParseError(f"{path}: {exc}") from exc


def write_graph_file(g, path, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            fh.write(f"c {comment}\n")
        word = "directed" if g.directed else "undirected"
        fh.write(f"p {word} {g.n} {g.m}\n")
        for u, v in g.edges():
            fh.write(f"e {u + 1} {v + 1}\n")


def _emit(doc):
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _result_doc(g, kind_word, mode_word, algo, answer, value, system, elapsed, k=None):
    paths = []
    verified = True
    if system is not None:
        paths = [[v + 1 for v in seq] for seq in system.paths]
        verified = verify(g, system).valid
    doc = {
        "problem": f"{kind_word}-{mode_word}",
        "kind": kind_word,
        "mode": mode_word,
        "direction": "directed" if g.directed else "undirected",
        "n": g.n,
        "m": g.m,
        "answer": answer,
        "value": value,
        "paths": paths,
        "algorithm": algo,
        "elapsed_ms": round(elapsed * 1000.0, 3),
        "verified": verified,
    }
    if k is not None:
        doc["k_requested"] = k
    return doc


def _pick_auto(g, kind, mode, k, limits):
    if kind is Kind.UNRESTRICTED and mode is Mode.PARTITION and g.directed:
        if topological_order(g) is not None:
            return "dag-pp"
    is_dagish = not g.directed or topological_order(g) is not None
    if (
        kind is Kind.SHORTEST
        and mode is Mode.PARTITION
        and k is not None
        and is_dagish
        and k <= limits["XP_MAX_K"]
        and g.n <= limits["XP_MAX_N"]
    ):
        return "xp"
    if kind in (Kind.INDUCED, Kind.SHORTEST):
        cls = ndsolver.dnd_classes(g) if g.directed else ndsolver.nd_classes(g)
        if cls.width <= limits["ND_MAX_CLASSES"]:
            return "nd"
    if kind is Kind.UNRESTRICTED and mode is Mode.PARTITION and not g.directed:
        return "vc"
    return "oracle"


def _dump_ilp(g, variant, path):
    chunks = []
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        cls = ndsolver.dnd_classes(sub) if sub.directed else ndsolver.nd_classes(sub)
        vectors = ndsolver.enumerate_path_classes(sub, cls, variant.kind)
        ilp = ndsolver.build_ilp(sub, cls, vectors, variant)
        chunks.append(ndsolver.serialize_ilp(ilp))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(chunks))


def cmd_solve(args):
    try:
        g = parse_graph_file(args.graph)
    except (GraphParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    kind = KINDS[args.kind]
    mode = MODES[args.mode]
    variant = Variant(kind, mode)
    limits = load_limits()
    algo = args.algo
    if algo == "auto":
        algo = _pick_auto(g, kind, mode, args.k, limits)

    # flag consistency
    if algo == "dag-pp" and not (
        kind is Kind.UNRESTRICTED
        and mode is Mode.PARTITION
        and g.directed
        and topological_order(g) is not None
    ):
        print("error: dag-pp needs an unrestricted partition on a DAG", file=sys.stderr)
        return 3
    if algo == "xp":
        if kind is not Kind.SHORTEST or mode is not Mode.PARTITION or args.k is None:
            print("error: xp needs --kind spp, --mode partition and --k", file=sys.stderr)
            return 3
        if g.directed and topological_order(g) is None:
            print("error: shortest path partition on general digraphs is open", file=sys.stderr)
            return 3
    if algo == "nd" and kind is Kind.UNRESTRICTED:
        print("error: nd serves induced/shortest kinds", file=sys.stderr)
        return 3
    if algo == "vc" and (
        kind is not Kind.UNRESTRICTED or mode is not Mode.PARTITION or g.directed
    ):
        print("error: vc needs an undirected unrestricted partition", file=sys.stderr)
        return 3
    if algo == "dual":
        if args.k_dual is None or mode is not Mode.PARTITION:
            print("error: dual needs --k-dual and --mode partition", file=sys.stderr)
            return 3
        if g.directed and kind is Kind.UNRESTRICTED:
            print("error: directed unrestricted dual is open", file=sys.stderr)
            return 3

    if args.dump_ilp and kind is not Kind.UNRESTRICTED:
        _dump_ilp(g, variant, args.dump_ilp)

    start = time.perf_counter()
    try:
        if algo == "oracle":
            budget = oracle.OracleBudget.default_for(mode)
            budget.max_vertices = max(budget.max_vertices, g.n) if args.force else budget.max_vertices
            system = oracle.solve_exact(g, variant, budget)
        elif algo == "dag-pp":
            system = dagpp.solve_dagpp(g)
        elif algo == "xp":
            system = sppxp.solve_spp_xp(g, args.k, threads=args.threads)
        elif algo == "nd":
            system = ndsolver.solve_nd(g, variant)
        elif algo == "vc":
            system = vcsolver.solve_upp_vc(g, threads=args.threads)
        else:  # dual
            system = vcsolver.solve_dual(g, args.k_dual, variant)
    except oracle.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (sppxp.UnsupportedInput, ndsolver.UnsupportedVariant, dagpp.NotADag) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    elapsed = time.perf_counter() - start

    if algo == "xp":
        if system is None:
            doc = _result_doc(g, args.kind, args.mode, algo, "no", None, None, elapsed, args.k)
        else:
            doc = _result_doc(
                g, args.kind, args.mode, algo, "yes", len(system.paths), system, elapsed, args.k
            )
    elif algo == "dual":
        if system is None:
            doc = _result_doc(
                g, args.kind, args.mode, algo, "no", None, None, elapsed, g.n - args.k_dual
            )
        else:
            doc = _result_doc(
                g,
                args.kind,
                args.mode,
                algo,
                "yes",
                len(system.paths),
                system,
                elapsed,
                g.n - args.k_dual,
            )
    else:
        value = len(system.paths)
        if args.k is not None:
            answer = "yes" if value <= args.k else "no"
            doc = _result_doc(g, args.kind, args.mode, algo, answer, value, system, elapsed, args.k)
        else:
            doc = _result_doc(g, args.kind, args.mode, algo, "optimum", value, system, elapsed)
    _emit(doc)
    return 0 if doc["verified"] else 1


def cmd_params(args):
    try:
        g = parse_graph_file(args.graph)
    except (GraphParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    base = underlying_undirected(g) if g.directed else g
    doc = {
        "n": g.n,
        "m": g.m,
        "direction": "directed" if g.directed else "undirected",
        "diameter": diameter(g),
        "degeneracy": degeneracy(base)[0],
        "bipartite": bipartition(base) is not None,
        "nd": ndsolver.nd_classes(base).width,
        "vc": len(vcsolver.min_vertex_cover(base)),
    }
    if g.directed:
        doc["dnd"] = ndsolver.dnd_classes(g).width
    _emit(doc)
    return 0


def _random_bipartite_deg3(rng, n):
    colors = [i % 2 for i in range(n)]
    side_a = [v for v in range(n) if colors[v] == 0]
    side_b = [v for v in range(n) if colors[v] == 1]
    deg = [0] * n
    edges = []
    candidates = [(a, b) for a in side_a for b in side_b]
    rng.shuffle(candidates)
    for a, b in candidates:
        if deg[a] < 3 and deg[b] < 3 and rng.random() < 0.5:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return Graph(n, edges), side_a, side_b


def cmd_generate(args):
    rng = random.Random(args.seed)
    try:
        if args.family == "3dm":
            if args.triples:
                triples = [
                    tuple(int(x) for x in part.split(","))
                    for part in args.triples.split(";")
                ]
            else:
                universe = [
                    (x, y, z)
                    for x in range(args.p)
                    for y in range(args.p)
                    for z in range(args.p)
                ]
                if args.q > len(universe):
                    raise reductions.MalformedInstance("q larger than the triple universe")
                triples = rng.sample(universe, args.q)
            inst = reductions.ThreeDmInstance(args.p, triples)
            out = reductions.gen_3dm_to_dagspp(inst, kind=KINDS[args.kind])
        elif args.family == "clique":
            if args.base:
                base = parse_graph_file(args.base)
            else:
                n = args.random_base
                edges = [
                    (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5
                ]
                base = Graph(n, edges)
            out = reductions.gen_clique_to_dagspp(base, args.k)
        else:  # 4uipp
            if args.base:
                base = parse_graph_file(args.base)
                out = reductions.gen_4uipp_to_uspp(base)
            else:
                base, side_a, side_b = _random_bipartite_deg3(rng, args.random_base)
                out = reductions.gen_4uipp_to_uspp(base, parts=(side_a, side_b))
    except (
        reductions.MalformedInstance,
        reductions.BadK,
        reductions.NotBipartite,
        reductions.BadOrder,
        GraphParseError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5

    write_graph_file(out.graph, args.out + ".gr", comment=f"{out.family} reduction")
    with open(args.out + ".labels", "w", encoding="utf-8") as fh:
        for v in range(out.graph.n):
            fh.write(f"{v + 1}\t{out.vertex_labels[v]}\n")
    print(f"k_target {out.k_target}")
    return 0


def cmd_verify(args):
    try:
        g = parse_graph_file(args.graph)
        with open(args.solution, encoding="utf-8") as fh:
            payload = json.load(fh)
        kind = KINDS[payload["kind"]]
        mode = MODES[payload["mode"]]
        paths = [[int(v) - 1 for v in seq] for seq in payload["paths"]]
    except (GraphParseError, OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    verdict = verify(g, PathSystem(paths, Variant(kind, mode)))
    _emit(
        {
            "valid": verdict.valid,
            "failures": [{"path": idx, "reason": reason} for idx, reason in verdict.failures],
        }
    )
    return 0 if verdict.valid else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="pathpart", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a path partition/cover instance")
    solve.add_argument("graph")
    solve.add_argument("--kind", choices=sorted(KINDS), required=True)
    solve.add_argument("--mode", choices=["partition", "cover", "ed-cover"], default="partition")
    solve.add_argument(
        "--algo",
        choices=["auto", "oracle", "dag-pp", "xp", "nd", "vc", "dual"],
        default="auto",
    )
    solve.add_argument("--k", type=int, default=None, help="decision bound on the path count")
    solve.add_argument("--k-dual", dest="k_dual", type=int, default=None)
    solve.add_argument("--threads", type=int, default=1)
    solve.add_argument("--force", action="store_true", help="lift the oracle size budget")
    solve.add_argument("--dump-ilp", default=None, help="write the ND ILP rows to a file")
    solve.set_defaults(func=cmd_solve)

    params = sub.add_parser("params", help="report structural parameters")
    params.add_argument("graph")
    params.set_defaults(func=cmd_params)

    gen = sub.add_parser("generate", help="emit a hardness reduction instance")
    gen.add_argument("family", choices=["3dm", "clique", "4uipp"])
    gen.add_argument("--p", type=int, default=1)
    gen.add_argument("--q", type=int, default=1)
    gen.add_argument("--triples", default=None, help='explicit "x,y,z;x,y,z" list')
    gen.add_argument("--kind", choices=["spp", "ipp"], default="spp")
    gen.add_argument("--base", default=None, help="base graph file")
    gen.add_argument("--random-base", dest="random_base", type=int, default=4)
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output path prefix")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="check a solution file against a graph")
    ver.add_argument("graph")
    ver.add_argument("solution")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
