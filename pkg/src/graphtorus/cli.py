"""Command-line front end. Every analysis prints one JSON report on stdout."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .arithmetic_probe import count_points, polynomial_fit
from .corpus import corpus
from .fixed_locus import fixed_points_in_hypersurface
from .graph_core import (
    GraphError,
    Multigraph,
    SearchBoundError,
    banana,
    betti,
    complete_bipartite,
    complete_graph,
    cycle_basis,
    cycle_graph,
    first_spanning_tree,
    format_graph,
    parse_graph,
    spanning_trees,
    wheel,
)
from .kirchhoff import (
    build_cycle_matrix,
    check_diagonal_independent,
    kirchhoff,
    kirchhoff_dc,
    normalize,
    subdivision_identity,
)
from .multipoly import determinant
from .planar_star import is_planar, is_star_graph_definitional, is_star_graph_matrix
from .torus_lattice import (
    clusters,
    exact_diagonal_rank,
    projective_rank,
    rank_lower_bound,
    weight_lattice,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2

GENERATORS = {
    "wheel": (wheel, 1),
    "banana": (banana, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "bipartite": (complete_bipartite, 2),
}


class CheckFailed(Exception):
    """A mathematical check failed; the payload is still reported."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


def _read_graph(args) -> Multigraph:
    text = open(args.file).read() if args.file else sys.stdin.read()
    return parse_graph(text)


def _basis(g: Multigraph, args):
    if args.basis == "faces":
        planar, b = is_planar(g, args.bound)
        if not planar:
            raise GraphError("graph is not planar: no face basis")
        return b
    return cycle_basis(g, first_spanning_tree(g))


def _poly_payload(g, args):
    p = kirchhoff(g)
    homog = p.is_homogeneous() is not None
    header = f"{len(p)} terms, degree {p.degree()}, {'homogeneous' if homog else 'inhomogeneous'}"
    return {"header": header, "terms": len(p), "degree": p.degree(), "homogeneous": homog,
            "polynomial": p.to_str()}, header + "\n" + p.to_str()


def _matrix_payload(g, args):
    b = _basis(g, args)
    m = build_cycle_matrix(g, b)
    payload = {"basis": [sorted(s) for s in b.supports()], "provenance": b.provenance,
               "matrix": m.to_strings()}
    return payload, "\n".join("  ".join(row) for row in m.to_strings())


def _verify_payload(g, args):
    b = _basis(g, args)
    m = build_cycle_matrix(g, b)
    det = determinant(m, bound=max(8, m.h))
    poly = kirchhoff(g)
    ok = det == poly
    payload = {"ok": ok, "h1": m.h, "terms": len(poly), "basis": [sorted(s) for s in b.supports()]}
    if not ok:
        raise CheckFailed(payload)
    return payload, "det M = P: ok"


def _lattice_payload(g, args):
    lat = weight_lattice(kirchhoff(g), args.convention)
    payload = lat.to_json()
    payload["projective_rank"] = lat.rank - 1 if args.convention == "constant" else None
    return payload, f"lattice rank {lat.rank}"


def _normalized(g, args):
    m = build_cycle_matrix(g, _basis(g, args))
    if not check_diagonal_independent(m):
        raise GraphError("diagonal entries are linearly dependent")
    return normalize(m)


def _rank_payload(g, args):
    nm = _normalized(g, args)
    exact = exact_diagonal_rank(nm)
    payload = {
        "bound": rank_lower_bound(nm),
        "exact_lambda_h": exact.rank,
        "full_lattice_rank": projective_rank(nm.expanded_determinant()),
        "edge_coordinate_rank": projective_rank(kirchhoff(g)),
        "ell": nm.ell,
        "n": nm.n,
        "h1": nm.h,
    }
    text = f"bound {payload['bound']} <= exact {payload['exact_lambda_h']} <= full {payload['full_lattice_rank']}"
    return payload, text


def _clusters_payload(g, args):
    nm = _normalized(g, args)
    part = clusters(nm)
    return {"normalized": nm.to_json(), "clusters": part.to_json()}, f"cluster sizes {part.sizes()}, delta {part.delta}"


def _star_payload(g, args):
    d = is_star_graph_definitional(g, limit=args.limit, bound=args.bound)
    m = is_star_graph_matrix(g, bound=args.bound)
    payload = d.to_json()
    payload["matrix_criterion"] = m.to_json()
    return payload, f"is_star: {str(d.is_star).lower()} (matrix criterion: {str(m.is_star).lower()})"


def _planar_payload(g, args):
    planar, witness = is_planar(g, args.bound)
    basis = None if witness is None else [sorted(s) for s in witness.supports()]
    return {"is_planar": planar, "two_basis": basis}, f"planar: {str(planar).lower()}"


def _fixed_payload(g, args):
    report = fixed_points_in_hypersurface(g, _basis(g, args))
    return report.to_json(), f"{len(report.components)} components, all contained: {report.all_contained}"


def _primes(args):
    try:
        return [int(x) for x in args.q.split(",") if x.strip()]
    except ValueError:
        raise GraphError(f"bad prime list {args.q!r}") from None


def _count_payload(g, args):
    recs = [count_points(g, q, graph_id=_digest(g)[:12]) for q in _primes(args)]
    return {"records": [r.to_json() for r in recs]}, "\n".join(
        f"q={r.q}: affine {r.affine_count}, projective {r.projective_count}" for r in recs)


def _fit_payload(g, args):
    recs = [count_points(g, q, graph_id=_digest(g)[:12]) for q in _primes(args)]
    fit = polynomial_fit(recs)
    return {"records": [r.to_json() for r in recs], "coefficients": fit}, f"fit: {fit}"


SUITES = ("det", "deletion_contraction", "subdivision", "star_routes_agree", "polygonal_iff_planar", "rank_chain")


def corpus_table(max_edges: int, bound: int, limit: int) -> list[dict]:
    """One row per corpus graph with a verdict for every invariant suite."""
    rows = []
    for name, g in corpus(max_edges):
        row = {"graph": name, "edges": g.n}
        p = kirchhoff(g)
        trees = list(spanning_trees(g))
        det_ok = True
        for t in trees:
            m = build_cycle_matrix(g, cycle_basis(g, t), validate=False)
            if determinant(m, bound=max(8, m.h)) != p:
                det_ok = False
                break
        row["det"] = det_ok
        row["deletion_contraction"] = kirchhoff_dc(g) == p
        row["subdivision"] = all(subdivision_identity(g, e) for e in g.labels)
        d = is_star_graph_definitional(g, limit=limit, bound=bound)
        mc = is_star_graph_matrix(g, bound=bound)
        row["star_routes_agree"] = d.is_star == mc.is_star
        row["polygonal_iff_planar"] = d.is_polygonal == d.is_planar
        h1 = betti(g)[1]
        if 1 <= h1 <= 4:
            nm = normalize(build_cycle_matrix(g, cycle_basis(g, first_spanning_tree(g)), validate=False))
            lb = rank_lower_bound(nm)
            ex = exact_diagonal_rank(nm).rank
            full = projective_rank(nm.expanded_determinant())
            row["rank_chain"] = lb <= ex <= full
        rows.append(row)
    return rows


def _corpus_payload(args):
    rows = corpus_table(args.max_edges, args.bound, args.limit)
    suites = SUITES
    summary = {}
    for s in suites:
        vals = [r[s] for r in rows if s in r]
        summary[s] = {"pass": sum(vals), "fail": len(vals) - sum(vals)}
    payload = {"graphs": len(rows), "summary": summary,
               "failures": [r for r in rows if not all(v for k, v in r.items() if k not in ("graph", "edges"))]}
    lines = [f"{s:24s} pass {v['pass']:4d}  fail {v['fail']:4d}" for s, v in summary.items()]
    if any(v["fail"] for v in summary.values()):
        raise CheckFailed((payload, "\n".join(lines)))
    return payload, "\n".join(lines)


GRAPH_COMMANDS = {
    "poly": _poly_payload,
    "matrix": _matrix_payload,
    "verify": _verify_payload,
    "lattice": _lattice_payload,
    "rank": _rank_payload,
    "clusters": _clusters_payload,
    "star": _star_payload,
    "planar": _planar_payload,
    "fixed": _fixed_payload,
    "count": _count_payload,
    "fit": _fit_payload,
}


def _digest(g: Multigraph) -> str:
    return hashlib.sha256(format_graph(g).encode()).hexdigest()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help="read the graph from a file instead of stdin")
    common.add_argument("--basis", choices=("tree", "faces"), default="tree")
    common.add_argument("--bound", type=int, default=16, help="edge bound for exponential searches")
    common.add_argument("--convention", choices=("constant", "zero"), default="constant")
    common.add_argument("--q", default="2,3,5", help="comma-separated primes")
    common.add_argument("--limit", type=int, default=10_000, help="decomposition cap")
    common.add_argument("--verbose", action="store_true", help="summary on stderr")
    common.add_argument("--text", action="store_true", help="print the summary instead of JSON")

    parser = argparse.ArgumentParser(prog="graphtorus", description="Graph polynomials and torus actions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("gen", parents=[common], help="emit a generated graph")
    gen.add_argument("family", choices=sorted(GENERATORS))
    gen.add_argument("params", type=int, nargs="+")
    for name in GRAPH_COMMANDS:
        sub.add_parser(name, parents=[common])
    corp = sub.add_parser("corpus", parents=[common], help="sweep the bundled corpus")
    corp.add_argument("--max-edges", type=int, default=6)
    return parser


def _emit(command, digest, payload, text, started, args):
    report = {
        "version": __version__,
        "input_digest": digest,
        "subcommand": command,
        "payload": payload,
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }
    if args.text:
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    if args.verbose:
        sys.stderr.write(text + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    started = time.perf_counter()
    try:
        if args.command == "gen":
            fn, arity = GENERATORS[args.family]
            if len(args.params) != arity:
                raise GraphError(f"{args.family} takes {arity} parameter(s)")
            sys.stdout.write(format_graph(fn(*args.params)))
            return EXIT_OK
        if args.command == "corpus":
            try:
                payload, text = _corpus_payload(args)
            except CheckFailed as exc:
                payload, text = exc.payload
                _emit("corpus", None, payload, text, started, args)
                return EXIT_CHECK
            _emit("corpus", None, payload, text, started, args)
            return EXIT_OK
        g = _read_graph(args)
        try:
            payload, text = GRAPH_COMMANDS[args.command](g, args)
        except CheckFailed as exc:
            _emit(args.command, _digest(g), exc.payload, "check failed", started, args)
            return EXIT_CHECK
        _emit(args.command, _digest(g), payload, text, started, args)
        return EXIT_OK
    except (GraphError, SearchBoundError, ValueError, OSError) as exc:
        sys.stderr.write(f"graphtorus: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
