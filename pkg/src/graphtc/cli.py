"""Command-line interface.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on a violated precondition (the hypothesis is named), 3 when a resource
ceiling aborts the run.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass
from typing import Any, Callable

from . import __version__
from .algebra import F2, Z, chain_add, class_equal, homology
from .discrete_config import DEFAULT_MAX_CELLS, discretize
from .errors import EmbeddingError, PreconditionError, ResourceLimitError
from .euclid_cohomology import kronecker_suite, orthogonal_suite
from .graph_core import (
    GraphDocument,
    essential_vertices,
    euler_face_check,
    is_planar,
    parse_graph_text,
    rotation_from_embedding,
    validate_embedding,
)
from .named import NAMED, named_graph
from .nonplanar_h1 import (
    Conf2Model,
    cohomological_planarity,
    lollipop_classes,
    lollipop_star,
    star_vanishing_suite,
    theta_stars,
)
from .star_gauss import star_degree_suite
from .tc_certificate import TCQuery, dumps, exact_tc, lower_bound

LEMMAS = ("kronecker", "orthogonal", "star-degree", "2q", "2theta", "nonplanar", "cohomological-planarity")


@dataclass
class Outcome:
    """Result of one command: a JSON-able payload, human-readable lines, and a pass flag."""

    payload: dict
    lines: list[str]
    ok: bool = True


def load_document(source: str) -> GraphDocument:
    """A named graph or a graph file; rotation data is derived from the embedding when absent."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            doc = parse_graph_text(fh.read())
        name = os.path.splitext(os.path.basename(source))[0]
    elif source.lower() in NAMED:
        doc = named_graph(source)
        name = doc.name
    else:
        raise PreconditionError(f"no graph file or named graph {source!r} (names: {', '.join(sorted(NAMED))})", "graph source exists")
    rotation = doc.rotation
    if rotation is None and doc.embedding is not None:
        rotation = rotation_from_embedding(doc.graph, doc.embedding)
    return GraphDocument(doc.graph, rotation, doc.embedding, name)


def table(rows: list[list[Any]], header: list[str]) -> list[str]:
    cells = [header] + [[str(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    fmt = lambda r: "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_graph_info(args) -> Outcome:
    doc = load_document(args.graph)
    g = doc.graph
    ess = sorted(essential_vertices(g))
    payload = {
        "name": doc.name,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "loops": sum(1 for _, u, v in g.edges if u == v),
        "connected": g.is_connected(),
        "essential_vertices": ess,
        "m": len(ess),
        "valences": {v: g.valence(v) for v in g.vertices},
        "has_embedding": doc.embedding is not None,
        "graph_hash": g.digest(),
    }
    lines = table([[k, payload[k]] for k in ("name", "vertices", "edges", "loops", "connected", "m", "has_embedding")], ["field", "value"])
    lines.append("essential: " + (" ".join(ess) or "-"))
    return Outcome(payload, lines)


def cmd_planarity(args) -> Outcome:
    doc = load_document(args.graph)
    res = is_planar(doc.graph)
    payload: dict[str, Any] = {"planar": res.planar, "kuratowski": res.kind}
    lines = [f"planar: {res.planar}"]
    if res.planar:
        euler = euler_face_check(doc.graph, res.rotation)
        payload["euler_check"] = euler
        payload["rotation"] = {v: [list(h) for h in hs] for v, hs in res.rotation.order}
        lines.append(f"rotation system passes Euler face count: {euler}")
        ok = euler
    else:
        payload["kuratowski_edges"] = [list(e) for e in res.kuratowski.edges]
        lines.append(f"Kuratowski subgraph: subdivision of {res.kind} with {len(res.kuratowski.edges)} edges")
        ok = res.kind in ("K5", "K3,3")
    if doc.embedding is not None:
        check = validate_embedding(doc.graph, doc.embedding)
        payload["embedding_valid"] = check.ok
        lines.append(f"embedding valid: {check.ok}" + ("" if check.ok else f" ({check.reason})"))
        ok = ok and check.ok
    return Outcome(payload, lines, ok)


def cmd_discretize(args) -> Outcome:
    doc = load_document(args.graph)
    c, cert = discretize(doc.graph, args.k, args.parts, max_cells=args.max_cells)
    counts = c.counts()
    payload: dict[str, Any] = {
        "k": args.k,
        "parts": cert.parts,
        "conservative": cert.conservative,
        "cells": counts,
        "euler_characteristic": sum((-1) ** d * n for d, n in enumerate(counts)),
    }
    lines = table([[d, n] for d, n in enumerate(counts)], ["dim", "cells"])
    lines.append(f"parts per edge: {cert.parts} (conservative: {cert.conservative})")
    if args.triplets:
        trip = [t for d in range(1, args.k + 1) for t in c.triplets(d)]
        payload["triplets"] = [list(t) for t in trip]
        lines += [" ".join(map(str, t)) for t in trip]
    return Outcome(payload, lines)


def cmd_homology(args) -> Outcome:
    doc = load_document(args.graph)
    c, cert = discretize(doc.graph, args.k, args.parts, max_cells=args.max_cells)
    h = homology(c, args.coeff)
    payload = {
        "k": args.k,
        "parts": cert.parts,
        "coefficients": args.coeff,
        "betti": h.betti,
        "torsion": [list(t) for t in h.torsion],
    }
    rows = [[d, b, " ".join(map(str, t)) or "-"] for d, (b, t) in enumerate(zip(h.betti, h.torsion))]
    lines = table(rows, ["degree", "rank", "torsion"])
    return Outcome(payload, lines)


def cmd_tc(args) -> Outcome:
    doc = load_document(args.graph)
    if doc.embedding is None:
        raise PreconditionError("the graph has no planar embedding", "valid planar embedding")
    q = TCQuery(doc.graph, args.k, args.r)
    if args.tc_command == "exact":
        value, cert = exact_tc(q, doc.embedding)
    else:
        value, cert = lower_bound(q, doc.embedding)
    lines = [str(value) if value is not None else "bounds only"]
    upper = cert.upper if cert.upper is not None else "-"
    lines += table([[cert.lower, upper, cert.exact, cert.valid]], ["lower", "upper", "exact", "valid"])
    if args.trace:
        lines += [f"{c['name']}: {'ok' if c['ok'] else 'FAIL'}" for c in cert.data["checks"]]
    return Outcome(cert.data, lines, cert.valid)


def _lemma_kronecker(args) -> Outcome:
    rep = kronecker_suite(max_k=args.k or 8, max_size=3)
    payload = {"checked": rep.checked, "failures": rep.failures}
    return Outcome(payload, [f"checked {rep.checked} pairings, {len(rep.failures)} failures"], rep.ok)


def _lemma_orthogonal(args) -> Outcome:
    rep = orthogonal_suite(random.Random(args.seed), trials=args.trials or 100)
    payload = {"checked": rep.checked, "failures": rep.failures, "negative_controls": rep.negative_controls}
    lines = [
        f"checked {rep.checked} orthogonal products, {len(rep.failures)} failures",
        f"forced lambda_1 = lambda_2 controls: {rep.negative_controls}",
    ]
    return Outcome(payload, lines, rep.ok)


def _lemma_star_degree(args) -> Outcome:
    rep = star_degree_suite(random.Random(args.seed), randomized=args.trials or 7)
    lines = table([[r["kind"], r["orientation"], r["winding"], r["mirror_winding"]] for r in rep.rows],
                  ["kind", "orientation", "winding", "mirror"])
    return Outcome({"rows": rep.rows}, lines, rep.ok)


def _lemma_2q(args) -> Outcome:
    model = Conf2Model(load_document(args.graph or "lollipop"), args.parts, max_cells=args.max_cells)
    hz = model.homology(Z)
    b = lollipop_classes(model)
    sigma = lollipop_star(model)
    relation = class_equal(hz, sigma.chain, chain_add((1, b.beta1), (1, b.beta2), (-1, b.beta12)))
    tampered = class_equal(hz, sigma.chain, chain_add((1, b.beta1), (1, b.beta2), (1, b.beta12)))
    payload = {"relation": relation, "tampered_relation": tampered, "star": {"hub": sigma.hub, "half_edges": [list(h) for h in sigma.half_edges]}}
    lines = [f"sigma = beta_1 + beta_2 - beta_12: {relation}", f"control sigma = beta_1 + beta_2 + beta_12: {tampered}"]
    return Outcome(payload, lines, relation and not tampered)


def _lemma_2theta(args) -> Outcome:
    model = Conf2Model(load_document(args.graph or "theta"), args.parts, max_cells=args.max_cells)
    hz = model.homology(Z)
    s1, s2 = theta_stars(model)
    relation = class_equal(hz, s1.chain, s2.chain)
    control = class_equal(hz, s1.chain, {i: -x for i, x in s2.chain.items()})
    payload = {"relation": relation, "negated_control": control, "stars": [s1.hub, s2.hub]}
    lines = [f"sigma_1 = sigma_2: {relation}", f"control sigma_1 = -sigma_2: {control}"]
    return Outcome(payload, lines, relation and not control)


def _lemma_nonplanar(args) -> Outcome:
    doc = load_document(args.graph or "k5")
    rep = star_vanishing_suite(doc, model=Conf2Model(doc, args.parts, max_cells=args.max_cells))
    lines = table([[s["hub"], " ".join(f"{e}@{x}" for e, x in s["half_edges"]), "bounds" if s["bounds"] else "nonzero"] for s in rep["stars"]],
                  ["hub", "half-edges", "class"])
    lines.append(f"planar: {rep['planar']}  H1 rank: {rep['h1_rank']}  torsion-free: {rep['torsion_free']}")
    return Outcome(rep, lines, rep["valid"])


def _lemma_cohomological(args) -> Outcome:
    doc = load_document(args.graph or "k5")
    rep = cohomological_planarity(doc, args.parts, max_cells=args.max_cells)
    if rep["planar"]:
        lines = [
            f"witness: tree edges {' '.join(rep['tree_edges'])}",
            f"cocycle defects: {rep['cocycle_defects']}",
            f"restriction identity on {len(rep['basis_checks'])} basis cycles: {all(r['agree'] for r in rep['basis_checks'])}",
            f"star pairing: {rep['star_pairing']}",
        ]
    else:
        refuted = sum(t["refuted"] for t in rep["trees"])
        lines = [
            f"refutation: star at {rep['hub']} bounds in the graph (Z: {rep['star_bounds_z']}, F2: {rep['star_bounds_f2']})",
            f"star Gauss degrees: {rep['star_degrees']}",
            f"topological spanning trees refuted: {refuted}/{rep['num_trees']}",
        ]
    return Outcome(rep, lines, rep["valid"])


LEMMA_COMMANDS: dict[str, Callable[[Any], Outcome]] = {
    "kronecker": _lemma_kronecker,
    "orthogonal": _lemma_orthogonal,
    "star-degree": _lemma_star_degree,
    "2q": _lemma_2q,
    "2theta": _lemma_2theta,
    "nonplanar": _lemma_nonplanar,
    "cohomological-planarity": _lemma_cohomological,
}


def cmd_verify(args) -> Outcome:
    out = LEMMA_COMMANDS[args.lemma](args)
    out.payload = {"lemma": args.lemma, "valid": out.ok, "report": out.payload}
    out.lines.append(f"{args.lemma}: {'PASS' if out.ok else 'FAIL'}")
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (default 0)")
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS, help="cube-count ceiling")
    p.add_argument("--trace", action="store_true", help="dump the full transcript")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH",
                   help="machine output: JSON to PATH, or to stdout instead of tables when PATH is omitted")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="graphtc", description="Topological complexity of graph configuration spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="graph utilities")
    gsub = graph.add_subparsers(dest="graph_command", required=True)
    info = gsub.add_parser("info", parents=[common], help="counts, essential vertices, hash")
    info.add_argument("--graph", required=True)
    info.set_defaults(func=cmd_graph_info)

    plan = sub.add_parser("planarity", parents=[common], help="planarity test with rotation system or Kuratowski witness")
    plan.add_argument("--graph", required=True)
    plan.set_defaults(func=cmd_planarity)

    disc = sub.add_parser("discretize", parents=[common], help="cube-complex model of Conf_k")
    disc.add_argument("--graph", required=True)
    disc.add_argument("--k", type=int, required=True)
    disc.add_argument("--parts", type=int, default=None, help="pieces per edge (default k + 1)")
    disc.add_argument("--triplets", action="store_true", help="emit boundary entries (dim, row, col, sign)")
    disc.set_defaults(func=cmd_discretize)

    hom = sub.add_parser("homology", parents=[common], help="Betti numbers and torsion of Conf_k")
    hom.add_argument("--graph", required=True)
    hom.add_argument("--k", type=int, required=True)
    hom.add_argument("--parts", type=int, default=None)
    hom.add_argument("--coeff", choices=[F2, Z], default=Z)
    hom.set_defaults(func=cmd_homology)

    tc = sub.add_parser("tc", help="topological complexity certificates")
    tsub = tc.add_subparsers(dest="tc_command", required=True)
    for name, text in (("bound", "certified lower bound"), ("exact", "exact value when k >= 2 m")):
        t = tsub.add_parser(name, parents=[common], help=text)
        t.add_argument("--graph", required=True)
        t.add_argument("--k", type=int, required=True)
        t.add_argument("--r", type=int, required=True)
        t.set_defaults(func=cmd_tc)

    ver = sub.add_parser("verify", help="verification suites")
    vsub = ver.add_subparsers(dest="verify_command", required=True)
    lemma = vsub.add_parser("lemma", parents=[common], help="run one verification suite")
    lemma.add_argument("lemma", choices=LEMMAS)
    lemma.add_argument("--graph", default=None)
    lemma.add_argument("--k", type=int, default=None, help="largest particle count (kronecker)")
    lemma.add_argument("--parts", type=int, default=3, help="pieces per edge for Conf_2 models")
    lemma.add_argument("--trials", type=int, default=None,
                       help="random samples (orthogonal: per (r, d), default 100; star-degree: default 7)")
    lemma.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except PreconditionError as exc:
        hyp = f" [hypothesis: {exc.hypothesis}]" if exc.hypothesis else ""
        print(f"precondition violated{hyp}: {exc}", file=stderr)
        return 2
    except EmbeddingError as exc:
        print(f"precondition violated [hypothesis: admissible embedding]: {exc}", file=stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return 3
    if args.json == "-":
        stdout.write(dumps(out.payload))
    else:
        for line in out.lines:
            print(line, file=stdout)
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(dumps(out.payload))
    if args.trace and args.json != "-":
        stderr.write(dumps(out.payload))
    return 0 if out.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
