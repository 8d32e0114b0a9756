"""Command-line front end.

Exit codes: 0 when the computation succeeded, 1 when it succeeded with a
negative verdict (invalid colouring, no homomorphism, failed certificate...),
2 for usage or input errors.
"""

import argparse
import json
import sys

from . import gf, graph, spancolour as sc, sr, steenrod as st
from .errors import SpanChromError


class Negative(Exception):
    """Raised inside a handler to report a negative verdict (exit 1)."""


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _field(q):
    return gf.field_of_order(q)


def _colouring(path, G):
    return sc.colouring_from_dict(_load_json(path), G)


def _graph_payload(G):
    return {"n": G.n_vertices, "edges": [list(e) for e in G.edges()]}


# -- handlers -----------------------------------------------------------------

def cmd_repgraph(args):
    rep = sc.build_rep_graph(_field(args.q), args.n)
    G = rep.graph
    if args.out:
        graph.write_graph(G, args.out)
    lines = [f"A(GF({args.q})^{args.n}): {G.n_vertices} vertices, {G.n_edges} edges"]
    lines += [f"  {i}: {rep.label(i)}" for i in range(G.n_vertices)]
    lines += [f"  {rep.label(u)} -- {rep.label(v)}" for u, v in G.edges()]
    payload = {"q": args.q, "n": args.n, "vertices": [rep.label(i) for i in range(G.n_vertices)],
               "edges": [list(e) for e in G.edges()]}
    _emit(args, payload, "\n".join(lines))


def cmd_chromatic(args):
    G = graph.read_graph(args.graph)
    chi, colours = graph.chromatic_colouring(G)
    _emit(args, {"chromatic_number": chi, "colouring": colours}, str(chi))


def cmd_clique(args):
    G = graph.read_graph(args.graph)
    clique = graph.max_clique(G)
    _emit(args, {"clique_number": len(clique), "clique": clique}, str(len(clique)))


def cmd_span_chromatic(args):
    G = graph.read_graph(args.graph)
    n, witness = sc.span_chromatic_number(G, _field(args.q), jobs=args.jobs)
    _emit(args, {"span_chromatic_number": n, "witness": sc.colouring_to_dict(witness)}, str(n))


def cmd_hom(args):
    G, H = graph.read_graph(args.source), graph.read_graph(args.target)
    if args.count:
        k = graph.count_homomorphisms(G, H, jobs=args.jobs)
        _emit(args, {"count": k}, str(k))
        return
    hom = graph.find_homomorphism(G, H, jobs=args.jobs)
    if hom is None:
        _emit(args, {"homomorphism": None}, "no homomorphism")
        raise Negative
    _emit(args, {"homomorphism": list(hom.map)}, " ".join(map(str, hom.map)))


def cmd_two_core(args):
    G = graph.read_graph(args.graph)
    core, kept, trace = graph.two_core(G)
    payload = {"kept": kept, "trace": trace, "core": _graph_payload(core)}
    text = f"kept: {kept}\nremoved in order: {trace}\n" + graph.format_dimacs(core).rstrip()
    _emit(args, payload, text)


def cmd_validate(args):
    G = graph.read_graph(args.graph)
    verdict = sc.validate_colouring(_colouring(args.colouring, G))
    payload = {"valid": verdict.valid, "vertex": verdict.vertex, "reason": verdict.reason}
    _emit(args, payload, "valid" if verdict else f"invalid at vertex {verdict.vertex}: {verdict.reason}")
    if not verdict:
        raise Negative


def cmd_convert(args):
    d = _load_json(args.colouring)
    if args.graph:
        G = graph.read_graph(args.graph)
    elif args.to == "full" and d.get("variant") != "full":
        raise SpanChromError("conversion to full needs --graph")
    else:
        G = graph.empty_graph(len(d.get("assignments", [])))
    out = sc.colouring_to_dict(sc.convert_colouring(sc.colouring_from_dict(d, G), args.to))
    print(json.dumps(out, indent=2))


def cmd_count(args):
    G = graph.read_graph(args.graph)
    c = _colouring(args.colouring, G)
    if c.variant == "weak":
        c = sc.convert_colouring(c, "intermediate")
    k = sc.count_span_extensions(c)
    _emit(args, {"extensions": k}, str(k))


def cmd_census(args):
    rep = sc.basis_census(_field(args.q), args.n)
    d = rep.as_dict()
    text = "\n".join(f"{k}: {v}" for k, v in d.items())
    _emit(args, d, text)
    if not (rep.basis_match and rep.fiber_match):
        raise Negative


def cmd_obstruction(args):
    v = sc.hom_obstruction(args.q, args.p)
    _emit(args, v, v["conclusion"])
    if not v["obstruction"]:
        raise Negative


def cmd_complex_join(args):
    G = graph.read_graph(args.graph)
    K = sr.join_with_simplex(args.n, sr.graph_complex(G))
    print(json.dumps(sr.complex_to_dict(K), indent=2))


def _complex(path):
    return sr.complex_from_dict(_load_json(path))


def cmd_pmax(args):
    P = sr.p_max(_complex(args.complex))
    cells = [list(c) for c in P.named()]
    _emit(args, {"pmax": cells}, "\n".join("{" + ",".join(c) + "}" for c in cells))


def cmd_nonfaces(args):
    mnf = [list(c) for c in sr.minimal_nonfaces(_complex(args.complex))]
    _emit(args, {"minimal_nonfaces": mnf}, "\n".join("*".join(c) for c in mnf) or "none")


def cmd_classify(args):
    c = sr.classify_complex(_complex(args.complex))
    payload = {"is_AnL": c.is_AnL, "is_AnG": c.is_AnG, "n": c.n}
    if c.is_AnG:
        payload["G"] = {"vertices": list(c.y_names), "edges": [[c.G.label(u), c.G.label(v)] for u, v in c.G.edges()]}
    text = f"A(n,L): {c.is_AnL}\nA(n,G): {c.is_AnG}" + (f"\nn = {c.n}" if c.is_AnL else "")
    _emit(args, payload, text)
    if not c.is_AnL:
        raise Negative


def _weak_on(G, path, field=None):
    c = _colouring(path, G)
    return c if c.variant == "weak" else sc.convert_colouring(c, "weak")


def cmd_steenrod_build(args):
    G = graph.read_graph(args.graph)
    L = sr.graph_complex(G)
    action = st.action_from_colouring(L, args.n, _weak_on(G, args.colouring), args.max_degree)
    print(json.dumps(st.action_to_dict(action), indent=2))


def cmd_steenrod_verify(args):
    cert = st.verify_action(st.action_from_dict(_load_json(args.action)))
    d = cert.as_dict()
    lines = [f"degree bound D = {cert.D}"]
    for name, check in d["checks"].items():
        lines.append(f"{name}: {'pass' if check['pass'] else 'FAIL'}"
                     + (f" ({check['witness']})" if check["witness"] else ""))
    _emit(args, d, "\n".join(lines))
    if not cert.passed:
        raise Negative


def cmd_steenrod_extract(args):
    action = st.action_from_dict(_load_json(args.action))
    G = graph.read_graph(args.graph) if args.graph else None
    try:
        c, report = st.extract_colouring(action, G)
    except (st.Sq4NotInPrincipalIdeal, st.ExtractionInvalid) as exc:
        print(f"extraction failed: {exc}", file=sys.stderr)
        raise Negative from None
    print(json.dumps({"colouring": sc.colouring_to_dict(c), "report": report}, indent=2))


def cmd_steenrod_modp(args):
    G = graph.read_graph(args.graph)
    L = sr.graph_complex(G)
    c = _weak_on(G, args.colouring)
    action, cert = st.modp_p1_action(args.p, L, args.n, c, args.max_degree)
    payload = {"action": st.p1_to_dict(action), "certificate": cert.as_dict()}
    text = "\n".join(f"P^1({g}) = {action.image(g)}" for g in action.ring.names)
    text += "\n" + "\n".join(f"{n}: {'pass' if ok else 'FAIL'}" for n, ok, _ in cert.results)
    _emit(args, payload, text)
    if not cert.passed:
        raise Negative


def cmd_classify_n2(args):
    v = st.classify_two_x(_complex(args.complex))
    text = "realizable" if v["realizable"] else f"fails condition ({v['failed_condition']})"
    _emit(args, v, text)
    if not v["realizable"]:
        raise Negative


def cmd_decomposition(args):
    v = st.decomposition_check(_complex(args.complex), _load_json(args.blocks))
    _emit(args, v, "valid" if v["valid"] else f"fails on cell {v['cell']} with multiset {v['multiset']}")
    if not v["valid"]:
        raise Negative


def cmd_bracket(args):
    b = st.chi_top_bracket(graph.read_graph(args.graph))
    _emit(args, b, f"{b['lower']} <= chi_Top <= {b['upper']}")


# -- parser -------------------------------------------------------------------

def _seed(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for searches")
    common.add_argument("--seed", type=_seed, default=None, help="accepted for scripting; unused")

    parser = argparse.ArgumentParser(prog="spanchrom", description="span colourings and Steenrod actions")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, parent=sub):
        p = parent.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("repgraph", cmd_repgraph, "build A_(k^n)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    add("chromatic", cmd_chromatic, "chromatic number").add_argument("graph")
    add("clique", cmd_clique, "clique number").add_argument("graph")
    p = add("span-chromatic", cmd_span_chromatic, "span chromatic number")
    p.add_argument("graph")
    p.add_argument("--q", type=int, required=True)
    p = add("hom", cmd_hom, "graph homomorphism search")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--count", action="store_true")
    add("two-core", cmd_two_core, "2-core with removal trace").add_argument("graph")
    p = add("validate-colouring", cmd_validate, "check a span colouring")
    p.add_argument("graph")
    p.add_argument("colouring")
    p = add("convert-colouring", cmd_convert, "convert between variants")
    p.add_argument("colouring")
    p.add_argument("--to", required=True, choices=sc.VARIANTS)
    p.add_argument("--graph", help="graph file (needed when converting to full)")
    p = add("count-extensions", cmd_count, "count full colourings over an intermediate one")
    p.add_argument("graph")
    p.add_argument("colouring")
    p = add("census", cmd_census, "basis census against the closed formulas")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add("obstruction", cmd_obstruction, "counting obstruction for A_(k^p) -> K_p")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    cx = sub.add_parser("complex", help="complex constructions")
    cxs = cx.add_subparsers(dest="complex_command", required=True)
    p = add("join", cmd_complex_join, "join a simplex with a graph", cxs)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--graph", required=True)

    add("pmax", cmd_pmax, "P_max poset").add_argument("complex")
    add("nonfaces", cmd_nonfaces, "minimal non-faces").add_argument("complex")
    add("classify", cmd_classify, "recognise A(n,L) and A(n,G)").add_argument("complex")

    sq = sub.add_parser("steenrod", help="Steenrod actions")
    sqs = sq.add_subparsers(dest="steenrod_command", required=True)
    p = add("build", cmd_steenrod_build, "action from a span colouring", sqs)
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--max-degree", type=int, default=sr.DEFAULT_D)
    add("verify", cmd_steenrod_verify, "verify an action", sqs).add_argument("action")
    p = add("extract", cmd_steenrod_extract, "span colouring from an action", sqs)
    p.add_argument("action")
    p.add_argument("--graph")
    p = add("modp", cmd_steenrod_modp, "P^1 images at p = 5 mod 6", sqs)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--max-degree", type=int, default=None)

    add("classify-n2", cmd_classify_n2, "realizability test with two degree-4 vertices").add_argument("complex")
    p = add("decomposition", cmd_decomposition, "check a vertex partition over P_max")
    p.add_argument("complex")
    p.add_argument("blocks", help="JSON list of vertex-name lists")
    add("bracket", cmd_bracket, "bounds on the topological chromatic number").add_argument("graph")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Negative:
        return 1
    except (SpanChromError, OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
