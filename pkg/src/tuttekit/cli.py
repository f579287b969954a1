"""Command-line front end: one JSON object per result on stdout.

Exit status: 0 success, 1 a checked property was falsified (the witness is
in the output), 2 usage or input error, 3 a size cap was exceeded."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import analysis, fixtures, kirchhoff, matroid, tutte, tworooted, zeros
from .algebra import CapExceeded, MultiAffinePoly, Poly, as_exact, coeff_to_json, dumps
from .graph import Multigraph, Symbol, parse_graph
from .report import FALSIFIED, PropertyReport

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

PROPERTIES = ["hpp", "rayleigh", "bc", "leeyang", "hardcore", "polymer", "samephase",
              "support-matroid"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _rational(text: str) -> Fraction:
    try:
        return as_exact(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _binding(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError("bindings look like EDGE=VALUE")
    k, v = text.split("=", 1)
    try:
        return int(k), _rational(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad edge id in {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def _seed(text: str) -> int:
    k = int(text, 0)
    if not 0 <= k < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return k


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_matroid(path: str):
    try:
        if path == "-":
            return matroid.parse_matroid(sys.stdin.read())
        return matroid.parse_matroid(_read(path), Path(path).parent)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _poly_json(p) -> dict:
    return {"json": p.to_json(), "pretty": p.pretty()}


def _named(g: Multigraph, z: MultiAffinePoly):
    """Rewrite v_i as the symbol name of edge i when the file names symbols."""
    names = {e.id: e.weight.name for e in g.edges
             if isinstance(e.weight, Symbol) and e.weight.name != "v"}
    if not names:
        return None
    p = z.to_poly()
    return p.substitute({f"{z.prefix}_{i}": Poly.var(n) for i, n in names.items()})


def _vertex(g: Multigraph, x: int) -> int:
    if not 0 <= x < g.n:
        raise UsageError(f"vertex {x} out of range 0..{g.n - 1}")
    return x


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    what = args.what
    out = {"what": what}
    if what == "z":
        res = tutte.z_delete_contract(g)
        out["polynomial"] = _poly_json(res.z)
        out["stats"] = res.stats
        named = _named(g, res.z)
        if named is not None:
            out["named"] = _poly_json(named)
    elif what == "ztilde":
        out["polynomial"] = _poly_json(tutte.z_tilde(g))
    elif what == "chromatic":
        if g.has_loops():
            raise UsageError("a graph with a loop has chromatic polynomial 0")
        out["polynomial"] = _poly_json(tutte.chromatic_poly(g))
    elif what == "flow":
        out["polynomial"] = _poly_json(tutte.flow_poly(g))
    elif what == "reliability":
        out["polynomial"] = _poly_json(tutte.reliability_poly(g))
    elif what == "tutte":
        out["polynomial"] = _poly_json(tutte.tutte_xy(g))
    elif what == "bivariate":
        out["polynomial"] = _poly_json(tutte.z_uniform_bivariate(g))
    else:
        gs = g.with_weights(Symbol())
        poly = {"connected": tutte.connected_spanning_poly, "forests": tutte.spanning_forest_poly,
                "trees": tutte.spanning_tree_poly}[what](gs)
        out["polynomial"] = _poly_json(poly)
        named = _named(g, poly)
        if named is not None:
            out["named"] = _poly_json(named)
    return out, EXIT_OK


def cmd_eval(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    values = dict(args.bind or [])
    for e in g.edges:
        if e.id in values:
            continue
        if args.v is not None:
            values[e.id] = args.v
        elif not isinstance(e.weight, Symbol):
            values[e.id] = as_exact(e.weight)
    unknown = set(values) - set(g.edge_ids())
    if unknown:
        raise UsageError(f"unknown edge ids {sorted(unknown)}")
    z = tutte.compute_z(g.with_weights(Symbol()))
    val = z.evaluate(values, q=args.q)
    out = {"q": args.q, "bindings": {str(k): v for k, v in sorted(values.items())}}
    if isinstance(val, MultiAffinePoly):
        out["value"] = _poly_json(val)
    else:
        out["value"] = coeff_to_json(val)
    return out, EXIT_OK


def cmd_roots(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    if args.spec == "chromatic":
        rs = zeros.chromatic_roots(g, args.tol)
    elif args.spec == "flow":
        rs = zeros.flow_roots(g, args.tol)
    else:
        if args.v is None and not args.bind:
            raise UsageError("custom-q-at-v needs --v or --bind")
        values = {e.id: args.v for e in g.edges}
        values.update(dict(args.bind or []))
        if any(v is None for v in values.values()):
            raise UsageError("every edge needs a value")
        rs = zeros.complex_roots(tutte.compute_z(g, values).to_laurent(), args.tol)
    return {"spec": args.spec, "rootset": rs.to_json()}, EXIT_OK


def _report_out(rep: PropertyReport, extra: dict | None = None) -> tuple[dict, int]:
    out = {"report": rep.to_json()}
    if extra:
        out.update(extra)
    return out, EXIT_FALSIFIED if rep.verdict == FALSIFIED else EXIT_OK


def cmd_discs(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    rep = zeros.zero_free_disc_check(g, v_samples=args.v_samples, seed=args.seed)
    return _report_out(rep)


def _rayleigh_pair(job):
    kind, obj, e, f, samples, seed = job
    if kind == "graph":
        rep, diff = analysis.rayleigh_check_graph(obj, e, f, samples, seed)
    else:
        rep, diff = analysis.rayleigh_check_matroid(obj, e, f, samples, seed)
    return e, f, rep


def _rayleigh(args, g, m) -> tuple[dict, int]:
    kind, obj = ("graph", g) if g is not None else ("matroid", m)
    elements = g.edge_ids() if g is not None else m.elements
    if args.edges:
        if len(args.edges) != 2 or args.edges[0] == args.edges[1]:
            raise UsageError("--edges needs two distinct element ids")
        if any(e not in elements for e in args.edges):
            raise UsageError("element id out of range")
        pairs = [tuple(args.edges)]
    else:
        pairs = list(combinations(elements, 2))
    jobs = [(kind, obj, e, f, args.samples, args.seed) for e, f in pairs]
    # rank oracles hold closures and do not pickle, so only graphs go to the pool
    if args.jobs > 1 and len(jobs) > 1 and kind == "graph":
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_rayleigh_pair, jobs))
    else:
        results = [_rayleigh_pair(j) for j in jobs]
    results.sort(key=lambda r: (r[0], r[1]))
    per_pair = [{"pair": [e, f], "verdict": rep.verdict,
                 "difference": rep.details.get("difference")} for e, f, rep in results]
    bad = [r for r in results if r[2].verdict == FALSIFIED]
    if bad:
        e, f, rep = bad[0]
        rep.details["pair"] = [e, f]
        return _report_out(rep, {"pairs": per_pair})
    verdicts = {r[2].verdict for r in results}
    verdict = verdicts.pop() if len(verdicts) == 1 else "holds-on-samples"
    name = "rayleigh" if kind == "graph" else "rayleigh-matroid"
    rep = PropertyReport(name, verdict, sum(r[2].samples for r in results), args.seed)
    return _report_out(rep, {"pairs": per_pair})


def cmd_check(args) -> tuple[dict, int]:
    if (args.graph is None) == (args.matroid is None):
        raise UsageError("give exactly one of --graph or --matroid")
    g = _load_graph(args.graph)[0] if args.graph else None
    m = _load_matroid(args.matroid) if args.matroid else None
    prop = args.property
    samples = args.samples
    if prop == "rayleigh":
        return _rayleigh(args, g, m)
    if prop in ("hpp", "samephase", "support-matroid"):
        if g is not None:
            p = tutte.spanning_tree_poly(g.with_weights(Symbol()))
        else:
            p = matroid.q_zero_matroid_limits(m)["B_M"]
        if prop == "hpp":
            rep = analysis.hpp_sample_check(p, samples, args.seed)
        elif prop == "samephase":
            rep = analysis.same_phase_check(p)
        else:
            rep = analysis.support_matroid_check(p)
        return _report_out(rep)
    if prop == "bc":
        if g is not None:
            rep = analysis.brown_colbourn_sample(g, samples, args.seed)
        else:
            rep = analysis.bc_matroid_check(m, samples, args.seed)
        return _report_out(rep)
    if g is None:
        raise UsageError(f"property {prop} needs --graph")
    if prop == "leeyang":
        rep = analysis.lee_yang_check(g, args.scheme, samples, args.seed)
    elif prop == "hardcore":
        rep = analysis.hardcore_disc_check(g, samples, args.seed)
    else:
        rep = analysis.polymer_representation_check(g)
    return _report_out(rep)


def cmd_veff(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    x, y = (_vertex(g, r) for r in args.roots)
    if x == y:
        raise UsageError("the two roots must differ")
    d = tworooted.decompose(g.with_weights(Symbol()) if not g.is_symbolic() else g, x, y)
    out = {"roots": [x, y], "v_eff": tworooted.effective_coupling(d).to_json(),
           "t_eff": tworooted.transmissivity(d).to_json(),
           "degrees": tworooted.degree_report(g, x, y, d)}
    return out, EXIT_OK


def cmd_matrixtree(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    roots = args.roots or [0]
    for r in roots:
        _vertex(g, r)
    if len(roots) == 1:
        p = kirchhoff.matrix_tree(g, roots[0])
    else:
        p = kirchhoff.rooted_forest_minor(g, roots)
    count = p.evaluate({i: 1 for i in p.variables()})
    count = count.constant_value() if isinstance(count, MultiAffinePoly) and not count.is_zero() \
        else (0 if isinstance(count, MultiAffinePoly) else count)
    return {"roots": roots, "polynomial": _poly_json(p), "count_at_unit_weights": count}, EXIT_OK


def cmd_conductance(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    i, j = (_vertex(g, r) for r in args.pair)
    return {"pair": [i, j], "conductance": kirchhoff.effective_conductance(g, i, j).to_json()}, \
        EXIT_OK


def cmd_forests(args) -> tuple[dict, int]:
    g, _ = _load_graph(args.graph)
    gs = g.with_weights(Symbol())
    out = {"polynomial": _poly_json(tutte.spanning_forest_poly(gs))}
    if args.grassmann_check:
        lhs = kirchhoff.grassmann_forest_lhs(g)
        rhs = kirchhoff.forest_rhs(g)
        out["grassmann"] = {"lhs": _poly_json(lhs), "rhs": _poly_json(rhs), "equal": lhs == rhs}
        return out, EXIT_OK if lhs == rhs else EXIT_FALSIFIED
    return out, EXIT_OK


def cmd_matroid(args) -> tuple[dict, int]:
    m = _load_matroid(args.matroid)
    out = {"what": args.what, "size": m.size, "rank": m.rank()}
    if args.what == "z":
        out["polynomial"] = _poly_json(matroid.z_tilde_matroid(m))
    elif args.what == "chromatic":
        out["polynomial"] = _poly_json(matroid.matroid_chromatic(m))
    elif args.what == "duality":
        ok = matroid.matroid_duality_identity(m)
        out["holds"] = ok
        return out, EXIT_OK if ok else EXIT_FALSIFIED
    elif args.what == "delcon":
        elems = [args.element] if args.element is not None else m.elements
        if any(e not in m.elements for e in elems):
            raise UsageError("element out of range")
        results = {str(e): matroid.matroid_delcon_identity(m, e) for e in elems}
        out["holds"] = results
        return out, EXIT_OK if all(results.values()) else EXIT_FALSIFIED
    elif args.what == "limits":
        out["limits"] = {k: _poly_json(v) for k, v in matroid.q_zero_matroid_limits(m).items()}
    else:
        ok = matroid.check_rank_axioms(m)
        out["holds"] = ok
        return out, EXIT_OK if ok else EXIT_FALSIFIED
    return out, EXIT_OK


def cmd_fixtures(args) -> tuple[dict, int]:
    if args.action == "list":
        return {"fixtures": fixtures.manifest()}, EXIT_OK
    if args.action == "write-all":
        if not args.name:
            raise UsageError("write-all needs a target directory")
        paths = fixtures.write_all(args.name)
        return {"written": [str(p) for p in paths]}, EXIT_OK
    if not args.name:
        raise UsageError("emit needs a fixture name")
    params = {"n": args.n, "s": args.s, "p": args.p, "r": args.r, "case": args.case}
    try:
        text = fixtures.emit(args.name, **params)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    if args.out:
        Path(args.out).write_text(text)
        return {"name": args.name, "written": args.out}, EXIT_OK
    return {"name": args.name, "text": text}, EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="random seed (default 0)")
    common.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes; 1 forces sequential mode")
    common.add_argument("--pretty", action="store_true", help="indented JSON output")

    ap = argparse.ArgumentParser(prog="tuttekit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="exact polynomials of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--what", default="z",
                   choices=["z", "ztilde", "chromatic", "flow", "reliability", "tutte",
                            "bivariate", "connected", "forests", "trees"])
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("eval", parents=[common], help="evaluate Z_G at exact values")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", type=_rational)
    p.add_argument("--v", type=_rational, help="value for every edge without a binding")
    p.add_argument("--bind", type=_binding, action="append", metavar="EDGE=VALUE")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("roots", parents=[common], help="complex roots of a specialization")
    p.add_argument("--graph", required=True)
    p.add_argument("--spec", default="chromatic", choices=["chromatic", "flow", "custom-q-at-v"])
    p.add_argument("--v", type=_rational)
    p.add_argument("--bind", type=_binding, action="append", metavar="EDGE=VALUE")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("discs", parents=[common], help="zero-free disc report")
    p.add_argument("--graph", required=True)
    p.add_argument("--v-samples", type=int, default=0)
    p.set_defaults(func=cmd_discs)

    p = sub.add_parser("check", parents=[common], help="check an analytic property")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--graph")
    p.add_argument("--matroid")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--edges", type=_int_list, help="element pair for rayleigh, e.g. 0,1")
    p.add_argument("--scheme", default="lee-yang", choices=["lee-yang", "heilmann-lieb"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("veff", parents=[common], help="effective coupling between two roots")
    p.add_argument("--graph", required=True)
    p.add_argument("--roots", type=int, nargs=2, required=True, metavar=("X", "Y"))
    p.set_defaults(func=cmd_veff)

    p = sub.add_parser("matrixtree", parents=[common], help="Laplacian minor determinant")
    p.add_argument("--graph", required=True)
    p.add_argument("--roots", type=_int_list)
    p.set_defaults(func=cmd_matrixtree)

    p = sub.add_parser("conductance", parents=[common], help="effective conductance")
    p.add_argument("--graph", required=True)
    p.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))
    p.set_defaults(func=cmd_conductance)

    p = sub.add_parser("forests", parents=[common], help="spanning-forest polynomial")
    p.add_argument("--graph", required=True)
    p.add_argument("--grassmann-check", action="store_true")
    p.set_defaults(func=cmd_forests)

    p = sub.add_parser("matroid", parents=[common], help="matroid polynomials and identities")
    p.add_argument("--matroid", required=True)
    p.add_argument("--what", default="z",
                   choices=["z", "chromatic", "duality", "delcon", "limits", "rank-axioms"])
    p.add_argument("--element", type=int)
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("fixtures", parents=[common], help="list or emit named fixtures")
    p.add_argument("action", choices=["list", "emit", "write-all"])
    p.add_argument("name", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--case", choices=list("abcde"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixtures)
    return ap


def _emit(obj: dict, pretty: bool, stream):
    from .report import _jsonable
    stream.write(dumps(_jsonable(obj), pretty) + "\n")
    stream.flush()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, status = args.func(args)
    except UsageError as exc:
        _emit({"command": args.command, "error": "usage", "message": str(exc)}, False, sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        _emit({"command": args.command, "error": "cap-exceeded", "message": str(exc)}, False,
              sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        _emit({"command": args.command, "error": "usage", "message": str(exc)}, False, sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        _emit({"command": args.command, "error": "arithmetic", "message": str(exc)}, False,
              sys.stderr)
        return EXIT_USAGE
    result = {"command": args.command, "seed": args.seed}
    result.update(out)
    _emit(result, args.pretty, sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
