"""Command-line interface.

Exit status: 0 on success, 1 on bad input or a failed validation, 2 when an
internal identity (d*d = 0, exactness, an isomorphism) breaks.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable

from . import kernels
from .algebra import (Bimodule, FiniteAlgebra, algebra_from_json, bimodule_from_json, ground_field,
                      load_json, regular_bimodule, truncated_poly, upper_triangular)
from .chromatic import build_chromatic, check_iso_In_Pn, compare_chromatic, les_report
from .complex import build_multipath_complex
from .digraph import Digraph, UnorientedGraph, coherent_line, parse_edge_list, polygon
from .errors import InvariantError, ValidationError
from .fields import parse_field
from .hochschild import hh_dims, polygon_comparison
from .homology import betti
from .morse import critical_cells, greedy_matching, parse_matching, shortcut_homology, verify_matching
from .pathposet import enumerate_path_poset
from .signs import (assignment, cw_z2_cohomology_dims, find_sign_isomorphism, lex_assignment,
                    sigma_assignment, verify_sign)


class Failed(Exception):
    """A check ran to completion and said no; carries the report and exit code."""

    def __init__(self, report: dict, code: int):
        super().__init__(report.get("error", "check failed"))
        self.report = report
        self.code = code


def _table(d: dict[int, int], keep_zeros: bool = False) -> dict[str, int]:
    return {str(k): v for k, v in sorted(d.items()) if v or keep_zeros}


def _read_text(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str) -> Digraph:
    return parse_edge_list(_read_text(path))


def load_algebra(source: str | None) -> FiniteAlgebra:
    if source is None:
        return ground_field()[0]
    if os.path.exists(source):
        return algebra_from_json(load_json(source), name=os.path.splitext(os.path.basename(source))[0])
    key = source.lower()
    if key in ("k", "ground", "field"):
        return ground_field()[0]
    if key in ("dual", "dual-numbers"):
        return truncated_poly(2)
    if key.startswith("truncated:"):
        try:
            return truncated_poly(int(key.split(":", 1)[1]))
        except ValueError:
            raise ValidationError(f"truncated:N needs an integer N, got {source!r}") from None
    if key in ("upper-triangular", "t2"):
        return upper_triangular()
    raise ValidationError(f"no algebra file or built-in named {source!r}")


def load_bimodule(source: str | None, a: FiniteAlgebra) -> Bimodule:
    if source is None:
        return regular_bimodule(a)
    return bimodule_from_json(load_json(source), a, name=os.path.splitext(os.path.basename(source))[0])


# --- subcommands -----------------------------------------------------------

def cmd_homology(args) -> dict:
    g = load_graph(args.graph)
    a = load_algebra(args.algebra)
    m = load_bimodule(args.bimodule, a)
    fld = parse_field(args.field)
    poset = enumerate_path_poset(g, args.base_vertex)
    c = build_multipath_complex(g, a, m, base_vertex=args.base_vertex, fld=fld, sign=args.sign, poset=poset)
    if args.emit_hasse:
        _write(args.emit_hasse, poset.to_dot())
    if args.dump_complex:
        _write(args.dump_complex, c.dumps() + "\n")
    if not c.verify_d_squared():
        raise InvariantError("d o d != 0")
    table = betti(c, check=False)
    return {
        "betti": _table(table),
        "dims": _table({n: c.dim(n) for n in c.degrees}, keep_zeros=True),
        "euler": c.euler_characteristic(),
        "field": fld.name,
        "algebra": a.name,
        "bimodule": m.name,
        "base_vertex": args.base_vertex,
        "sign": args.sign,
    }


def cmd_verify_signs(args) -> dict:
    g = load_graph(args.graph)
    p = enumerate_path_poset(g, args.base_vertex)
    if args.emit_hasse:
        _write(args.emit_hasse, p.to_dot())
    ok, bad = verify_sign(p, assignment(p, args.sign))
    report = {
        "valid": ok,
        "sign": args.sign,
        "squares": len(p.squares),
        "violations": [[p.edge_label(p.elements[x].mask) for x in sq] for sq in bad],
        "cw_z2": list(cw_z2_cohomology_dims(p)),
    }
    if not ok:
        raise Failed(report, 1)
    return report


def cmd_sign_iso(args) -> dict:
    g = load_graph(args.graph)
    p = enumerate_path_poset(g, args.base_vertex)
    eta = find_sign_isomorphism(p, sigma_assignment(p), lex_assignment(p))
    report = {"exists": eta is not None}
    if eta is None:
        raise Failed(report, 2)
    report["eta"] = [p.edge_label(h.mask) for h, bit in zip(p.elements, eta) if bit]
    return report


def cmd_morse(args) -> dict:
    g = load_graph(args.graph)
    p = enumerate_path_poset(g)
    m = parse_matching(_read_text(args.matching).decode("utf-8", "replace")) if args.matching else greedy_matching(p)
    ok, why = verify_matching(p, m)
    report = {"valid": ok, "reason": why, "pairs": len(m)}
    if not ok:
        raise Failed(report, 1)
    report["critical"] = _table(critical_cells(p, m))
    short = shortcut_homology(p, m)
    direct = betti(build_multipath_complex(g, poset=p))
    report["shortcut"] = "inconclusive" if short is None else _table(short)
    report["betti"] = _table(direct)
    if short is not None and short != direct:
        report["error"] = "shortcut disagrees with direct computation"
        raise Failed(report, 2)
    return report


def _chromatic_input(args) -> Digraph | UnorientedGraph:
    g = load_graph(args.graph)
    return UnorientedGraph(g.vertex_count, g.edges) if args.unoriented else g


def cmd_chromatic(args) -> dict:
    g = _chromatic_input(args)
    a = load_algebra(args.algebra)
    m = load_bimodule(args.bimodule, a)
    fld = parse_field(args.field)
    c = build_chromatic(g, a, m, args.variant, fld, args.base_vertex)
    if not c.verify_d_squared():
        raise InvariantError("d o d != 0")
    return {
        "variant": args.variant,
        "betti": _table(betti(c, check=False)),
        "dims": _table({n: c.dim(n) for n in c.degrees}, keep_zeros=True),
        "euler": c.euler_characteristic(),
        "field": fld.name,
        "algebra": a.name,
    }


def cmd_compare_chromatic(args) -> dict:
    a = load_algebra(args.algebra)
    m = load_bimodule(args.bimodule, a)
    fld = parse_field(args.field)
    if args.family:
        if args.n is None:
            raise ValidationError("--family needs --n")
        holds = check_iso_In_Pn(args.n, a, m, fld)
        g = coherent_line(args.n) if args.family == "I" else polygon(args.n)
        report = {"family": args.family, "n": args.n, "isomorphisms_hold": holds}
    else:
        if not args.graph:
            raise ValidationError("give a graph file or --family I|P --n N")
        g = load_graph(args.graph)
        report = {}
    cmp = compare_chromatic(g, a, m, fld, args.base_vertex)
    for key, val in cmp.items():
        report[key] = val if "error" in val else {"dims": _table(val["dims"], True), "betti": _table(val["betti"])}
    if report.get("isomorphisms_hold") is False:
        raise Failed(report, 2)
    return report


def cmd_check_les(args) -> dict:
    g = load_graph(args.graph)
    a = load_algebra(args.algebra)
    fld = parse_field(args.field)
    r = les_report(g, a, fld, args.base_vertex)
    report = {
        "holds": r.ok,
        "checks": {
            "dims_add_up": r.dims_add_up,
            "inclusion_is_chain_map": r.inclusion_is_chain_map,
            "quotient_is_chain_map": r.quotient_is_chain_map,
            "composite_is_zero": r.composite_is_zero,
            "inclusion_injective": r.inclusion_injective,
            "quotient_surjective": r.quotient_surjective,
            "euler_relation": r.euler_relation,
            "cohomology_exact": r.cohomology_exact,
        },
        "betti_tilde": _table(r.betti_tilde),
        "betti_hat": _table(r.betti_hat),
        "betti_mu": _table(r.betti_mu),
        "connecting_ranks": _table(r.connecting_ranks),
    }
    if not r.ok:
        raise Failed(report, 2)
    return report


def cmd_hochschild(args) -> dict:
    a = load_algebra(args.algebra)
    m = load_bimodule(args.bimodule, a)
    fld = parse_field(args.field)
    return {"hh": _table(hh_dims(a, m, args.max_degree, fld)), "field": fld.name, "algebra": a.name}


def cmd_polygon_check(args) -> dict:
    a = load_algebra(args.algebra)
    m = load_bimodule(args.bimodule, a)
    fld = parse_field(args.field)
    cmp = polygon_comparison(args.n, a, m, fld)
    holds = all(cmp["multipath"][i] == cmp["hochschild"][i] for i in range(1, args.n + 1))
    report = {
        "holds": holds,
        "n": args.n,
        "multipath": _table(cmp["multipath"], True),
        "hochschild": _table(cmp["hochschild"], True),
    }
    if not holds:
        raise Failed(report, 2)
    return report


def cmd_selftest(args) -> dict:
    from .checks import run_all
    from .digraph import small_digraphs

    results = run_all(small_digraphs(args.max_vertices))
    report = {
        "backend": kernels.BACKEND,
        "suites": [{"name": r.name, "ok": r.ok, "cases": r.cases, "failures": r.failures} for r in results],
        "ok": all(r.ok for r in results),
    }
    if not report["ok"]:
        raise Failed(report, 2)
    return report


# --- plumbing --------------------------------------------------------------

def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc.strerror}") from None


def _render_table(report: dict, indent: str = "") -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_table(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(_render_table(item, indent + "  "))
                lines.append("")
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, separators=(",", ":")) + "\n")
    else:
        stream.write(_render_table(report).rstrip("\n") + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (rationals) or gf:P")
    common.add_argument("--algebra", help="JSON algebra file or one of: K, dual, truncated:N, upper-triangular")
    common.add_argument("--bimodule", help="JSON bimodule file (default: the algebra itself)")
    common.add_argument("--base-vertex", type=int, default=0)
    common.add_argument("--sign", choices=("sigma_e", "lex"), default="sigma_e")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")

    parser = argparse.ArgumentParser(prog="multipath", description="Multipath cohomology of digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str, graph: str | None = "required"):
        p = sub.add_parser(name, parents=[common], help=help_)
        if graph == "required":
            p.add_argument("graph", help="edge-list file")
        elif graph == "optional":
            p.add_argument("graph", nargs="?", help="edge-list file")
        p.set_defaults(func=fn)
        return p

    p = add("homology", cmd_homology, "Betti numbers of the multipath complex")
    p.add_argument("--emit-hasse", metavar="PATH", help="write the Hasse diagram as DOT")
    p.add_argument("--dump-complex", metavar="PATH", help="write the complex as JSON")
    p = add("verify-signs", cmd_verify_signs, "check the square parity of a sign assignment")
    p.add_argument("--emit-hasse", metavar="PATH", help="write the Hasse diagram as DOT")
    add("sign-iso", cmd_sign_iso, "isomorphism between the sigma_e and lex signs")
    p = add("morse", cmd_morse, "acyclic matching, critical cells and the homology shortcut")
    p.add_argument("--matching", metavar="PATH", help="matching file (default: greedy)")
    p = add("chromatic", cmd_chromatic, "chromatic complex")
    p.add_argument("--variant", choices=("plain", "hat"), default="plain")
    p.add_argument("--unoriented", action="store_true", help="ignore edge directions")
    p = add("compare-chromatic", cmd_compare_chromatic, "multipath vs chromatic complexes", graph="optional")
    p.add_argument("--family", choices=("I", "P"), help="coherent line or polygon instead of a file")
    p.add_argument("--n", type=int)
    add("check-les", cmd_check_les, "short and long exact sequence chromatic/multipath")
    p = add("hochschild", cmd_hochschild, "Hochschild homology via the bar complex", graph=None)
    p.add_argument("--max-degree", type=int, default=4)
    p = add("polygon-check", cmd_polygon_check, "polygon cohomology vs Hochschild homology", graph=None)
    p.add_argument("--n", type=int, required=True)
    p = add("selftest", cmd_selftest, "brute-force property suites", graph=None)
    p.add_argument("--max-vertices", type=int, default=4)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    t0 = time.perf_counter()
    try:
        report = args.func(args)
        code = 0
    except Failed as exc:
        report, code = exc.report, exc.code
    except InvariantError as exc:
        print(f"multipath: internal invariant broken: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"multipath: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 6)
    _emit(report, fmt, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
