"""Command line interface.  Exit codes: 0 ok, 1 domain failure, 2 input/parse error."""
from __future__ import annotations

import argparse
import sys

from . import __version__, gallery, poly
from .chain import blowup_chain
from .generator import Infeasible, random_datum
from .io import DocumentError, datum_to_dict, dumps, load_datum, report_document, validation_section
from .mhs import validate_datum

OK, DOMAIN, PARSE = 0, 1, 2


def _emit(args, payload: str) -> None:
    if args.json in (None, "-"):
        sys.stdout.write(payload)
    else:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _load(args):
    if args.datum in gallery.DATA:
        d = gallery.datum(args.datum)
    else:
        d = load_datum(args.datum)
    if args.window is not None:
        d = d.replace(window=args.window)
    return d


def _print_validation(rep) -> None:
    for c in rep.checks:
        mark = "ok  " if c.ok else "FAIL"
        print(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail and not c.ok else ""))


def _print_report(r, full: bool = True) -> None:
    d = r.datum
    print(f"datum {d.name or '(unnamed)'}: rank {d.rank}, field Q(zeta_{d.order})")
    if r.error:
        print(f"  error: {r.error}")
        return
    print(f"  m = {d.m}, classes: " + ", ".join(f"alpha={c.alpha} (dim {c.dim})" for c in d.eigenclasses))
    print(f"  d = {list(r.d)}, a = {r.a} (closed form {r.a_closed}), divisors = {r.divisors}")
    print(f"  component group: {r.component_group or 'trivial'}")
    print(f"  classification: {r.classification}")
    if full:
        for s in r.steps:
            print(f"  step {s.k}: m_k = {s.m_k}, center codim {s.center_codim}, center dim {s.center_dim}")
        if r.image_fiber is not None:
            print(f"  image fiber indices: {list(r.image_fiber.indices)}")
        print(f"  E' fiber = H^inv + F^0H_1: {r.image_identity}  dims {list(r.image_identity_dims)}")
        for k, ok in r.identities.items():
            print(f"  identity {k}: {'holds' if ok else 'FAILS'}")
    for n in r.notes:
        print(f"  note: {n}")


def cmd_validate(args) -> int:
    d = _load(args)
    rep = validate_datum(d)
    if args.json:
        _emit(args, dumps(validation_section(rep)))
    else:
        print(f"datum {d.name or '(unnamed)'}: {'valid' if rep.ok else 'INVALID'}")
        _print_validation(rep)
    return OK if rep.ok else DOMAIN


def _analyze(args, full: bool) -> int:
    d = _load(args)
    r = blowup_chain(d)
    if args.json:
        _emit(args, report_document(r).to_json())
    else:
        if not r.validation.ok:
            print(f"datum {d.name or '(unnamed)'}: INVALID")
            _print_validation(r.validation)
        else:
            _print_report(r, full)
    if not r.validation.ok or r.error:
        return DOMAIN
    return OK if all(r.identities.values()) else DOMAIN


def cmd_analyze(args) -> int:
    return _analyze(args, True)


def cmd_classify(args) -> int:
    d = _load(args)
    r = blowup_chain(d, checks=False)
    if not r.validation.ok or r.error:
        print(f"datum {d.name or '(unnamed)'}: cannot classify ({r.error or 'invalid datum'})")
        return DOMAIN
    print(r.classification)
    return OK


def cmd_chain(args) -> int:
    d = _load(args)
    r = blowup_chain(d, checks=False)
    if not r.validation.ok or r.error:
        print(f"datum {d.name or '(unnamed)'}: no chain ({r.error or 'invalid datum'})")
        return DOMAIN
    print(f"chain length a = {r.a}, divisors {r.divisors}")
    for s in r.steps:
        print(f"step {s.k}: blow up {{t = 0}} ∩ " + " ∩ ".join(f"{{x{i}^({s.k - 1}) = 0}}" for i in s.center_equations))
        print(f"  m_k = {s.m_k} = d_k, center codim {s.center_codim}, center dim {s.center_dim}")
        for i, mult in s.transition:
            print(f"  x{i}^({s.k - 1}) = " + (f"t*x{i}^({s.k})" if mult else f"x{i}^({s.k})"))
    return OK


def _poly_demo(name: str, bound: int) -> int:
    build = {"P1": poly.p1_maximal_ideal, "P2": poly.p2_pullback, "P3": poly.p3_koszul_cokernel}[name]
    M = build()
    print(f"{name}: {M.name}  (degree bound {bound})")
    for eq in poly.syzygy_equation(M):
        print(f"  Spec Sym relation: {eq}")
    if name == "P2":
        w = poly.torsion_check(M, poly.var(M.s, 0), bound)
        if w:
            print(f"  t1-torsion class in degree {w[0]}: (" + ", ".join(poly.pformat(c) for c in w[1]) + ")")
        else:
            print("  no t1-torsion up to the bound")
        return OK
    rep = poly.reflexivity_report(M, bound)
    print("  e    h(M)  h(M*)  h(M**)")
    for e in sorted(rep.hilbert):
        row = [rep.hilbert.get(e), rep.dual_hilbert.get(e), rep.double_dual_hilbert.get(e)]
        print(f"  {e:<4} " + "  ".join(f"{'-' if x is None else x:>5}" for x in row))
    print(f"  minimal generators of M: degrees {rep.generator_degrees}")
    print(f"  reflexive (up to bound): {rep.reflexive_evidence}")
    print(f"  free: {rep.free_evidence}")
    print(f"  self-dual up to shift: {rep.self_dual_evidence}")
    for line in rep.details:
        print(f"  {line}")
    return OK


def cmd_poly_demo(args) -> int:
    names = ["P1", "P2", "P3"] if args.name == "all" else [args.name]
    rc = OK
    for n in names:
        rc = max(rc, _poly_demo(n, args.degree_bound))
    return rc


def cmd_gallery(args) -> int:
    if not args.name:
        for n in gallery.names():
            print(f"{n:<5} {gallery.DESCRIPTIONS[n]}")
        return OK
    if args.name.upper().startswith("P"):
        return _poly_demo(args.name.upper(), args.degree_bound)
    args.datum = args.name
    return _analyze(args, True)


def cmd_random(args) -> int:
    jordan = [int(x) for x in args.jordan.split(",")] if args.jordan else None
    try:
        d = random_datum(args.seed, rank=args.rank, jordan=jordan, unipotent=args.unipotent)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return DOMAIN
    if args.window is not None:
        d = d.replace(window=args.window)
    if args.analyze:
        r = blowup_chain(d)
        if args.json:
            _emit(args, report_document(r).to_json())
        else:
            _print_report(r)
        return OK if r.validation.ok and not r.error else DOMAIN
    _emit(args, dumps(datum_to_dict(d)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="neronlat", description="Exact Neron-model lattices for degenerating Hodge structures")
    p.add_argument("--version", action="version", version=f"neronlat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def datum_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("datum", help="JSON datum file or gallery name (G1 ... G6)")
        sp.add_argument("--json", metavar="PATH", help="write a JSON document ('-' for stdout)")
        sp.add_argument("--window", type=int, help="truncation order K")
        sp.set_defaults(func=func)
        return sp

    datum_cmd("validate", cmd_validate, "check the axioms of a degeneration datum")
    datum_cmd("analyze", cmd_analyze, "full analysis report")
    datum_cmd("classify", cmd_classify, "type I / II_2 / II_1 label")
    datum_cmd("chain", cmd_chain, "print the blow-up chain")

    g = sub.add_parser("gallery", help="list or run builtin examples")
    g.add_argument("name", nargs="?")
    g.add_argument("--json", metavar="PATH")
    g.add_argument("--window", type=int)
    g.add_argument("--degree-bound", type=int, default=6)
    g.set_defaults(func=cmd_gallery)

    r = sub.add_parser("random", help="deterministic random datum")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--rank", type=int)
    r.add_argument("--jordan", help="comma separated block lengths, e.g. 2,2,1,1")
    r.add_argument("--unipotent", action="store_true")
    r.add_argument("--analyze", action="store_true", help="analyse instead of printing the datum")
    r.add_argument("--json", metavar="PATH")
    r.add_argument("--window", type=int)
    r.set_defaults(func=cmd_random)

    pd = sub.add_parser("poly-demo", help="graded-module duality demos P1-P3")
    pd.add_argument("name", nargs="?", default="all", choices=["P1", "P2", "P3", "all"])
    pd.add_argument("--degree-bound", type=int, default=6)
    pd.set_defaults(func=cmd_poly_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return PARSE if exc.code else OK
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DOMAIN


if __name__ == "__main__":
    sys.exit(main())
