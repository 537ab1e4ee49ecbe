"""Command-line front end.

Exit codes: 0 success, 1 verification failure (some residual is nonzero),
2 usage or parse error, 3 polynomial term-cap overflow (LINF_MAX_TERMS).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import charclass as cc
from . import constructions as cons
from . import lie as lie_mod
from . import reps
from .algebra import DgcAlgebra, LinfError
from .constructions import ConePair
from .dsl import ParseError, parse_algebra_file, parse_expression, print_poly
from .kernel import TermBudgetExceeded
from .lie import LieData, ce_of_lie
from .report import Report


def _table(A: DgcAlgebra):
    return [{"generator": name, "degree": A.generators[A.index(name)].degree,
             "d": print_poly(val)} for name, val in A.differential_table()]


def _load_file(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_algebra_file(text)


def _resolve(target: str, block: str | None = None):
    """Resolve a positional target: preset name or .linf file path.

    Returns ("dgc", DgcAlgebra) | ("cone", ConePair) | ("lie", LieData).
    """
    if target in cons.PRESETS:
        obj = cons.preset(target)
        return ("cone", obj) if isinstance(obj, ConePair) else ("dgc", obj)
    if target in lie_mod.BUILTIN_LIE:
        return "lie", lie_mod.BUILTIN_LIE[target]()
    path = Path(target)
    if not path.exists():
        raise LinfError(
            f"{target!r} is neither a preset nor an existing file; presets: "
            f"{sorted(set(cons.PRESETS) | set(lie_mod.BUILTIN_LIE))}")
    parsed = _load_file(target)
    if block is not None:
        if block in parsed.lies:
            return "lie", parsed.lies[block]
        if block in parsed.algebras:
            return "dgc", parsed.algebras[block]
        raise LinfError(f"no block named {block!r} in {target}")
    kind, obj = parsed.single()
    return ("lie", obj) if kind == "lie" else ("dgc", obj)


def _as_dgc(kind: str, obj):
    if kind == "lie":
        return ce_of_lie(obj)
    if kind == "dgc":
        return obj
    raise LinfError("this command needs a single algebra, not a cone pair")


def _resolve_lie(target: str, block: str | None = None) -> LieData:
    """Resolve a target that must be Lie structure-constant data."""
    if target in lie_mod.BUILTIN_LIE:
        return lie_mod.BUILTIN_LIE[target]()
    path = Path(target)
    if path.exists():
        parsed = _load_file(target)
        if block is not None:
            if block in parsed.lies:
                return parsed.lies[block]
            raise LinfError(f"no lie block named {block!r} in {target}")
        if len(parsed.lies) == 1 and not parsed.algebras:
            return next(iter(parsed.lies.values()))
        raise LinfError(f"{target} does not define a single lie block")
    raise LinfError(
        f"{target!r} is not a Lie algebra; builtins: "
        f"{sorted(lie_mod.BUILTIN_LIE)}")


# ---------------------------------------------------------------------------
# command handlers: each fills a Report and returns the exit code

def cmd_check(args, report: Report) -> int:
    entries = []
    ok = True
    targets = []
    if args.target in cons.PRESETS:
        obj = cons.preset(args.target)
        if isinstance(obj, ConePair):
            targets = [(obj.ce.name, obj.ce), (obj.weil.name, obj.weil)]
        else:
            targets = [(args.target, obj)]
    else:
        kind, obj = _resolve(args.target, args.block)
        if kind == "lie":
            try:
                targets = [(obj.name, ce_of_lie(obj))]
            except lie_mod.JacobiError as exc:
                entries.append({"name": obj.name, "ok": False,
                                "error": str(exc)})
                ok = False
        else:
            targets = [(obj.name, obj)]
    for name, A in targets:
        residuals = A.check_d_squared()
        entries.append({
            "name": name,
            "ok": not residuals,
            "residuals": [{"generator": g, "residual": print_poly(p)}
                          for g, p in residuals],
        })
        ok = ok and not residuals
    report.payload["checked"] = entries
    if ok:
        report.payload["summary"] = "OK: d^2 = 0"
    else:
        report.payload["summary"] = "FAIL: nonzero d^2 residuals"
        report.fail()
    return 0 if ok else 1


def cmd_cohomology(args, report: Report) -> int:
    kind, obj = _resolve(args.target, args.block)
    A = _as_dgc(kind, obj)
    rep = lie_mod.cohomology_basis(A, args.max_degree)
    report.payload["name"] = A.name
    report.payload["dims"] = rep.dims
    report.payload["representatives"] = [
        [print_poly(p) for p in reps_n] for reps_n in rep.representatives]
    return 0


def cmd_weil(args, report: Report) -> int:
    kind, obj = _resolve(args.target, args.block)
    A = _as_dgc(kind, obj)
    W, shift = cons.weil_algebra(A)
    residuals = W.check_d_squared()
    report.payload["name"] = W.name
    report.payload["table"] = _table(W)
    report.payload["shift_pairs"] = [list(p) for p in shift.pairs]
    report.payload["ok"] = not residuals
    if residuals:
        report.fail()
        return 1
    return 0


def cmd_transgress(args, report: Report) -> int:
    g = _resolve_lie(args.target, args.block)
    A = ce_of_lie(g)
    W, shift = cons.weil_algebra(A)
    if args.power == 2 and g.matrices is None:
        P = lie_mod.quadratic_invariant(g)
    else:
        P = lie_mod.invariant_polynomial_str(g, args.power)
    triple = cons.transgress(W, shift, P)
    problems = triple.verify()
    report.payload["name"] = g.name
    report.payload["P"] = print_poly(triple.P)
    report.payload["cs"] = print_poly(triple.cs)
    report.payload["mu"] = print_poly(triple.mu)
    report.payload["verified"] = not problems
    if problems:
        report.payload["problems"] = problems
        report.fail()
        return 1
    return 0


def cmd_extend(args, report: Report) -> int:
    if args.canonical3:
        g = _resolve_lie(args.target, args.block)
        mu = lie_mod.cocycle_from_form(g)
        A = mu.algebra
    else:
        kind, obj = _resolve(args.target, args.block)
        if args.cocycle is None:
            raise LinfError("provide --cocycle EXPR or --canonical3")
        A = _as_dgc(kind, obj)
        mu = parse_expression(args.cocycle, A)
    E = cons.string_like_extension(A, mu, b_name=args.name,
                                   degree=args.degree)
    report.payload["name"] = E.name
    report.payload["new_generator"] = args.name
    report.payload["table"] = _table(E)
    report.payload["ok"] = E.nilpotency_checked
    return 0


def cmd_cone(args, report: Report) -> int:
    if args.target in cons.PRESETS:
        pair = cons.preset(args.target)
        if not isinstance(pair, ConePair):
            raise LinfError(f"{args.target} is not a cone preset")
    else:
        pair = cons.cone_string(_resolve_lie(args.target, args.block))
    report.payload["ce"] = {"name": pair.ce.name, "table": _table(pair.ce)}
    report.payload["weil"] = {"name": pair.weil.name, "table": _table(pair.weil)}
    report.payload["restriction_chain_map_ok"] = pair.restriction.chain_map_checked
    report.payload["ok"] = pair.ce.nilpotency_checked and pair.weil.nilpotency_checked
    return 0


def cmd_opposite(args, report: Report) -> int:
    kind, obj = _resolve(args.target, args.block)
    A = _as_dgc(kind, obj)
    op = cons.opposite_algebra(A)
    neg = cons.negation_map(A)
    bad = neg.check_chain_map()
    report.payload["name"] = op.name
    report.payload["table"] = _table(op)
    report.payload["negation_chain_map_ok"] = not bad
    if bad:
        report.payload["residuals"] = [
            {"generator": g, "residual": print_poly(p)} for g, p in bad]
        report.fail()
        return 1
    return 0


def cmd_rep(args, report: Report) -> int:
    if args.type == "standard":
        rho = reps.standard_rep_shifted_u1(args.k, args.r)
    else:
        if args.lie is None:
            raise LinfError("--lie is required for adjoint/vector reps")
        g = _resolve_lie(args.lie)
        if args.type == "adjoint":
            rho = reps.adjoint_rep(cons.ce_of_lie_cached(g))
        else:
            rho = reps.vector_rep(g)
    A = reps.rep_algebra(rho)
    report.payload["name"] = A.name
    report.payload["table"] = _table(A)
    report.payload["ok"] = A.nilpotency_checked
    code = 0
    if args.weil:
        W, _ = reps.rep_weil(rho)
        report.payload["weil_table"] = _table(W)
    if args.claims is not None:
        claims = reps.standard_rep_weil_claims(args.claims)
        report.payload["claims"] = [
            {"label": c.label,
             "claimed": print_poly(c.claimed),
             "derived": print_poly(c.derived),
             "match": c.matches} for c in claims]
        report.notes.append(
            "mismatching claims reproduce the printed table's degree-"
            "inconsistent line; the derived differential is authoritative")
    if args.sections:
        preset = reps.section_covariant_derivative(rho)
        report.payload["sections"] = [
            {"lhs": r.lhs, "rhs": r.rhs, "degree": r.degree}
            for r in preset.relations]
        if preset.residuals:
            report.payload["section_residuals"] = [
                {"relation": lbl, "residual": r} for lbl, r in preset.residuals]
            report.fail()
            code = 1
    return code


def cmd_bianchi(args, report: Report) -> int:
    preset = reps.derive_twisted_bianchi(args.preset, k=args.k, n=args.n,
                                         sign=args.sign)
    report.payload["preset"] = preset.name
    report.payload["table"] = preset.relation_lines(expand=args.expand)
    report.payload["relations"] = [
        {"lhs": r.lhs, "rhs": (r.rhs_expanded if args.expand else r.rhs),
         "degree": r.degree}
        for r in preset.relations]
    report.payload["residuals"] = [
        {"relation": lbl, "residual": r} for lbl, r in preset.residuals]
    report.notes.extend(preset.notes)
    if preset.residuals:
        report.fail()
        return 1
    return 0


def cmd_twisted_derham(args, report: Report) -> int:
    if args.chern is not None:
        rep = reps.twisted_chern_character_check(args.chern, cap=args.max_degree)
        report.payload["k"] = rep.k
        report.payload["max_degree"] = rep.cap
        report.payload["dS_zero"] = rep.ds_zero
        report.payload["residual_by_degree"] = [
            {"degree": d, "residual": r} for d, r in rep.residual_by_degree]
        report.payload["twisted_closed"] = rep.twisted_closed
        report.notes.append(
            "identity verified: d ch = c ^ ch in the invariant algebra; the "
            "printed variant 'd ch = H3 ^ c' is dimensionally inconsistent "
            "and is reported here, not adopted")
        if not rep.twisted_closed:
            report.fail()
            return 1
        return 0
    rep = reps.twisted_de_rham_check(args.rungs,
                                     twist_closed=not args.open_twist,
                                     h_degree=args.h_degree)
    report.payload["rungs"] = [
        {"symbol": s, "nabla": v} for s, v in rep.rungs]
    report.payload["residuals"] = [
        {"symbol": s, "residual": r, "expected": e, "match": m}
        for s, r, e, m in rep.residuals]
    report.payload["square_is_zero"] = rep.square_is_zero
    report.payload["matches_expected_obstruction"] = rep.all_match
    if not rep.all_match:
        report.fail()
        return 1
    return 0


def _parse_reduction(spec: str) -> dict:
    out = {}
    if not spec:
        return out
    for item in spec.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise LinfError(f"bad substitution {item!r}; use sym=expr")
        name, expr = item.split("=", 1)
        out[name.strip()] = parse_expression(expr.strip(), cc._ALG)
    return out


def cmd_charclass(args, report: Report) -> int:
    if args.list:
        report.payload["presets"] = sorted(cc.ANOMALY_PRESETS)
        return 0
    if args.g8_residual:
        res = cc.g8_consistency_residual()
        report.payload["residual"] = print_poly(res)
        report.notes.append(
            "difference between the expanded half-square-minus-one-loop "
            "class and the printed degree-8 polynomial; reported verbatim, "
            "no correction applied")
        return 0
    if args.ch is not None:
        p = cc.chern_character_component(args.ch)
        report.payload["expr"] = f"ch{args.ch}"
        report.payload["polynomial"] = print_poly(p)
        report.payload["degree"] = p.degree()
        return 0
    if args.expr is not None:
        p = parse_expression(args.expr, cc._ALG)
    elif args.preset is not None:
        p = cc.anomaly_polynomial(args.preset)
        report.payload["preset"] = args.preset
        report.notes.append("stated up to positive scalar normalization")
    else:
        raise LinfError("charclass needs --preset, --expr, --ch, "
                        "--g8-residual or --list")
    if args.reduce:
        p = cc.reduce(p, _parse_reduction(args.reduce))
    if args.lambda_is_half_p1:
        p = cc.reduce(p, cc.lambda_substitution())
    report.payload["polynomial"] = print_poly(p)
    degs = sorted(p.degrees())
    report.payload["degree"] = degs[0] if len(degs) == 1 else degs
    return 0


def cmd_singer(args, report: Report) -> int:
    if args.sigma:
        p, n = args.sigma
        report.payload["sigma"] = {"p": p, "n": n,
                                   "value": cc.sigma_digit_sum(p, n)}
        return 0
    if args.n is None or args.k is None:
        raise LinfError("singer needs -n and -k (or --sigma P N)")
    report.payload["n"] = args.n
    report.payload["k"] = args.k
    report.payload["value"] = cc.singer_divisibility(args.n, args.k)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="linf",
        description="exact symbolic calculus for graded differential algebras")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(handler=fn)
        return p

    p = add("check", cmd_check, "verify d^2 = 0")
    p.add_argument("target")
    p.add_argument("--block")

    p = add("cohomology", cmd_cohomology, "exact cohomology over Q")
    p.add_argument("target")
    p.add_argument("--block")
    p.add_argument("--max-degree", type=int, required=True)

    p = add("weil", cmd_weil, "Weil algebra with forced differential")
    p.add_argument("target")
    p.add_argument("--block")

    p = add("transgress", cmd_transgress,
            "transgression triple P, cs, mu for an invariant polynomial")
    p.add_argument("target")
    p.add_argument("--block")
    p.add_argument("--power", type=int, default=2,
                   help="trace power k (degree 2k invariant)")

    p = add("extend", cmd_extend, "string-like extension d b = mu")
    p.add_argument("target")
    p.add_argument("--block")
    p.add_argument("--cocycle", help="expression for mu")
    p.add_argument("--canonical3", action="store_true",
                   help="use the form-induced 3-cocycle")
    p.add_argument("--name", default="b")
    p.add_argument("--degree", type=int, default=None,
                   help="generator degree (only for a zero cocycle)")

    p = add("cone", cmd_cone, "weak cokernel cone pair with validated tables")
    p.add_argument("target")
    p.add_argument("--block")

    p = add("opposite", cmd_opposite,
            "opposite algebra and the negation chain map")
    p.add_argument("target")
    p.add_argument("--block")

    p = add("rep", cmd_rep, "representations up to homotopy")
    p.add_argument("--type", choices=("adjoint", "vector", "standard"),
                   required=True)
    p.add_argument("--lie", help="Lie algebra target for adjoint/vector")
    p.add_argument("-k", type=int, default=1, help="standard rep: h degree 2k+1")
    p.add_argument("-r", type=int, default=1, help="standard rep: ladder length")
    p.add_argument("--weil", action="store_true")
    p.add_argument("--claims", type=int, default=None, metavar="N",
                   help="compare the printed b^{n-1}u(1) Weil table")
    p.add_argument("--sections", action="store_true",
                   help="covariant derivative relations")

    p = add("bianchi", cmd_bianchi, "twisted Bianchi relation tables")
    p.add_argument("--preset", required=True,
                   choices=("string", "fivebrane", "u-k", "c-field",
                            "dual-c-field", "bn-morphism", "rr-iia"))
    p.add_argument("-k", type=int, default=2, help="u-k: rank of u(k)")
    p.add_argument("-n", type=int, default=3, help="bn-morphism: degree")
    p.add_argument("--sign", type=int, default=1, choices=(1, -1),
                   help="sign of the added invariant term (c-field models)")
    p.add_argument("--expand", action="store_true",
                   help="expand cs/P symbols into components")

    p = add("twisted-derham", cmd_twisted_derham,
            "twisted de Rham operator checks")
    p.add_argument("--rungs", type=int, default=4)
    p.add_argument("--open-twist", action="store_true",
                   help="take dH = G nonzero and check the obstruction")
    p.add_argument("--h-degree", type=int, default=3)
    p.add_argument("--chern", type=int, default=None, metavar="K",
                   help="twisted Chern character check for u(k)")
    p.add_argument("--max-degree", type=int, default=8)

    p = add("charclass", cmd_charclass, "characteristic-class calculus")
    p.add_argument("--preset")
    p.add_argument("--expr")
    p.add_argument("--ch", type=int, default=None, metavar="K")
    p.add_argument("--g8-residual", action="store_true")
    p.add_argument("--reduce", help="substitutions, e.g. 'c1=0,c2=0'")
    p.add_argument("--lambda-is-half-p1", action="store_true")
    p.add_argument("--list", action="store_true")

    p = add("singer", cmd_singer, "divisibility of Chern classes on covers")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--sigma", type=int, nargs=2, default=None,
                   metavar=("P", "N"), help="base-p digit sum")

    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    report = Report(command=argv)
    try:
        code = args.handler(args, report)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except TermBudgetExceeded as exc:
        print(f"term budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (LinfError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = report.to_json() if args.json else report.to_text()
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
