"""Command-line front end.

Every subcommand writes one JSON document (or CSV table where a command
produces rows) to stdout or ``--output``.  Rationals are printed as
``p/q`` strings.  Exit status: 0 on success, 1 when the inputs are well
formed but the operation rejects them, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .analysis import (
    beta_analysis,
    check_special_family,
    chain_failures,
    components,
    demote_family,
    e_family,
    minima_maximality_failures,
    maximal_chain,
    outside_mass,
    partition_sides,
    special_convex_family,
)
from .averages import frac_str, mass, s1_decomposition, smallness_check, z_vector, zeta_profile
from .embeddings import KINDS, audit, write_pairs_csv
from .metrics import (
    TailSpec,
    common_prefix,
    counterexample_specs,
    d1,
    dinf,
    rescale_check,
    stability_table,
    triangle_violation,
)
from .ordinal import (
    ONE,
    Ordinal,
    OrdinalSyntaxError,
    eta_approx,
    format_ordinal,
    lambda_approx,
    mul,
    parse_ordinal,
)
from .schreier import (
    decomposition_check,
    derivative,
    enumerate_family,
    enumerate_fine,
    fine_is_maximal,
    format_finset,
    greedy_blocks,
    inclusion_threshold,
    is_maximal,
    is_member,
    maximal_sets,
    parse_finset,
    snapshot,
)
from .spaces import SpreadCodec, biorth_tree

SCHEMA = 1


class UsageError(Exception):
    """Inputs that are syntactically fine but cannot be combined."""


# -- argument types -------------------------------------------------------------


def _ordinal(text: str) -> Ordinal:
    try:
        return parse_ordinal(text)
    except OrdinalSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _set(text: str) -> tuple[int, ...]:
    try:
        return parse_finset(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _tail(text: str) -> TailSpec:
    try:
        return TailSpec.from_json(json.loads(text))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad tail spec: {exc}") from None


def _sets(items: Sequence[tuple[int, ...]]) -> list[list[int]]:
    return [list(A) for A in items]


def _decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + len(str(abs(q.numerator) // q.denominator)) + 5
        value = Decimal(q.numerator) / Decimal(q.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits)))


def _render(obj: Any, digits: int | None) -> Any:
    if isinstance(obj, Fraction):
        if digits is None:
            return frac_str(obj)
        return {"exact": frac_str(obj), "decimal": _decimal(obj, digits)}
    if isinstance(obj, Ordinal):
        return format_ordinal(obj)
    if isinstance(obj, dict):
        return {str(k): _render(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_render(v, digits) for v in obj]
    return obj


# -- subcommand handlers --------------------------------------------------------
# Each handler returns (payload, rows); rows is a header-first table or None.


def cmd_ordinal(args):
    x = args.value
    out: dict[str, Any] = {"ordinal": x, "successor": x.is_successor, "limit": x.is_limit}
    if args.n is not None:
        if x.is_limit:
            out["lambda"] = lambda_approx(x, args.n)
        if args.beta is not None:
            eta = eta_approx(args.beta, x, args.n)
            out["eta"] = eta
            out["beta_times_eta"] = mul(args.beta, eta)
            out["lambda_of_beta_times"] = lambda_approx(mul(args.beta, x), args.n)
    return out, None


def cmd_enumerate(args):
    members = enumerate_family(args.alpha, args.ground)
    rows = [["set", "maximal"]] + [
        [format_finset(A), str(is_maximal(args.alpha, A)).lower()] for A in members
    ]
    return {"alpha": args.alpha, "ground": list(args.ground), "count": len(members), "members": _sets(members)}, rows


def cmd_member(args):
    A = args.set
    ok = is_member(args.alpha, A)
    out: dict[str, Any] = {"alpha": args.alpha, "set": list(A), "member": ok}
    if ok:
        out["maximal"] = is_maximal(args.alpha, A)
        if args.alpha.is_successor:
            out["blocks"] = _sets(greedy_blocks(args.alpha.predecessor(), A))
    return out, None


def cmd_maximal(args):
    found = maximal_sets(args.alpha, args.ground)
    rows = [["set"]] + [[format_finset(A)] for A in found]
    return {"alpha": args.alpha, "ground": list(args.ground), "count": len(found), "maximal": _sets(found)}, rows


def cmd_fine(args):
    members = enumerate_fine(args.beta, args.gamma, args.ground)
    rows = [["set", "maximal"]] + [
        [format_finset(A), str(fine_is_maximal(args.beta, args.gamma, A)).lower()] for A in members
    ]
    return {
        "beta": args.beta,
        "gamma": args.gamma,
        "ground": list(args.ground),
        "count": len(members),
        "members": _sets(members),
    }, rows


def cmd_zeta(args):
    profile = zeta_profile(args.alpha, args.set)
    value = profile[args.set[-1]] if args.set else Fraction(0)
    return {
        "alpha": args.alpha,
        "set": list(args.set),
        "zeta": value,
        "profile": {str(a): q for a, q in profile.items()},
        "mass": mass(args.alpha, args.set),
    }, None


def cmd_zvec(args):
    vec = z_vector(args.alpha, args.set)
    rows = [["coordinate", "weight"]] + [[str(a), frac_str(q)] for a, q in sorted(vec.items())]
    return {"alpha": args.alpha, "set": list(args.set), "vector": {str(a): q for a, q in sorted(vec.items())}}, rows


def _distance(fn):
    def handler(args):
        return {
            "alpha": args.alpha,
            "A": list(args.a),
            "B": list(args.b),
            "common_prefix": list(common_prefix(args.a, args.b)),
            "distance": fn(args.alpha, args.a, args.b),
        }, None

    return handler


def cmd_triangle(args):
    members = enumerate_family(args.alpha, args.ground)
    bad = triangle_violation(args.alpha, members, args.metric)
    return {
        "alpha": args.alpha,
        "ground": list(args.ground),
        "metric": args.metric,
        "members": len(members),
        "violation": None if bad is None else _sets(bad),
    }, None


def cmd_audit(args):
    if args.format == "csv":
        buf = io.StringIO()
        write_pairs_csv(args.alpha, args.ground, args.kind, buf)
        return None, buf.getvalue()
    return audit(args.alpha, args.ground, args.kind).to_json(), None


def cmd_analyze(args):
    beta, gamma, B = args.beta, args.gamma, args.set
    root = beta_analysis(beta, gamma, B, truncated=args.truncated)
    fam = e_family(beta, gamma, B, truncated=args.truncated)
    prefixes = [args.prefix] if args.prefix is not None else [B[:k] for k in range(1, len(B) + 1)]
    rows_out = []
    for A in prefixes:
        cp = components(beta, gamma, A)
        entry: dict[str, Any] = {"A": list(A), "components": [list(p) for p in cp.parts], "in_E": A in fam}
        if A in fam:
            entry["chain"] = [list(n.path) for n in maximal_chain(beta, gamma, B, A, root=root)]
        rows_out.append(entry)
    out: dict[str, Any] = {
        "beta": beta,
        "gamma": gamma,
        "B": list(B),
        "truncated": args.truncated,
        "tree": root.to_json(),
        "E": _sets(fam),
        "prefixes": rows_out,
        "outside_mass": outside_mass(beta, gamma, B, truncated=args.truncated),
        "outside_bound": Fraction(2, B[0]),
        "minima_not_maximal": _sets(minima_maximality_failures(beta, gamma, B, truncated=args.truncated)),
        "chain_failures": chain_failures(beta, gamma, B, truncated=args.truncated),
    }
    if gamma.is_successor and gamma != ONE:
        left, right = partition_sides(beta, gamma, B, truncated=args.truncated)
        out["partition_holds"] = left == right
    return out, None


def cmd_convex(args):
    fam = special_convex_family(args.beta, args.gamma, args.set, args.alpha0, truncated=args.truncated)
    out = fam.to_json()
    out["failures"] = check_special_family(fam)
    if args.demote is not None:
        low = demote_family(fam, args.demote)
        out["demoted"] = low.to_json()
        out["demoted"]["failures"] = check_special_family(low)
    rows = [["A", "k", "r"]] + [
        [format_finset(A), str(k + 1), frac_str(q)] for A, r in fam.coeffs.items() for k, q in enumerate(r)
    ]
    return out, rows


def cmd_stability(args):
    if args.counterexample:
        a_spec, b_spec = counterexample_specs()
    elif args.a_spec is None or args.b_spec is None:
        raise UsageError("give --a-spec and --b-spec, or --counterexample")
    else:
        a_spec, b_spec = args.a_spec, args.b_spec
    table = stability_table(args.alpha, a_spec, b_spec, args.depth, args.metric)
    out = table.to_json()
    out["a_spec"] = a_spec.to_json()
    out["b_spec"] = b_spec.to_json()
    rows = [["m", "n", "distance"]] + [
        [str(m + 1), str(n + 1), frac_str(q)] for m, row in enumerate(table.matrix) for n, q in enumerate(row)
    ]
    return out, rows


def cmd_smallness(args):
    report = smallness_check(args.alpha, args.gamma, args.ground, args.epsilon)
    return report.to_json(), None


def cmd_derivative(args):
    if args.exact and args.times != 1:
        raise UsageError("--exact computes a single derivative")
    fam = snapshot(args.alpha, args.ground)
    sizes = [len(fam)]
    for _ in range(args.times):
        fam = derivative(fam, args.alpha if args.exact else None)
        sizes.append(len(fam))
    rows = [["set"]] + [[format_finset(A)] for A in fam.members]
    return {
        "alpha": args.alpha,
        "ground": list(args.ground),
        "times": args.times,
        "exact": args.exact,
        "sizes": sizes,
        "members": fam.to_json(),
    }, rows


def cmd_decompose(args):
    return {
        "gamma1": args.gamma1,
        "gamma2": args.gamma2,
        "set": list(args.set),
        "decomposable": decomposition_check(args.gamma1, args.gamma2, args.set),
    }, None


def cmd_inclusion(args):
    return {
        "alpha": args.alpha,
        "beta": args.beta,
        "ground": list(args.ground),
        "threshold": inclusion_threshold(args.alpha, args.beta, args.ground),
    }, None


def cmd_s1(args):
    blocks, value = s1_decomposition(args.set)
    return {"set": list(args.set), "blocks": _sets(blocks), "l1": value}, None


def cmd_rescale(args):
    report = rescale_check(args.beta, args.gamma, args.block, args.a, args.b)
    return report.to_json(), None


def cmd_spread(args):
    codec = SpreadCodec(args.ground)
    out: dict[str, Any] = {"ground": list(args.ground)}
    if args.set is not None:
        out["set"] = list(args.set)
        out["spread"] = list(codec.encode(args.set))
    else:
        out["codec"] = codec.to_json()["codes"]
    return out, None


def cmd_biorth(args):
    codec = SpreadCodec(args.ground)
    z_b, _ = biorth_tree(args.b, codec)
    z_a, zstar_a = biorth_tree(args.a, codec)
    return {
        "ground": list(args.ground),
        "A": list(args.a),
        "B": list(args.b),
        "z_A": z_a.to_json(),
        "zstar_A": zstar_a.to_json(),
        "z_B": z_b.to_json(),
        "pairing": zstar_a.dot(z_b),
    }, None


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument(
        "--decimal", type=int, metavar="K", help="also render rationals with K decimal digits"
    )

    parser = argparse.ArgumentParser(
        prog="schreierkit",
        description="Exact computations with Schreier families, repeated averages and their metrics.",
        epilog="Ordinals use w (or ω), ^, * and +, e.g. 'w^2*3 + w + 1'. "
        "Sets are braced lists such as {2,3,5} or ranges {2..9}.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def sub_add(name, handler, help_text, csv_ok=False):
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        p.set_defaults(handler=handler, csv_ok=csv_ok)
        return p

    p = sub_add("ordinal", cmd_ordinal, "normalise an ordinal and evaluate its fundamental sequences")
    p.add_argument("--value", type=_ordinal, required=True)
    p.add_argument("-n", type=int, help="index into the fundamental sequence")
    p.add_argument("--beta", type=_ordinal, help="beta = w^(w^xi) for the eta sequence")

    p = sub_add("enumerate", cmd_enumerate, "list the members of S_alpha inside a ground set", True)
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)

    p = sub_add("member", cmd_member, "test membership and maximality in S_alpha, with the greedy blocks")
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--set", type=_set, required=True)

    p = sub_add("maximal", cmd_maximal, "list the maximal sets of S_alpha inside a ground set", True)
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)

    p = sub_add("fine", cmd_fine, "list the members of the fine family F_(beta, gamma) inside a ground set", True)
    p.add_argument("--beta", type=_ordinal, required=True)
    p.add_argument("--gamma", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)

    p = sub_add("zeta", cmd_zeta, "repeated-average coefficient zeta(alpha, A) and its prefix profile")
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--set", type=_set, required=True)

    p = sub_add("zvec", cmd_zvec, "repeated-average vector of a maximal set", True)
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--set", type=_set, required=True)

    for name, fn, text in (
        ("d1", d1, "tree distance: tail masses beyond the common prefix"),
        ("dinf", dinf, "interlacing distance: largest gap masses in both directions"),
    ):
        p = sub_add(name, _distance(fn), text)
        p.add_argument("--alpha", type=_ordinal, required=True)
        p.add_argument("--a", type=_set, required=True)
        p.add_argument("--b", type=_set, required=True)

    p = sub_add("triangle", cmd_triangle, "search for a triangle-inequality violation among members")
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)
    p.add_argument("--metric", choices=("d1", "dinf"), default="d1")

    p = sub_add("audit", cmd_audit, "exact distortion ratios of an embedding over all member pairs", True)
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)
    p.add_argument("--kind", choices=KINDS, default="ell1")

    p = sub_add("analyze", cmd_analyze, "analysis tree, components, E-family and their checks")
    p.add_argument("--beta", type=_ordinal, required=True)
    p.add_argument("--gamma", type=_ordinal, required=True)
    p.add_argument("--set", type=_set, required=True)
    p.add_argument("--prefix", type=_set, help="report only this prefix")
    p.add_argument("--truncated", action="store_true", help="accept a member as an initial segment of a maximal set")

    p = sub_add("convex", cmd_convex, "special convex family built from repeated averages", True)
    p.add_argument("--beta", type=_ordinal, required=True)
    p.add_argument("--gamma", type=_ordinal, required=True)
    p.add_argument("--set", type=_set, required=True)
    p.add_argument("--alpha0", type=_ordinal, required=True)
    p.add_argument("--demote", type=int, metavar="J", help="also restrict to block J+1")
    p.add_argument("--truncated", action="store_true")

    p = sub_add("stability", cmd_stability, "distance table of two set sequences with iterated limits", True)
    p.add_argument("--alpha", type=_ordinal, default=ONE)
    p.add_argument("--metric", choices=("d1", "dinf"), default="d1")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--a-spec", type=_tail, help="JSON tail spec for the first sequence")
    p.add_argument("--b-spec", type=_tail, help="JSON tail spec for the second sequence")
    p.add_argument("--counterexample", action="store_true", help="use the built-in unstable pair at alpha = 1")

    p = sub_add("smallness", cmd_smallness, "largest repeated-average mass of an S_gamma set inside S_alpha sets")
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--gamma", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)

    p = sub_add("derivative", cmd_derivative, "drop the non-extendable members of a restricted family", True)
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="drop the sets maximal in S_alpha instead")

    p = sub_add("decompose", cmd_decompose, "search for an S_gamma1 block decomposition with S_gamma2 minima")
    p.add_argument("--gamma1", type=_ordinal, required=True)
    p.add_argument("--gamma2", type=_ordinal, required=True)
    p.add_argument("--set", type=_set, required=True)

    p = sub_add("inclusion", cmd_inclusion, "least start point after which S_alpha sets lie in S_beta")
    p.add_argument("--alpha", type=_ordinal, required=True)
    p.add_argument("--beta", type=_ordinal, required=True)
    p.add_argument("--ground", type=_set, required=True)

    p = sub_add("s1", cmd_s1, "optimal S_1 decomposition and l1")
    p.add_argument("--set", type=_set, required=True)

    p = sub_add("rescale", cmd_rescale, "compare distances before and after prepending maximal blocks")
    p.add_argument("--beta", type=_ordinal, required=True)
    p.add_argument("--gamma", type=_ordinal, required=True)
    p.add_argument("--block", type=_set, action="append", required=True)
    p.add_argument("--a", type=_set, required=True)
    p.add_argument("--b", type=_set, required=True)

    p = sub_add("spread", cmd_spread, "spread codes of the subsets of a ground set")
    p.add_argument("--ground", type=_set, required=True)
    p.add_argument("--set", type=_set)

    p = sub_add("biorth", cmd_biorth, "biorthogonal tree vectors and the pairing zstar_A(z_B)")
    p.add_argument("--ground", type=_set, required=True)
    p.add_argument("--a", type=_set, required=True)
    p.add_argument("--b", type=_set, required=True)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "csv" and not args.csv_ok:
        print(f"schreierkit {args.command}: csv output is not available", file=sys.stderr)
        return 2
    try:
        payload, rows = args.handler(args)
    except UsageError as exc:
        print(f"schreierkit {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError) as exc:
        print(f"schreierkit {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv":
        if isinstance(rows, str):
            text = rows
        else:
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerows(rows)
            text = buf.getvalue()
    else:
        doc = {"schema": SCHEMA, "command": args.command}
        doc.update(_render(payload, args.decimal))
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    _emit(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
