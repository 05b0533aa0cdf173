"""Command-line interface.

Every command prints a machine-readable document: JSON by default, CSV
where tabular (``--format csv``).  Output is deterministic.  Exit codes:
0 success, 2 validation error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .arc_powers import power_deviation, power_sources
from .boundary import ConvergenceError, rho_at, sample_arc
from .farey import ArcId, ArcType, arc_params, arcs_of_order, farey_sequence, farey_pairs_for
from .realizations import (
    PartitionClass,
    build_type0,
    build_typeI,
    build_typeII,
    build_typeIII,
    char_poly,
)
from .matrix_powers import decide_power_TII, decide_power_TIII

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


class ValidationError(ValueError):
    pass


def _max_n(default: int) -> int:
    raw = os.environ.get("KARP_MAX_N")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"KARP_MAX_N must be an integer, got {raw!r}")


def _check_n(n: int, default_budget: int):
    if n < 1:
        raise ValidationError("n must be a positive integer")
    budget = _max_n(default_budget)
    if n > budget:
        raise ValidationError(f"n={n} exceeds the budget of {budget} (set KARP_MAX_N)")


def _fmt_float(x: float) -> str:
    return format(float(x), ".15g")


def _fmt_frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_theta(text: str):
    """Angle as decimal radians or an exact `p/q pi` literal."""
    m = re.fullmatch(r"\s*(-?\d+)\s*/\s*(\d+)\s*pi\s*", text)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"cannot parse theta {text!r} (use radians or e.g. 29/42pi)")


def _parse_partition(text: str):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse partition {text!r} (use e.g. 1,0,2)")


def _parse_alpha(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse alpha {text!r} (use e.g. 1/3)")


def _emit_json(doc):
    print(json.dumps(doc, indent=2))


def format_poly(coeffs) -> str:
    """Render exact coefficients (lowest power first) like `t^8 - 2/3 t - 1/3`."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "t" if k == 1 else f"t^{k}"
            body = var if mag == 1 else f"{mag} {var}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def cmd_farey(args) -> int:
    _check_n(args.n, 2000)
    seq = farey_sequence(args.n)
    pairs = []
    if args.pairs:
        for arc in arcs_of_order(args.n):
            primary, conjugate = farey_pairs_for(arc)
            for fp in (primary, conjugate):
                pairs.append((fp.left, fp.right))
        pairs.sort()
    if args.format == "csv":
        print("numerator,denominator")
        for f in seq:
            print(f"{f.numerator},{f.denominator}")
        if args.pairs:
            print("left,right")
            for a, b in pairs:
                print(f"{_fmt_frac(a)},{_fmt_frac(b)}")
    else:
        doc = {
            "format_version": FORMAT_VERSION,
            "command": "farey",
            "n": args.n,
            "payload": {"fractions": [_fmt_frac(f) for f in seq]},
        }
        if args.pairs:
            doc["payload"]["pairs"] = [[_fmt_frac(a), _fmt_frac(b)] for a, b in pairs]
        _emit_json(doc)
    return EXIT_OK


def _point_row(pt):
    return {
        "theta": _fmt_float(pt.theta),
        "rho": _fmt_float(pt.rho),
        "mu": _fmt_float(pt.mu),
        "alpha": _fmt_float(pt.alpha),
        "q": pt.arc.q,
        "s": pt.arc.s,
    }


def cmd_boundary(args) -> int:
    _check_n(args.n, 2000)
    if (args.theta is None) == (args.samples is None):
        raise ValidationError("give exactly one of --theta or --samples")
    if args.theta is not None:
        pts = [rho_at(args.n, _parse_theta(args.theta))]
    else:
        if args.samples < 2:
            raise ValidationError("--samples must be at least 2")
        pts = []
        for arc in arcs_of_order(args.n):
            pts.extend(sample_arc(arc, args.samples))
        pts.sort(key=lambda p: p.theta)
    rows = [_point_row(p) for p in pts]
    if args.format == "csv":
        print("theta,rho,mu,alpha,q,s")
        for r in rows:
            print(f"{r['theta']},{r['rho']},{r['mu']},{r['alpha']},{r['q']},{r['s']}")
    else:
        _emit_json(
            {
                "format_version": FORMAT_VERSION,
                "command": "boundary",
                "n": args.n,
                "payload": {"points": rows},
            }
        )
    return EXIT_OK


def _relation_doc(rel):
    return {
        "target": {"q": rel.target.q, "s": rel.target.s},
        "source": {"q": rel.source.q, "s": rel.source.s},
        "c": rel.c,
    }


def cmd_arc_powers(args) -> int:
    _check_n(args.n, 2000)
    if (args.q is None) != (args.s is None):
        raise ValidationError("give q and s together or not at all")
    if args.q is not None:
        try:
            arcs = [ArcId(args.n, args.q, args.s)]
        except ValueError as exc:
            raise ValidationError(str(exc))
    else:
        arcs = arcs_of_order(args.n)
    rels = [r for arc in arcs for r in power_sources(arc)]
    if args.format == "csv":
        print("target_q,target_s,source_q,source_s,c")
        for r in rels:
            print(f"{r.target.q},{r.target.s},{r.source.q},{r.source.s},{r.c}")
    else:
        _emit_json(
            {
                "format_version": FORMAT_VERSION,
                "command": "arc-powers",
                "n": args.n,
                "payload": {"relations": [_relation_doc(r) for r in rels]},
            }
        )
    return EXIT_OK


def cmd_realize(args) -> int:
    _check_n(args.n, 400)
    alpha = _parse_alpha(args.alpha)
    try:
        arc = ArcId(args.n, args.q, args.s)
        params = arc_params(arc)
        kind = params.arc_type
        if args.type is not None and args.type != kind.value:
            raise ValidationError(
                f"{arc} has type {kind.value}, not {args.type}"
            )
        if kind is ArcType.TYPE_0:
            m = build_type0(args.n, alpha)
        elif kind is ArcType.TYPE_I:
            m = build_typeI(arc, alpha)
        elif kind is ArcType.TYPE_II:
            if args.partition is None:
                raise ValidationError(
                    f"type II needs --partition with {params.d} parts summing to {params.excess}"
                )
            m = build_typeII(arc, _parse_partition(args.partition), alpha)
        elif kind is ArcType.TYPE_III:
            if args.partition is None:
                raise ValidationError(
                    f"type III needs --partition with {params.d} parts summing to {params.excess}"
                )
            m = build_typeIII(arc, _parse_partition(args.partition), alpha)
        else:
            raise ValidationError(f"{arc} is not a supported arc type")
    except ValueError as exc:
        raise ValidationError(str(exc))
    poly = char_poly(m)
    if args.format == "csv":
        print(m.to_triplets())
        print("# digraph")
        print(m.digraph().to_text())
        print(f"# charpoly {format_poly(poly)}")
    else:
        _emit_json(
            {
                "format_version": FORMAT_VERSION,
                "command": "realize",
                "n": args.n,
                "q": arc.q,
                "s": arc.s,
                "payload": {
                    "type": kind.value,
                    "alpha": _fmt_frac(alpha),
                    "matrix": [
                        [i, j, _fmt_frac(w)] for (i, j), w in sorted(m.entries.items())
                    ],
                    "digraph": m.digraph().to_text().split("\n"),
                    "char_poly": format_poly(poly),
                },
            }
        )
    return EXIT_OK


def cmd_power_check(args) -> int:
    _check_n(args.n, 2000)
    try:
        arc = ArcId(args.n, args.q, args.s)
        params = arc_params(arc)
        partition = _parse_partition(args.partition)
        if args.c == 1:
            cls = PartitionClass(partition)
            doc_verdict, witness, witnesses = True, cls, (cls,)
        elif params.arc_type is ArcType.TYPE_II:
            dec = decide_power_TII(arc, args.c, partition)
            doc_verdict, witness, witnesses = dec.verdict, dec.witness, dec.witnesses
        elif params.arc_type is ArcType.TYPE_III:
            dec = decide_power_TIII(arc, args.c, partition)
            doc_verdict, witness, witnesses = dec.verdict, dec.witness, dec.witnesses
        else:
            raise ValidationError(f"{arc} has type {params.arc_type.value}; no partition to check")
    except ValueError as exc:
        raise ValidationError(str(exc))
    _emit_json(
        {
            "format_version": FORMAT_VERSION,
            "command": "power-check",
            "n": args.n,
            "q": arc.q,
            "s": arc.s,
            "c": args.c,
            "payload": {
                "verdict": doc_verdict,
                "witness": ",".join(map(str, witness.parts)) if witness else None,
                "witnesses": [",".join(map(str, w.parts)) for w in witnesses],
            },
        }
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_n(args.n, 2000)
    try:
        arc = ArcId(args.n, args.q, args.s)
    except ValueError as exc:
        raise ValidationError(str(exc))
    rows = []
    for rel in power_sources(arc):
        dev = power_deviation(rel.source, rel.c, args.samples)
        rows.append((_relation_doc(rel), dev))
    _emit_json(
        {
            "format_version": FORMAT_VERSION,
            "command": "verify",
            "n": args.n,
            "q": arc.q,
            "s": arc.s,
            "payload": {
                "relations": [
                    {**doc, "max_deviation": _fmt_float(dev)} for doc, dev in rows
                ]
            },
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="karp",
        description="Boundary arcs of the stochastic-matrix eigenvalue region: "
        "Farey pairs, boundary points, arc powers, realising matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("farey", help="Farey fractions and pairs of order n")
    p.add_argument("n", type=int)
    p.add_argument("--pairs", action="store_true", help="also list all Farey pairs")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_farey)

    p = sub.add_parser("boundary", help="boundary points rho(theta)")
    p.add_argument("n", type=int)
    p.add_argument("--theta", help="radians or an exact multiple of pi like 29/42pi")
    p.add_argument("--samples", type=int, help="points per arc, over all arcs")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("arc-powers", help="arc power relations of order n")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int, nargs="?")
    p.add_argument("s", type=int, nargs="?")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_arc_powers)

    p = sub.add_parser("realize", help="sparsest realising matrix of an arc")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--type", choices=("0", "I", "II", "III"))
    p.add_argument("--partition", help="comma-separated parts, e.g. 1,0")
    p.add_argument("--alpha", default="1/2", help="exact rational in (0,1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("power-check", help="is a realising matrix a c-th power?")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--partition", required=True, help="comma-separated parts")
    p.set_defaults(func=cmd_power_check)

    p = sub.add_parser("verify", help="numeric witness for the arc-power relations of an arc")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--samples", type=int, default=25)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
