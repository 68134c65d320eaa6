"""Command-line front end.

    threewebs normalize --f "x + y + x*y" --order 8
    threewebs classify --g "x^2 - y^2" --order 6 --json
    threewebs circular solve --V "y + x^2" --mu "x" --model order3 --order 6
    threewebs circular lemma1 --P "x^2 + x*y + y^2" --model order3
    threewebs circular example-thm3 --order 10 --json
    threewebs curvature --f "x + y + x^2*y"
    threewebs verify --f "x + y" --phi=-x-y,x

Expression arguments starting with "@" are read from that file.
Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4 candidate map
is not a symmetry (verify), 1 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .circular import LinearModel, lemma1_synthesize, solve_circular, theorem3_example
from .curvature import blaschke_curvature
from .errors import ParseError, PreconditionError, WebError
from .expr import format_series, parse_series1, parse_series2
from .normalform import Web, check_identities, normalize
from .series import PlaneMap, Series2
from .symmetry import FOLIATIONS, classify_mirror, classify_simple, foliation_permutation, symmetry_witnesses

DEFAULT_ORDER = 10
DEFAULT_MAX_ORDER = 40

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NOT_SYMMETRY = 0, 1, 2, 3, 4


# -- serialization -----------------------------------------------------------


def rat_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def series_json(s, var="t"):
    if isinstance(s, Series2):
        coeffs = [{"r": r, "s": q, "value": rat_text(c)} for (r, q), c in s.items()]
    else:
        coeffs = [{"d": d, "value": rat_text(c)} for d, c in s.items()]
    return {"order": s.order, "coeffs": coeffs, "text": format_series(s, var)}


def permutation_json(p):
    if p.images is None:
        return None
    return {k.value: p.images[k].value for k in FOLIATIONS}


def map_json(m: PlaneMap):
    return {"first": series_json(m.first), "second": series_json(m.second)}


def witnesses_json(witnesses):
    return [{"kind": w.kind, "map": map_json(w.map), "permutation": permutation_json(w.permutation)}
            for w in witnesses]


def simple_json(c):
    return {"tag": c.tag.value, "order": c.order}


def circular_json(res):
    rep = res.report
    out = {
        "model": res.model.value,
        "order": res.order,
        "V": series_json(res.V),
        "mu": series_json(res.mu, "x"),
        "A": series_json(res.A),
        "B": series_json(res.B),
        "U": series_json(res.U),
        "F": series_json(res.F),
        "G": series_json(res.G, "x"),
        "f": series_json(res.f),
        "g": series_json(res.g),
    }
    if res.theta is not None:
        out["theta"] = series_json(res.theta)
    out["report"] = {
        "residuals": {k: series_json(v) for k, v in rep.residuals.items()},
        "period": res.model.period,
        "period_ok": rep.period_ok,
        "permutation": permutation_json(rep.permutation),
        "flatness": simple_json(rep.flatness),
        "checks": dict(rep.checks),
        "ok": rep.ok,
    }
    return out


# -- text output -------------------------------------------------------------


def _text_lines(obj, indent=""):
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict) and "text" in value and "order" in value:
            lines.append(f"{indent}{key} = {value['text']}   [order {value['order']}]")
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}:")
            for i, item in enumerate(value):
                lines.append(f"{indent}  [{i}]")
                lines.extend(_text_lines(item, indent + "    "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def emit(obj, as_json, stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps(obj, indent=2) + "\n")
    else:
        stream.write("\n".join(_text_lines(obj)) + "\n")


# -- argument handling -------------------------------------------------------


def read_arg(text):
    if text.startswith("@"):
        return Path(text[1:]).read_text().strip()
    return text


def _order(args):
    if args.order < 1:
        raise PreconditionError("--order must be positive")
    if args.order > args.max_order:
        raise PreconditionError(f"--order {args.order} exceeds --max-order {args.max_order}")
    return args.order


def cmd_normalize(args):
    N = _order(args)
    f = parse_series2(read_arg(args.f), N)
    w = Web(f)
    nf = normalize(w)
    mirror = classify_mirror(nf.g)
    out = {
        "X": series_json(nf.X),
        "Y": series_json(nf.Y),
        "Z": series_json(nf.Z),
        "g": series_json(nf.g),
        "f_normalized": series_json(nf.f),
        "identities_hold": check_identities(nf.f),
        "simple": simple_json(classify_simple(nf.g)),
        "mirror": {"swap_mirror": mirror.swap_mirror, "antiswap_mirror": mirror.antiswap_mirror},
    }
    if args.witnesses:
        out["witnesses"] = witnesses_json(symmetry_witnesses(nf, original_coordinates=True, original_web=w))
    return out, EXIT_OK


def cmd_classify(args):
    N = _order(args)
    g = parse_series2(read_arg(args.g), N)
    nf = normalize(Web.from_g(g))
    mirror = classify_mirror(g)
    return {
        "simple": simple_json(classify_simple(g)),
        "mirror": {"swap_mirror": mirror.swap_mirror, "antiswap_mirror": mirror.antiswap_mirror},
        "witnesses": witnesses_json(symmetry_witnesses(nf)),
    }, EXIT_OK


def _model(args):
    return LinearModel(args.model)


def cmd_circular_solve(args):
    N = _order(args)
    V = parse_series2(read_arg(args.V), N)
    mu = parse_series1(read_arg(args.mu), N)
    return circular_json(solve_circular(V, mu, _model(args), N)), EXIT_OK


def cmd_circular_lemma1(args):
    N = _order(args)
    P = parse_series2(read_arg(args.P), N)
    return circular_json(lemma1_synthesize(P, _model(args), N)), EXIT_OK


def cmd_circular_thm3(args):
    N = _order(args)
    if N < 8:
        raise PreconditionError("example-thm3 needs --order >= 8")
    return circular_json(theorem3_example(N)), EXIT_OK


def cmd_curvature(args):
    N = _order(args)
    w = Web(parse_series2(read_arg(args.f), N))
    K = blaschke_curvature(w)
    return {"K": series_json(K), "flat_to_order": K.is_zero()}, EXIT_OK


def cmd_verify(args):
    N = _order(args)
    w = Web(parse_series2(read_arg(args.f), N))
    parts = read_arg(args.phi).split(",")
    if len(parts) != 2:
        raise ParseError("--phi needs two comma-separated components", 0, {","})
    m = PlaneMap(parse_series2(parts[0], N), parse_series2(parts[1], N))
    perm = foliation_permutation(m, w)
    if not perm.present:
        return {"symmetry": False, "permutation": None, "kind": "not a symmetry"}, EXIT_NOT_SYMMETRY
    kind = {3: "simple", 1: "mirror", 0: "circular"}[len(perm.fixed())]
    return {"symmetry": True, "permutation": permutation_json(perm), "kind": kind}, EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order N (default 10)")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="hard cap on --order")
    common.add_argument("--json", action="store_true", help="structured output, fractions as strings")

    parser = argparse.ArgumentParser(prog="threewebs", description="Exact computations on planar 3-webs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="normal form x+y+xy(x-y)g of the web (x, y, f)")
    p.add_argument("--f", required=True)
    p.add_argument("--witnesses", action="store_true",
                   help="also emit symmetry witnesses conjugated back to the input coordinates")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("classify", parents=[common], help="simple/mirror symmetries from a residual g")
    p.add_argument("--g", required=True)
    p.set_defaults(func=cmd_classify)

    circ = sub.add_parser("circular", help="webs with a circular symmetry")
    csub = circ.add_subparsers(dest="circular_command", required=True)
    models = [m.value for m in LinearModel]
    p = csub.add_parser("solve", parents=[common], help="solve for psi, phi from (V, mu)")
    p.add_argument("--V", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--model", choices=models, default="order3")
    p.set_defaults(func=cmd_circular_solve)
    p = csub.add_parser("lemma1", parents=[common], help="closed-form synthesis from V = y + P")
    p.add_argument("--P", required=True)
    p.add_argument("--model", choices=models, default="order3")
    p.set_defaults(func=cmd_circular_lemma1)
    p = csub.add_parser("example-thm3", parents=[common], help="the non-flat example with circular symmetry")
    p.set_defaults(func=cmd_circular_thm3)

    p = sub.add_parser("curvature", parents=[common], help="Blaschke curvature of (x, y, f)")
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("verify", parents=[common], help="foliation permutation of a candidate map")
    p.add_argument("--f", required=True)
    p.add_argument("--phi", required=True, help="two components, comma separated")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        result, code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except WebError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    emit(result, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
