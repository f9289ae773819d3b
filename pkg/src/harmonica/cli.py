"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 singular or degenerate input,
4 numerical failure, 5 resource guard.  The enumeration guard can be raised
with --force or the HARMONICA_MAX_ORDER environment variable.

Angles are accepted as decimal radians or as fractions of pi ("pi/6",
"2pi/3", "0.5pi").
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

from . import combinatorics as comb
from . import necklace as neck
from . import polynomials, render
from .curves import basketball_of, matching_of, necklace_of
from .realize import realize as realize_basketball
from .errors import (
    HarmonicaError,
    InvalidInput,
    DegeneratePolynomial,
    NecklaceDegenerate,
    NumericalError,
    ResourceLimit,
    SingularTheta,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SINGULAR = 3
EXIT_NUMERICAL = 4
EXIT_GUARD = 5

_PI_FORM = re.compile(
    r"^\s*(?P<num>\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d+)?))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Radians from a decimal string or a pi fraction like 'pi/6' or '2pi/3'."""
    match = _PI_FORM.match(text)
    if match:
        num = float(match.group("num")) if match.group("num") else 1.0
        den = float(match.group("den")) if match.group("den") else 1.0
        return num * math.pi / den
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot parse angle {text!r}") from exc


def _load_json(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def _emit(data, out: str | None, as_text: str | None = None) -> None:
    payload = as_text if as_text is not None else json.dumps(data, indent=2)
    if out:
        with open(out, "w") as handle:
            handle.write(payload)
            if not payload.endswith("\n"):
                handle.write("\n")
    else:
        print(payload)


def _load_polynomial(path: str) -> polynomials.MonicPolynomial:
    return polynomials.MonicPolynomial.from_json_dict(_load_json(path))


def _cmd_count(args) -> int:
    n = args.order
    if args.kind == "basketballs":
        closed = comb.count_basketballs(n)
        enumerated = None
        if args.force or n <= comb.max_enumeration_order():
            enumerated = sum(1 for _ in comb.enumerate_basketballs(n, force=args.force))
    elif args.kind == "rotation_classes":
        closed = comb.rotation_class_count(n, force=args.force)
        enumerated = closed
    else:
        closed = 2 * (2 * n) ** (n - 2) if n >= 2 else 0
        enumerated = None
        if args.force or n <= comb.max_enumeration_order():
            enumerated = sum(1 for _ in neck.enumerate_necklaces(n, force=args.force))
    report = {
        "order": n,
        "kind": args.kind,
        "closed_form": closed,
        "enumerated": enumerated,
        "agree": None if enumerated is None else enumerated == closed,
    }
    if args.format == "text":
        line = f"{args.kind} of order {n}: {closed}"
        if enumerated is not None:
            line += f", enumerated {enumerated}, {'agree' if report['agree'] else 'DISAGREE'}"
        _emit(report, args.out, as_text=line)
    else:
        _emit(report, args.out)
    return EXIT_OK if report["agree"] in (True, None) else EXIT_NUMERICAL


def _cmd_enumerate(args) -> int:
    if args.kind == "basketballs":
        items = [b.to_json_dict() for b in comb.enumerate_basketballs(args.order, force=args.force)]
    else:
        items = [nk.to_json_dict() for nk in neck.enumerate_necklaces(args.order, force=args.force)]
    _emit({"order": args.order, "kind": args.kind, "count": len(items), "items": items}, args.out)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    f = _load_polynomial(args.poly)
    alpha = parse_angle(args.alpha)
    beta = parse_angle(args.beta)
    basketball, (cert_a, cert_b) = basketball_of(f, alpha, beta)
    _emit(
        {
            "basketball": basketball.to_json_dict(),
            "certificates": [cert_a.to_json_dict(), cert_b.to_json_dict()],
        },
        args.out,
    )
    return EXIT_OK


def _cmd_realize(args) -> int:
    basketball = comb.Basketball.from_json_dict(_load_json(args.basketball))
    alpha = parse_angle(args.alpha)
    beta = parse_angle(args.beta)
    result = realize_basketball(basketball, alpha, beta)
    _emit(result.to_json_dict(), args.out)
    return EXIT_OK


def _cmd_necklace(args) -> int:
    f = _load_polynomial(args.poly)
    necklace = necklace_of(f)
    _emit(necklace.to_json_dict(), args.out)
    return EXIT_OK


def _verify_one(payload: str) -> tuple[bool, bool]:
    necklace = neck.Necklace.from_json_dict(json.loads(payload))
    return bool(neck.multiears(necklace)), neck.pairwise_basketball_check(necklace)


def _cmd_verify_necklaces(args) -> int:
    jobs = [json.dumps(nk.to_json_dict()) for nk in neck.enumerate_necklaces(args.order, force=args.force)]
    if args.threads > 1:
        from multiprocessing import Pool

        with Pool(args.threads) as pool:
            results = pool.map(_verify_one, jobs)
    else:
        results = [_verify_one(j) for j in jobs]
    count = len(results)
    missing_multiear = sum(1 for has_me, _ in results if not has_me)
    failed_pairwise = sum(1 for _, ok in results if not ok)
    expected = 2 * (2 * args.order) ** (args.order - 2)
    report = {
        "order": args.order,
        "count": count,
        "expected": expected,
        "count_agrees": count == expected,
        "necklaces_without_multiear": missing_multiear,
        "failed_pairwise_basketball": failed_pairwise,
    }
    ok = report["count_agrees"] and not missing_multiear and not failed_pairwise
    if args.format == "text":
        _emit(
            report,
            args.out,
            as_text=(
                f"order {args.order}: {count} necklaces (expected {expected}), "
                f"{missing_multiear} without multiear, "
                f"{failed_pairwise} failing pairwise basketball check"
            ),
        )
    else:
        _emit(report, args.out)
    return EXIT_OK if ok else EXIT_NUMERICAL


def _cmd_render(args) -> int:
    data = _load_json(args.input)
    spec = render.RenderSpec(
        kind=args.kind, size=args.size, grid=args.grid
    )
    if args.kind == "chord_diagram":
        if "even" in data:
            obj = comb.Bimatching.from_json_dict(data)
        elif "pairs" in data:
            obj = comb.Matching.from_json_dict(data)
        else:
            raise InvalidInput("chord_diagram needs a matching or bimatching JSON")
        svg = render.chord_diagram_svg(obj, spec)
    else:
        f = polynomials.MonicPolynomial.from_json_dict(data)
        thetas = [parse_angle(t) for t in (args.theta or ["0"])]
        svg = render.curve_plot_svg(f, thetas, spec)
    with open(args.out, "w") as handle:
        handle.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonica",
        description="Noncrossing matchings, basketballs and necklaces of complex polynomials",
    )
    parser.add_argument("--seed", type=int, default=0, help="root-finder perturbation seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="closed-form and enumerated counts")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--kind", choices=["basketballs", "rotation_classes", "necklaces"], required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="list basketballs or necklaces as JSON")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--kind", choices=["basketballs", "necklaces"], default="basketballs")
    p.add_argument("--force", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("analyze", help="extract the basketball of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("realize", help="construct a polynomial with a given basketball")
    p.add_argument("--basketball", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("necklace", help="extract the necklace of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_necklace)

    p = sub.add_parser("verify-necklaces", help="check multiear and pairwise basketball properties")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--force", action="store_true")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_necklaces)

    p = sub.add_parser("render", help="render a chord diagram or curve plot to SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=["chord_diagram", "curve_plot"], default="chord_diagram")
    p.add_argument("--theta", nargs="*", help="angles for curve plots")
    p.add_argument("--size", type=int, default=600)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    polynomials.set_default_seed(args.seed)
    try:
        return args.func(args)
    except (SingularTheta, DegeneratePolynomial, NecklaceDegenerate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidInput, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except HarmonicaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
