"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 domain error.  JSON output carries a
top-level ``"schema": 1`` field and writes every number as a string.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .alexander import (
    alexander_from_braid,
    alexander_from_diagram,
    lspace_coefficient_obstruction,
)
from .diagram import diagram_predicates
from .errors import DomainError, ParseError
from .formats import parse_braid, parse_pd, parse_tangle
from .inference import Periodic, classify, explain, parse_expr
from .periodic import construct, murasugi_check
from .slopes import SlopeSet, parse_slope

__all__ = ["main", "eval_slopes"]

SCHEMA = 1


def _emit(obj: dict, as_json: bool, text: str) -> str:
    if as_json:
        return json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=True)
    return text


# ---------------------------------------------------------------------------
# slope expressions

_OPENERS = "([{"
_CLOSERS = ")]}"


def _split_call(text: str):
    """``name(a, b)`` -> (name, [a, b]) splitting at top-level commas; else None."""
    s = text.strip()
    head, sep, rest = s.partition("(")
    name = head.strip().lower()
    if not sep or not name.isidentifier() or not s.endswith(")"):
        return None
    body = rest[:-1]
    args, depth, cur = [], 0, ""
    for ch in body:
        if ch in _OPENERS:
            depth += 1
        elif ch in _CLOSERS:
            depth -= 1
        if ch == "," and depth == 0:
            args.append(cur)
            cur = ""
        else:
            cur += ch
    args.append(cur)
    return name, [a.strip() for a in args]


def eval_slopes(text: str) -> SlopeSet:
    """Evaluate a slope-set expression such as ``scale((-8,4],3)``."""
    call = _split_call(text)
    if call is None:
        return SlopeSet.parse(text)
    name, args = call
    arity = {"scale": 2, "negate": 1, "complement": 1, "union": 2, "intersect": 2, "difference": 2}
    if name not in arity:
        raise ParseError(f"unknown slope function {name!r}")
    if len(args) != arity[name]:
        raise ParseError(f"{name} takes {arity[name]} argument(s), got {len(args)}")
    a = eval_slopes(args[0])
    if name == "scale":
        return a.scale(parse_slope(args[1]))
    if name == "negate":
        return a.negate()
    if name == "complement":
        return a.complement_in_Q()
    b = eval_slopes(args[1])
    return {"union": a.union, "intersect": a.intersect, "difference": a.difference}[name](b)


# ---------------------------------------------------------------------------
# subcommands


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _classify_one(text: str, strict: bool):
    return classify(parse_expr(text), strict=strict)


def cmd_classify(args) -> str:
    exprs = args.expr
    if len(exprs) == 1:
        results = [_classify_one(exprs[0], args.strict_lspace_test)]
    else:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda t: _classify_one(t, args.strict_lspace_test), exprs))
    if args.json:
        items = [{"expr": e, **c.to_json()} for e, c in zip(exprs, results)]
        obj = items[0] if len(items) == 1 else {"results": items}
        return _emit(obj, True, "")
    blocks = []
    for e, c in zip(exprs, results):
        body = explain(c) if not args.quiet else _summary(c)
        blocks.append(f"{e}\n{body}")
    return "\n\n".join(blocks)


def _summary(c) -> str:
    sl = c.sl_status if c.sl_status != "exact" else str(c.sl)
    exact = "" if c.slo_exact is None else f" (exact {c.slo_exact})"
    return f"S_LO >= {c.slo_lower}{exact}; S_L: {sl}"


def _alex_input(text: str):
    p = Path(text)
    if p.is_file():
        content = _read(text)
        if content.lstrip().startswith("BR"):
            return alexander_from_braid(parse_braid(content))
        return alexander_from_diagram(parse_pd(content))
    if text.lstrip().startswith("BR"):
        return alexander_from_braid(parse_braid(text))
    c = classify(parse_expr(text))
    if c.alexander is None:
        raise DomainError(f"no Alexander polynomial is available for {text!r}")
    return c.alexander


def cmd_alex(args) -> str:
    a = _alex_input(args.input)
    obst = lspace_coefficient_obstruction(a, strict=args.strict_lspace_test)
    obj = {
        "alexander": a.render(),
        "coefficients": [str(x) for x in a.coefficients],
        "lspace_obstruction": str(obst),
    }
    return _emit(obj, args.json, a.render())


def cmd_slopes(args) -> str:
    s = eval_slopes(args.expr)
    return _emit({"slopes": s.render(), "slopes_json": s.to_json()}, args.json, s.render())


def cmd_periodic(args) -> str:
    text = _read(args.file)
    tangle = parse_tangle(text)
    assertions = set()
    for a in args.assertions or []:
        assertions |= {x for x in a.replace("|", "+").split("+") if x}
    bad = assertions - {"fiber", "perp", "irreducible"}
    if bad:
        raise ParseError(f"unknown assertion(s) {sorted(bad)}")
    factor = parse_expr(args.factor) if args.factor else None
    link = parse_pd(_read(args.link)) if args.link else None
    e = Periodic(tangle, args.p, frozenset(assertions), factor, link, source=args.file,
                 link_source=args.link or "")
    res = construct(tangle, args.p)
    c = classify(e, strict=args.strict_lspace_test)
    fa = alexander_from_diagram(res.factor_diagram)
    cong = murasugi_check(c.alexander, fa, args.p, res.axis_linking)
    cong_s = "n/a" if cong is None else ("holds" if cong else "FAILS")
    info = {
        "p": str(args.p),
        "axis_linking": str(res.axis_linking),
        "crossings": str(res.diagram.crossing_count),
        "factor_alexander": fa.render(),
        "congruence": cong_s,
    }
    if args.json:
        return _emit({**info, **c.to_json()}, True, "")
    head = (
        f"period {args.p}, axis linking {res.axis_linking}, {res.diagram.crossing_count} "
        f"crossings, factor Delta = {fa}, periodicity congruence {cong_s}"
    )
    body = _summary(c) if args.quiet else explain(c)
    return f"{head}\n{body}"


def cmd_check(args) -> str:
    d = parse_pd(_read(args.file))
    pred = diagram_predicates(d)
    obj = {k: (str(v).lower() if isinstance(v, bool) else str(v)) for k, v in pred.as_dict().items()}
    obj["labels"] = list(d.labels)
    if d.is_knot():
        obj["alexander"] = alexander_from_diagram(d).render()
    lines = [f"{k}: {v}" for k, v in obj.items() if k != "labels"]
    lines.append(f"components: {', '.join(d.labels)}")
    return _emit(obj, args.json, "\n".join(lines))


def _flags(default) -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; the
    # subcommand copy must not overwrite a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=default, help="emit JSON")
    common.add_argument(
        "--strict-lspace-test", action="store_true", default=default,
        help="use the stronger alternating +-1 coefficient test",
    )
    common.add_argument("--quiet", action="store_true", default=default, help="short output")
    return common


def _parser() -> argparse.ArgumentParser:
    top = _flags(False)
    common = _flags(argparse.SUPPRESS)
    ap = argparse.ArgumentParser(
        prog="knotslopes", parents=[top],
        description="Alexander polynomials, slope sets and surgery-slope inference",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("alex", parents=[common], help="Alexander polynomial")
    p.add_argument("input", help="expression, 'BR n: ...' braid, or PD/braid file")
    p.set_defaults(func=cmd_alex)
    p = sub.add_parser("classify", parents=[common], help="classify knot expressions")
    p.add_argument("expr", nargs="+")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("slopes", parents=[common], help="evaluate a slope-set expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_slopes)
    p = sub.add_parser("periodic", parents=[common], help="periodic construction from a tangle")
    p.add_argument("file")
    p.add_argument("p", type=int)
    p.add_argument("--assert", dest="assertions", action="append",
                   help="fiber, perp, irreducible (joined with + or repeated)")
    p.add_argument("--factor", help="expression identifying the factor knot")
    p.add_argument("--link", help="PD file of factor + axis (axis labeled C)")
    p.set_defaults(func=cmd_periodic)
    p = sub.add_parser("check", parents=[common], help="diagram predicates")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        out = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
