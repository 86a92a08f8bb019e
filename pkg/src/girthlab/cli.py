"""``girthlab`` command line front end.

Every subcommand prints JSON (``--format json``, the default) or an aligned
key/value table (``--format text``).  Exit status: 0 ok, 1 check failure
or failed operation, 2 usage/parse/validation error.  Errors carry a
machine-readable ``code``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .amalgam import AmalgamPresentation, build_amalgam_witness
from .checks import CHECKS, run_corpus
from .dsl import build_subgroup, parse_spec, parse_tree
from .errors import (
    DuplicateElement,
    GirthlabError,
    ParseError,
    UnknownSymbol,
    UsageError,
    ValidationError,
)
from .genset import KleinObstruction, find_avoiding_genset, find_nearly_avoiding_genset, profile
from .girth import EXACT, GirthQuery, certify_no_short_relation, girth_exact, law_upper_bound
from .hnn import (
    HnnPresentation,
    NotAscending,
    ascending_normal_form,
    build_witness_set_31,
    build_witness_set_32,
    build_witness_set_dihedral,
    classify,
)
from .oracles import GroupOracle
from .subgroups import SubgroupHandle

USAGE_ERRORS = (ParseError, ValidationError, UnknownSymbol, DuplicateElement, UsageError)
FAMILIES = ("31", "32", "dihedral", "amalgam")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- helpers --------------------------------------------------------------------------------


def read_spec(text: str) -> str:
    """``@path`` reads the spec from a file."""
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read spec file {text[1:]!r}: {exc.strerror}") from None
    return text


def split_words(text: str) -> list[str]:
    return [w.strip() for w in text.split(";") if w.strip()]


def target_of(text: str):
    obj = parse_spec(read_spec(text))
    if isinstance(obj, SubgroupHandle):
        raise UsageError("target must be a group, hnn or amalgam spec, not a subgroup")
    return obj


def kind_of(obj) -> str:
    if isinstance(obj, HnnPresentation):
        return "hnn"
    if isinstance(obj, AmalgamPresentation):
        return "amalgam"
    if isinstance(obj, SubgroupHandle):
        return "subgroup"
    return "group"


def fmt_el(T, x) -> str:
    return T.format(x) or "1"


# -- subcommands ----------------------------------------------------------------------------


def cmd_parse(args):
    obj = parse_spec(read_spec(args.spec))
    out = {"kind": kind_of(obj), "describe": obj.describe()}
    if isinstance(obj, HnnPresentation):
        out["classification"] = str(classify(obj))
    elif isinstance(obj, AmalgamPresentation):
        out["proper"] = obj.is_proper
        out["index"] = [obj.index(0), obj.index(1)]
    elif isinstance(obj, SubgroupHandle):
        out["proper"] = obj.is_proper()
        out["generators"] = [str(w) or "1" for w in obj.gens]
    elif isinstance(obj, GroupOracle):
        out["finite"] = obj.is_finite
        if obj.is_finite:
            out["order"] = obj.order
        out["generators"] = list(obj.alphabet.names)
    return 0, out


def cmd_reduce(args):
    T = target_of(args.spec)
    word = T.parse(args.word)
    x = T.element(word)
    out = {
        "kind": kind_of(T),
        "input": args.word,
        "normal_form": fmt_el(T, x),
        "is_identity": T.is_identity_element(x),
    }
    if isinstance(T, HnnPresentation):
        out["t_length"] = x.t_length
        try:
            p, g, q = ascending_normal_form(T, x)
            out["ascending_form"] = {"p": p, "g": fmt_el(T.base, g), "q": q}
        except NotAscending:
            pass
    elif isinstance(T, AmalgamPresentation):
        out["syllables"] = len(x)
    return 0, out


def cmd_girth(args):
    T = target_of(args.target)
    S = split_words(args.gens)
    if args.law:
        assign = split_words(args.assign) if args.assign else None
        res = law_upper_bound(T, S, args.law, assign)
        return (0 if getattr(res, "kind", None) else 1), res.to_dict()
    if args.certify is not None:
        cert = certify_no_short_relation(T, S, args.certify, args.cap)
        return (1 if cert.kind == EXACT else 0), cert.to_dict()
    cert = girth_exact(GirthQuery(T, S, args.cap))
    return 0, cert.to_dict()


def build_family(args, T):
    if args.family == "amalgam":
        if not isinstance(T, AmalgamPresentation):
            raise UsageError("family amalgam needs an amalgam target")
        if not args.S2:
            raise UsageError("family amalgam needs --S2")
        return build_amalgam_witness(T, split_words(args.S), split_words(args.S2), args.r, first=args.first)
    if not isinstance(T, HnnPresentation):
        raise UsageError(f"family {args.family} needs an hnn target")
    if args.family == "dihedral":
        return build_witness_set_dihedral(T, args.r)
    if not args.S:
        raise UsageError(f"family {args.family} needs --S")
    builder = build_witness_set_31 if args.family == "31" else build_witness_set_32
    return builder(T, split_words(args.S), args.r)


def cmd_witness(args):
    T = target_of(args.target)
    W = build_family(args, T)
    return 0, {"family": args.family, "r": args.r, "witness": [fmt_el(T, x) for x in W]}


def cmd_certify(args):
    T = target_of(args.target)
    if args.family:
        S = build_family(args, T)
    elif args.gens:
        S = split_words(args.gens)
    else:
        raise UsageError("certify needs --gens or --family")
    cert = certify_no_short_relation(T, S, args.r, args.cap)
    return (1 if cert.kind == EXACT else 0), cert.to_dict()


def cmd_genset(args):
    G = target_of(args.group)
    if not isinstance(G, GroupOracle):
        raise UsageError("genset needs a base group spec")
    A = build_subgroup(parse_tree(read_spec(args.A)), G)
    B = build_subgroup(parse_tree(read_spec(args.B)), G)
    if args.mode == "avoid":
        res = find_avoiding_genset(G, A, B)
        if isinstance(res, KleinObstruction):
            return 1, {"status": "klein_obstruction", "S": None, "profile": None, "detail": str(res)}
        status = "avoiding"
    else:
        res = find_nearly_avoiding_genset(G, A, B)
        status = "nearly_avoiding"
    prof = profile(G, A, B, res)
    return 0, {"status": status, "S": [fmt_el(G, x) for x in res], "profile": prof.as_dict()}


def cmd_corpus(args):
    only = None
    if args.only:
        only = [s.strip() for item in args.only for s in item.split(",") if s.strip()]
    try:
        m = run_corpus(only, args.path)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return (0 if m.passed else 1), m.to_dict()


# -- output ---------------------------------------------------------------------------------


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    elif isinstance(obj, list):
        yield prefix, "; ".join("null" if v is None else str(v) for v in obj)
    else:
        yield prefix, "null" if obj is None else str(obj)


def render(out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out, indent=2, sort_keys=True)
    if out.get("command") == "corpus":
        return _render_corpus(out)
    rows = list(_flatten(out))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _render_corpus(m: dict) -> str:
    lines = []
    for r in m["results"]:
        mark = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{mark}  {r['criterion']:>2}  {r['name']:<20} {r['elapsed']:>7.3f}s  {r['detail']}")
    total = sum(r["passed"] for r in m["results"])
    lines.append(f"{total}/{len(m['results'])} checks passed in {m['elapsed']:.3f}s (corpus {m['versions']['corpus_sha256'][:12]})")
    return "\n".join(lines)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="girthlab", description="Girth certificates for HNN extensions and amalgams.")
    ap.add_argument("--version", action="version", version=f"girthlab {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="parse a spec and echo it")
    p.add_argument("spec", help="spec text or @file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reduce", parents=[common], help="normal form of a word")
    p.add_argument("--spec", required=True)
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("girth", parents=[common], help="exact girth search or law bound")
    p.add_argument("--target", required=True)
    p.add_argument("--gens", required=True, help='"w1; w2; ..."')
    p.add_argument("--cap", type=int)
    p.add_argument("--certify", type=int, metavar="R", help="certify no relation shorter than R (up to --cap)")
    p.add_argument("--law", help="abelian, metabelian, nilpotent2, burnsideN or a word in x,y,z,w")
    p.add_argument("--assign", help='words over s1, s2, ... for the law variables, "; "-separated')
    p.set_defaults(func=cmd_girth)

    fam = _Parser(add_help=False)
    fam.add_argument("--target", required=True)
    fam.add_argument("--S", help='base generating set "w1; w2"')
    fam.add_argument("--S2", help="second factor generating set (amalgam)")
    fam.add_argument("--r", type=int, required=True)
    fam.add_argument("--first", choices=("left", "right"), default="left")

    p = sub.add_parser("witness", parents=[common, fam], help="build a witness generating set")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("certify", parents=[common, fam], help="certify no short relation")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--gens")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("genset", parents=[common], help="avoiding / nearly avoiding generating set")
    p.add_argument("--group", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--mode", choices=("avoid", "nearly"), default="avoid")
    p.set_defaults(func=cmd_genset)

    tags = sorted({c.tag for c in CHECKS})
    p = sub.add_parser("corpus", parents=[common], help="run the bundled check suite")
    p.add_argument("--only", action="append", help=f"tag, check name or criterion number ({', '.join(tags)})")
    p.add_argument("--path", help="corpus directory (default: GIRTHLAB_CORPUS or bundled)")
    p.set_defaults(func=cmd_corpus)
    return ap


def _error_payload(exc: GirthlabError) -> dict:
    err = {"code": exc.code, "message": str(exc)}
    if isinstance(exc, ParseError):
        err.update(line=exc.line, column=exc.column, expected=exc.expected)
    return {"error": err}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt = "text" if "--format=text" in argv or ("--format" in argv and "text" in argv) else "json"
    try:
        args = make_parser().parse_args(argv)
        fmt = args.format
        status, out = args.func(args)
    except GirthlabError as exc:
        payload = _error_payload(exc)
        if fmt == "json":
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, USAGE_ERRORS) else 1
    print(render(out, fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
