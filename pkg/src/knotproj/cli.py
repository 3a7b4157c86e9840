"""Command-line front end: ``knotproj <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import families
from .core import (
    ParseError,
    NotRealizable,
    ProjectionMap,
    format_code,
    from_canonical,
    map_from_record,
    parse_word,
    realize_gauss_code,
)
from .invariants import invariant_report, report_record
from .moves import MoveError, apply_move, enumerate_moves, move_token, moveset, parse_token
from .search import (
    Equivalent,
    ProvablyDistinct,
    ReductionCertificate,
    SearchConfig,
    decide,
    reduce_to_trivial,
    verify_certificate,
)

EXIT_OK, EXIT_PARSE, EXIT_NOT_REALIZABLE, EXIT_EXHAUSTED, EXIT_VERIFY = 0, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


_FAMILY = re.compile(r"^(p|q|sum|kinks)\((.*)\)$")


def named_curve(name: str) -> ProjectionMap:
    """Catalog names plus ``p(a,b)``, ``q(a,b,c)``, ``kinks(n)`` and ``sum(base,i)``."""
    name = name.strip()
    if name in families.CATALOG_NAMES:
        return families.catalog(name)
    match = _FAMILY.match(name)
    if not match:
        raise ParseError(f"unknown curve name {name!r}")
    kind, args = match.groups()
    try:
        if kind == "sum":
            base, i = args.rsplit(",", 1)
            return families.sum_power(named_curve(base), int(i))
        nums = [int(x) for x in args.split(",")]
        if kind == "p":
            return families.rational(*nums)
        if kind == "q":
            return families.pretzel(*nums)
        return families.kinks(*nums)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad family parameters in {name!r}: {exc}") from None


def curve_from_text(text: str) -> ProjectionMap:
    """A curve name or a (signed or unsigned) Gauss word."""
    text = text.strip()
    if text and (text in families.CATALOG_NAMES or _FAMILY.match(text)):
        return named_curve(text)
    return realize_gauss_code(parse_word(text))


def _load_file(path: str) -> ProjectionMap:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            rec = json.loads(stripped)
        except json.JSONDecodeError:
            rec = json.loads(stripped.splitlines()[0])
        if "edge_pairing" in rec:
            return map_from_record(rec)
        if "gauss" in rec:
            return curve_from_text(rec["gauss"])
        if "code" in rec:
            return curve_from_text(rec["code"])
        raise ParseError("unrecognized record")
    return curve_from_text(stripped.splitlines()[0] if stripped else "")


def _input_map(args) -> ProjectionMap:
    if args.gauss is not None:
        g = parse_word(args.gauss)
        if g.signs is not None and g.word:
            raise ParseError("--gauss takes an unsigned word; use --signed")
        m = realize_gauss_code(g)
    elif args.signed is not None:
        g = parse_word(args.signed)
        if g.word and g.signs is None:
            raise ParseError("--signed needs a sign on every label")
        m = realize_gauss_code(g)
    elif args.file is not None:
        m = _load_file(args.file)
    else:
        m = named_curve(args.name)
    # work on the canonical embedding so move tokens are stable across calls
    return from_canonical(m.canonical)


def _add_input(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--gauss", help="unsigned Gauss word, e.g. '1 2 3 1 2 3'")
    g.add_argument("--signed", help="signed Gauss word, e.g. '1+ 2- 3+ 1+ 2- 3+'")
    g.add_argument("--file", help="map record, report record or word file")
    g.add_argument("--name", help="catalog or family name, e.g. 7_4 or p(4,4)")


def _parse_cap(text: str | None, config: SearchConfig) -> None:
    if text is None:
        return
    if text.startswith("+"):
        config.cap_slack = int(text[1:])
    else:
        config.crossing_cap = int(text)


def _add_search(p):
    p.add_argument("--moves", default="strong123", help="preset (all, strong123, weak123, sw, ws) or csv of 1,s2,w2,s3,w3")
    p.add_argument("--cap", help="crossing cap: absolute n or +k over the start")
    p.add_argument("--budget", type=int, default=1_000_000, help="max distinct states")
    p.add_argument("--depth", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="N > 1 may change which certificate is found")
    p.add_argument("--out", help="write the certificate here")


def _config(args) -> SearchConfig:
    cfg = SearchConfig(node_budget=args.budget, depth_cap=args.depth, seed=args.seed, workers=args.workers)
    _parse_cap(args.cap, cfg)
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knotproj", description="Reidemeister calculus on spherical curves.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="print c, s, g, tr, W")
    _add_input(p)

    p = sub.add_parser("moves", help="list classified moves")
    _add_input(p)
    p.add_argument("--moves", default="all")

    p = sub.add_parser("apply", help="apply one move and print the resulting code")
    _add_input(p)
    p.add_argument("--move", required=True, help="move token as printed by 'moves'")

    p = sub.add_parser("reduce", help="search for a certificate to O")
    _add_input(p)
    _add_search(p)

    p = sub.add_parser("decide", help="equivalence verdict for two curves")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _add_search(p)

    p = sub.add_parser("verify", help="replay a certificate file")
    p.add_argument("--file", required=True)
    p.add_argument("--moves", default=None)

    p = sub.add_parser("generate", help="build a catalog or family curve")
    p.add_argument("--name", required=True)

    p = sub.add_parser("enumerate", help="all spherical curves up to a crossing bound")
    p.add_argument("--max", type=int, required=True, dest="max_c")
    return parser


def _emit(args, record: dict, human: str) -> None:
    print(json.dumps(record) if args.json else human)


def _cmd_invariants(args):
    m = _input_map(args)
    rep = invariant_report(m)
    _emit(args, report_record(m), str(rep))
    return EXIT_OK


def _cmd_moves(args):
    m = _input_map(args)
    mvs = enumerate_moves(m, moveset(args.moves))
    rows = []
    for mv in mvs:
        rows.append({"token": move_token(m, mv), "kind": mv.kind.value, "delta_c": mv.kind.delta_c})
    if args.json:
        for r in rows:
            print(json.dumps(r))
    else:
        width = max((len(r["token"]) for r in rows), default=5)
        print(f"{'token':<{width}}  kind        dc")
        for r in rows:
            print(f"{r['token']:<{width}}  {r['kind']:<10}  {r['delta_c']:+d}")
    return EXIT_OK


def _cmd_apply(args):
    m = _input_map(args)
    mv = parse_token(m, args.move)
    out = apply_move(m, mv)
    code = format_code(out.canonical)
    _emit(args, {"code": code, "gauss": code, "c": out.crossings}, code)
    return EXIT_OK


def _write_cert(args, cert: ReductionCertificate):
    if args.out:
        Path(args.out).write_text(cert.to_json() + "\n")


def _cmd_reduce(args):
    m = _input_map(args)
    result = reduce_to_trivial(m, args.moves, _config(args))
    if isinstance(result, ReductionCertificate):
        _write_cert(args, result)
        if args.json:
            print(result.to_json().replace("\n", ""))
        else:
            print(f"REDUCED in {len(result)} moves")
            print(" ".join(result.moves))
        return EXIT_OK
    _emit(args, {"verdict": "EXHAUSTED", "nodes": result.nodes, "frontier": result.frontier, "reason": result.reason},
          f"EXHAUSTED nodes={result.nodes} frontier={result.frontier} ({result.reason})")
    return EXIT_EXHAUSTED


def _cmd_decide(args):
    a = curve_from_text(args.a)
    b = curve_from_text(args.b)
    result = decide(a, b, args.moves, _config(args))
    if isinstance(result, ProvablyDistinct):
        _emit(args, {"verdict": "PROVABLY_DISTINCT", "w_a": result.w_a, "w_b": result.w_b}, str(result))
        return EXIT_OK
    if isinstance(result, Equivalent):
        cert = result.certificate
        _write_cert(args, cert)
        _emit(args, {"verdict": "EQUIVALENT", "certificate": json.loads(cert.to_json())},
              f"EQUIVALENT in {len(cert)} moves\n{' '.join(cert.moves)}")
        return EXIT_OK
    _emit(args, {"verdict": "UNKNOWN", "nodes": result.nodes, "reason": result.reason},
          f"UNKNOWN nodes={result.nodes} ({result.reason})")
    return EXIT_EXHAUSTED


def _cmd_verify(args):
    try:
        cert = ReductionCertificate.from_json(Path(args.file).read_text())
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad certificate: {exc}") from None
    res = verify_certificate(cert, args.moves)
    _emit(args, {"ok": res.ok, "failed_step": res.failed_step, "message": res.message},
          "VALID" if res.ok else f"INVALID at step {res.failed_step}: {res.message}")
    return EXIT_OK if res.ok else EXIT_VERIFY


def _cmd_generate(args):
    m = named_curve(args.name)
    rec = report_record(m, args.name)
    code = format_code(m.canonical)
    rec["code"] = code
    _emit(args, rec, f"{args.name}: {code}\n{invariant_report(m)}")
    return EXIT_OK


def _cmd_enumerate(args):
    try:
        curves = families.enumerate_projections(args.max_c)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    for m in curves:
        rec = report_record(m)
        if args.json:
            print(json.dumps(rec))
        else:
            print(f"{rec['gauss']:<40} c={rec['c']} s={rec['s']} g={rec['g']} tr={rec['tr']} W={rec['w']}")
    return EXIT_OK


COMMANDS = {
    "invariants": _cmd_invariants,
    "moves": _cmd_moves,
    "apply": _cmd_apply,
    "reduce": _cmd_reduce,
    "decide": _cmd_decide,
    "verify": _cmd_verify,
    "generate": _cmd_generate,
    "enumerate": _cmd_enumerate,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except NotRealizable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except (ParseError, MoveError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run())

