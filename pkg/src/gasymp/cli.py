"""Command-line front end.

Subcommands: analyze, invariants, verify-paper, embed, cache-clear.
Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 resource cap reached (partial results flagged).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import cache as cache_mod
from . import suite as suite_mod
from .comparison import (build_embedding, verify_embedding_into_zero_level,
                         verify_equivariance_of_embedding, verify_liouville_pullback)
from .groebner import GroebnerCaps, NotCompleted
from .report import RunConfig, analyze, parse_level, render_structured, render_text
from .reps import RepSpecError, parse_rep

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gasymp",
        description="Moment maps, level-set geometry, stability, and invariant "
                    "rings for linear additive-group actions on cotangent spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_level: bool = True):
        if with_level:
            p.add_argument("rep", help="representation spec, e.g. sym1^2+sym3")
            p.add_argument("--level", default="0",
                           help="rational level or 'generic' (default 0)")
        p.add_argument("--deg-bound", type=int, default=6,
                       help="certification degree bound (default 6)")
        p.add_argument("--caps", default=None, metavar="DEGREE,PAIRS",
                       help="Groebner resource caps (default 40,200000)")
        p.add_argument("--naming", choices=("std", "cox"), default="std",
                       help="variable naming in printed polynomials")
        p.add_argument("--format", dest="fmt", choices=("text", "structured"),
                       default="text", help="output format")
        p.add_argument("--cache-dir", default=None,
                       help="disk cache directory (env GASYMP_CACHE_DIR; "
                            "'none' disables caching)")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker threads for independent verifications")

    p_analyze = sub.add_parser("analyze", help="full pipeline for one representation")
    common(p_analyze)

    p_inv = sub.add_parser("invariants", help="invariant-ring computation only")
    common(p_inv)

    p_verify = sub.add_parser("verify-paper", help="run the reproduction suite")
    p_verify.add_argument("--only", default=None,
                          help="run criteria matching this id or tag (e.g. 6.2)")
    p_verify.add_argument("--list", action="store_true", dest="list_only",
                          help="list criterion ids without running")
    common(p_verify, with_level=False)

    p_embed = sub.add_parser("embed", help="build and verify a level-set embedding")
    p_embed.add_argument("--kind", choices=("i", "j"), default="i")
    p_embed.add_argument("--param", default="1", help="nonzero rational parameter")
    common(p_embed)

    p_clear = sub.add_parser("cache-clear", help="remove cached results")
    p_clear.add_argument("--cache-dir", default=None)
    return parser


def _parse_caps(text: str | None) -> GroebnerCaps:
    if not text:
        return GroebnerCaps()
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("caps must be DEGREE,PAIRS")
    return GroebnerCaps(max_degree=int(parts[0]), max_pairs=int(parts[1]))


def _setup_cache(cache_dir: str | None) -> str | None:
    if cache_dir == "none":
        cache_mod.set_active_cache(None)
        return None
    directory = cache_dir or cache_mod.default_cache_dir()
    cache_mod.set_active_cache(cache_mod.DiskCache(directory))
    return directory


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        rep_spec=args.rep,
        level=parse_level(args.level),
        degree_bound=args.deg_bound,
        caps=_parse_caps(args.caps),
        naming=args.naming,
        cache_dir=args.cache_dir,
        output_format=args.fmt,
        jobs=args.jobs,
    )


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "structured":
        sys.stdout.write(render_structured(doc))
    else:
        sys.stdout.write(render_text(doc))


def _cmd_analyze(args) -> int:
    _setup_cache(args.cache_dir)
    config = _config_from_args(args)
    if config.naming == "cox":
        rep = parse_rep(config.rep_spec)
        rep.cox_renaming()  # raises for unsupported shapes
    try:
        doc = analyze(config)
    except NotCompleted as exc:
        sys.stderr.write(f"resource cap reached: {exc.message}\n")
        return EXIT_CAP
    _emit(doc, config.output_format)
    capped = False
    inv = doc.get("invariants", {})
    if isinstance(inv, dict):
        level_set = inv.get("level_set")
        if level_set and level_set.get("termination") == "CapReached":
            capped = True
    if capped:
        sys.stderr.write("note: invariant computation reached a resource cap; "
                         "the report is partial where flagged\n")
        return EXIT_CAP
    return EXIT_OK


def _cmd_invariants(args) -> int:
    _setup_cache(args.cache_dir)
    config = _config_from_args(args)
    try:
        doc = analyze(config)
    except NotCompleted as exc:
        sys.stderr.write(f"resource cap reached: {exc.message}\n")
        return EXIT_CAP
    slim = {
        "schema_version": doc["schema_version"],
        "config": doc["config"],
        "invariants": doc.get("invariants", doc.get("degenerate")),
        "timings": None,
    }
    if config.output_format == "structured":
        sys.stdout.write(render_structured(slim))
    else:
        inv = slim["invariants"]
        if "note" in inv or "trivial_action" in inv:
            sys.stdout.write(str(inv.get("note", "")) + "\n")
        else:
            ls = inv["level_set"]
            sys.stdout.write(f"[{ls['termination']}, certified to degree "
                             f"{ls['certified_degree']}]\n")
            for g in ls["generators"]:
                sys.stdout.write(f"  {g}\n")
            for comp in inv.get("normalization_components", []):
                sys.stdout.write(f"component ({', '.join(comp['component'])}) "
                                 f"[{comp['termination']}]:\n")
                for g in comp["generators"]:
                    sys.stdout.write(f"  {g}\n")
    return EXIT_OK


def _cmd_verify_paper(args) -> int:
    _setup_cache(args.cache_dir)
    if args.list_only:
        for cid, title, tags in suite_mod.list_criteria():
            sys.stdout.write(f"{cid:>3}  {title}  [{', '.join(tags)}]\n")
        return EXIT_OK
    results = suite_mod.run_criteria(only=args.only, jobs=args.jobs)
    if not results:
        sys.stderr.write(f"no criteria match {args.only!r}\n")
        return EXIT_USAGE
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        sys.stdout.write(f"{status} criterion {res.cid}: {res.title} ({res.elapsed:.2f}s)\n")
        if not res.passed:
            failed += 1
            for line in res.details:
                if line.startswith(("FAIL", "ERROR")):
                    sys.stdout.write(f"     {line}\n")
    sys.stdout.write(f"{len(results) - failed}/{len(results)} criteria passed\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _cmd_embed(args) -> int:
    _setup_cache(args.cache_dir)
    config = _config_from_args(args)
    rep = parse_rep(config.rep_spec)
    if rep.is_trivial:
        sys.stderr.write("trivial action: no embedding to build\n")
        return EXIT_USAGE
    param = Fraction(args.param)
    emb = build_embedding(rep, args.kind, param)
    checks = {
        "lands_in_zero_level": bool(verify_embedding_into_zero_level(rep, emb, config.caps)),
        "equivariant": bool(verify_equivariance_of_embedding(rep, emb, config.caps)),
        "liouville_pullback": bool(verify_liouville_pullback(rep, emb, config.caps)),
    }
    for name, comp in zip(emb.map.target.names, emb.map.components):
        sys.stdout.write(f"{name} <- {comp}\n")
    for key, ok in checks.items():
        sys.stdout.write(f"{key}: {ok}\n")
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def _cmd_cache_clear(args) -> int:
    directory = args.cache_dir or cache_mod.default_cache_dir()
    removed = cache_mod.DiskCache(directory).clear()
    sys.stdout.write(f"removed {removed} cached entries from {directory}\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "invariants":
            return _cmd_invariants(args)
        if args.command == "verify-paper":
            return _cmd_verify_paper(args)
        if args.command == "embed":
            return _cmd_embed(args)
        if args.command == "cache-clear":
            return _cmd_cache_clear(args)
    except (RepSpecError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
