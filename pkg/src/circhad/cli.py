"""Command-line front end.

Exit codes: 0 success, 1 an identity or construction contract failed,
2 invalid input, 3 search resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from .blocks import DegenerateRowError, UnclassifiableSequenceError
from .identities import CASES, LEMMA_CHECKERS, ConstructionError, ConstructionSpec, OrderError
from .identities import construct_case, predicted_paf4
from .report import analyze, lemma_status, lemma_to_dict, render_text
from .search import (
    DEFAULT_MAX_NODES,
    SearchConfig,
    SearchConfigError,
    SearchFailed,
    enumerate_rows,
    find_max_k,
    verify_conjecture_range,
)
from .sequence import PLUS_MINUS, SYMMETRIES, ZERO_ONE, RowParseError, SignRow, format_row, paf, parse_row

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3

log = logging.getLogger("circhad")


class InputError(Exception):
    pass


def _rows(args) -> list[tuple[str, SignRow]]:
    if args.file:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from exc
        lines = [(f"{args.file}:{i}", ln.strip()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    elif args.row is not None:
        lines = [("argument", args.row)]
    else:
        raise InputError("give a row or --file")
    out = []
    for where, ln in lines:
        try:
            out.append((where, parse_row(ln, args.alphabet)))
        except RowParseError as exc:
            raise InputError(f"{where}: {exc}") from exc
    return out


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_analyze(args) -> int:
    rows = _rows(args)
    batch = len(rows) > 1 or bool(args.file)
    for i, (_, row) in enumerate(rows):
        doc = analyze(row)
        if args.json:
            sys.stdout.write(doc.to_json(indent=None if batch else 2) + "\n")
        else:
            if i:
                sys.stdout.write("\n")
            sys.stdout.write(render_text(doc) + "\n")
    return EXIT_OK


def cmd_lemmas(args) -> int:
    ids = args.lemma or sorted(LEMMA_CHECKERS)
    code = EXIT_OK
    payload = []
    for where, row in _rows(args):
        reports = []
        for lid in ids:
            if lid == 5 and not args.lemma and row.n <= 4:
                log.warning("%s: lemma 5 skipped, shift 4 needs n > 4", where)
                continue
            try:
                rep = LEMMA_CHECKERS[lid](row)
            except (OrderError, DegenerateRowError) as exc:
                raise InputError(f"{where}: lemma {lid}: {exc}") from exc
            except UnclassifiableSequenceError as exc:
                log.error("%s: lemma 5: %s (row %s)", where, exc, format_row(row))
                code = EXIT_FALSIFIED
                continue
            if rep.falsified:
                code = EXIT_FALSIFIED
            reports.append(rep)
        if args.json:
            payload.append({"row": format_row(row), "reports": [lemma_to_dict(r) for r in reports]})
        else:
            for rep in reports:
                sys.stdout.write(f"{format_row(row)}\tlemma{rep.lemma_id}\t{lemma_status(lemma_to_dict(rep))}\n")
    if args.json:
        _emit_json(payload if len(payload) > 1 else payload[0])
    return code


def cmd_construct(args) -> int:
    spec = ConstructionSpec(args.case, args.m, args.k1)
    try:
        row = construct_case(spec)
        predicted = predicted_paf4(spec)
    except ConstructionError as exc:
        raise InputError(str(exc)) from exc
    measured = paf(row, 4)
    verdict = "MATCH" if measured == predicted else "MISMATCH"
    if args.json:
        _emit_json({
            "case": spec.case, "m": spec.m, "k1": spec.k1, "row": format_row(row),
            "predicted_paf4": predicted, "measured_paf4": measured, "verdict": verdict,
        })
    else:
        sys.stdout.write(f"{format_row(row)}\n{predicted}\t{measured}\t{verdict}\n")
    return EXIT_OK if verdict == "MATCH" else EXIT_FALSIFIED


def _config(args, n: int, K: int) -> SearchConfig:
    sym = frozenset(s.strip() for s in args.symmetry.split(",") if s.strip())
    alpha1 = None
    if getattr(args, "alpha1", None):
        try:
            alpha1 = frozenset(int(v) for v in args.alpha1.split(","))
        except ValueError as exc:
            raise InputError(f"--alpha1 takes comma-separated integers: {exc}") from exc
    return SearchConfig(
        n=n, K=K, symmetry=sym, alpha1=alpha1, jobs=args.jobs,
        limit=getattr(args, "limit", None), max_nodes=args.max_nodes,
    )


def _progress(msg: str) -> None:
    log.info(msg)


def cmd_search(args) -> int:
    K = args.k if args.k is not None else args.n - 1
    cfg = _config(args, args.n, K)
    try:
        cfg.validate()
    except SearchConfigError as exc:
        raise InputError(str(exc)) from exc
    try:
        res = enumerate_rows(cfg, _progress)
    except SearchFailed as exc:
        log.error("search FAILED: %s", exc)
        if args.json:
            _emit_json(exc.result.to_dict())
        else:
            _search_text(exc.result)
        return EXIT_RESOURCE
    if args.json:
        _emit_json(res.to_dict())
    else:
        _search_text(res)
    return EXIT_OK


def _search_text(res) -> None:
    out = sys.stdout
    for w in res.canonical_witnesses:
        out.write(f"{w}\n")
    out.write(f"# n={res.n} K={res.K} status={res.status}\n")
    out.write(f"# canonical={res.count_canonical} total={res.count_total} nodes={res.nodes_visited}\n")
    if res.census_summary:
        out.write("# alpha1 " + " ".join(f"{k}:{v}" for k, v in res.census_summary.items()) + "\n")


def cmd_verify_ryser(args) -> int:
    opts = {"jobs": args.jobs, "max_nodes": args.max_nodes}
    try:
        table = verify_conjecture_range(args.n_max, _progress, **opts)
    except SearchConfigError as exc:
        raise InputError(str(exc)) from exc
    except SearchFailed as exc:
        log.error("search FAILED: %s", exc)
        return EXIT_RESOURCE
    if args.json:
        _emit_json([{"n": v.n, "verdict": v.verdict, "witnesses": v.witnesses, "nodes_visited": v.nodes_visited} for v in table])
    else:
        for v in table:
            sys.stdout.write(f"{v.n}\t{v.verdict}\t{v.witnesses}\n")
    return EXIT_OK


def cmd_max_k(args) -> int:
    opts = {"jobs": args.jobs, "max_nodes": args.max_nodes}
    try:
        k, rows = find_max_k(args.n, **opts)
    except SearchConfigError as exc:
        raise InputError(str(exc)) from exc
    except SearchFailed as exc:
        log.error("search FAILED: %s", exc)
        return EXIT_RESOURCE
    if args.json:
        _emit_json({"n": args.n, "max_k": k, "witnesses": [str(r) for r in rows]})
    else:
        for r in rows:
            sys.stdout.write(f"{r}\n")
        sys.stdout.write(f"# n={args.n} max_k={k} witnesses={len(rows)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circhad", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def row_args(p):
        p.add_argument("row", nargs="?", help="row text, e.g. -+++")
        p.add_argument("--file", help="read rows from a file, one per line")
        p.add_argument("--alphabet", choices=(PLUS_MINUS, ZERO_ONE), default=PLUS_MINUS)
        p.add_argument("--json", action="store_true")

    def search_args(p):
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="full structural report for a row")
    row_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lemmas", help="check the block-count identities")
    row_args(p)
    p.add_argument("--lemma", type=int, action="append", choices=sorted(LEMMA_CHECKERS))
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("construct", help="build a proof-case row and compare paf(4)")
    p.add_argument("--case", required=True, choices=CASES)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k1", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exhaustive search for rows with paf(1..K) = 0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="shift budget K (default n-1)")
    p.add_argument("--symmetry", default=",".join(SYMMETRIES))
    p.add_argument("--alpha1", help="keep rows whose 1-alt count is in this list")
    p.add_argument("--limit", type=int)
    search_args(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-ryser", help="circulant Hadamard existence for orders 2..n-max")
    p.add_argument("--n-max", type=int, required=True)
    search_args(p)
    p.set_defaults(func=cmd_verify_ryser, symmetry=",".join(SYMMETRIES))

    p = sub.add_parser("max-k", help="largest orthogonal circulant row prefix at order n")
    p.add_argument("--n", type=int, required=True)
    search_args(p)
    p.set_defaults(func=cmd_max_k, symmetry=",".join(SYMMETRIES))
    return ap


def _configure_logging(verbose: bool) -> None:
    # a fresh handler per call so the current sys.stderr is used
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
