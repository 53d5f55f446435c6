"""Command-line interface.

Subcommands: bracket, enumerate, draw-search, r1, bounds, solve, verify,
serve.  ``--json`` switches to machine output; results worth keeping are
written through the JSON cache file (``--cache``, default
./triramsey-cache.json).  Exit codes: 0 success, 1 computation failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from . import search, solver, tricore, verification
from .cache import DEFAULT_CACHE_PATH, R1Entry, load_cache
from .engine import GameConfig, Variant, new_game, render_board
from .search import coloring_to_hex


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--cache", default=DEFAULT_CACHE_PATH, metavar="PATH",
                        help="result cache file (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triramsey", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="bracket coefficient of (n, k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--log2", action="store_true", help="base-2 log via the streaming DP")
    _common(p)

    p = sub.add_parser("enumerate", help="all k-level sub-triangles of an m-level board")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    _common(p)

    p = sub.add_parser("draw-search", help="search a board's colorings for a draw")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--strategy", choices=["exhaustive", "backtracking", "randomized"],
                   default="exhaustive")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _common(p)

    p = sub.add_parser("r1", help="triangular Ramsey number (or verified lower bound)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _common(p)

    p = sub.add_parser("bounds", help="lower/upper bounds; --table for the summary table")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--table", action="store_true")
    p.add_argument("--skip-slow", action="store_true",
                   help="omit the (5,5,3) row (needs the 10^8-step sweep)")
    p.add_argument("--exponent", choices=["statement", "proof"], default="statement")
    _common(p)

    p = sub.add_parser("solve", help="optimal-play value of a fresh board")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--variant", choices=["standard", "directional"], default="standard")
    p.add_argument("--budget", type=int, default=None)
    _common(p)

    p = sub.add_parser("verify", help="run every built-in claim check")
    p.add_argument("--fast", action="store_true", help="skip the heavyweight sweeps")
    _common(p)

    p = sub.add_parser("serve", help="run the HTTP/JSON service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--budget", type=int, default=500_000,
                   help="solver node budget for hints (default %(default)s)")
    _common(p)

    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _cmd_bracket(args) -> int:
    if args.log2:
        value = tricore.bracket_log2(args.n, args.k)
        _emit(args, {"n": args.n, "k": args.k, "log2": value}, f"{value:.10g}")
        return 0
    cache = load_cache(args.cache)
    value = cache.get_bracket(args.n, args.k)
    if value is None:
        value = tricore.bracket(args.n, args.k)
        cache.put_bracket(args.n, args.k, value)
        cache.save()
    _emit(args, {"n": args.n, "k": args.k, "value": str(value)}, str(value))
    return 0


def _cmd_enumerate(args) -> int:
    subs = tricore.enumerate_subtriangles(tricore.full_triangle(args.m), args.k)
    payload = {"m": args.m, "k": args.k, "count": len(subs),
               "subtriangles": [list(s.elements) for s in subs]}
    text = "\n".join(",".join(map(str, s.elements)) for s in subs)
    _emit(args, payload, f"{text}\ncount: {len(subs)}" if subs else "count: 0")
    return 0


def _cmd_draw_search(args) -> int:
    config = GameConfig(args.m, args.p, args.q, args.k)
    outcome = search.find_draw(config, strategy=args.strategy,
                               budget=args.budget, seed=args.seed)
    payload = {
        "config": {"m": args.m, "p": args.p, "q": args.q, "k": args.k},
        "result": outcome.result,
        "nodesExplored": outcome.nodes_explored,
        "elapsed": round(outcome.elapsed, 4),
    }
    if outcome.found:
        payload["coloring"] = coloring_to_hex(outcome.coloring, config.cell_count())
        cache = load_cache(args.cache)
        cache.add_witness(config, outcome.coloring)
        cache.save()
        _emit(args, payload, f"draw found: coloring {payload['coloring']} "
                             f"({outcome.nodes_explored} nodes)")
    else:
        _emit(args, payload, f"{outcome.result} ({outcome.nodes_explored} nodes)")
    return 0


def _cmd_r1(args) -> int:
    cache = load_cache(args.cache)
    cached = cache.get_r1(args.p, args.q, args.k)
    if cached is not None and cached.status == "exact" and args.m_max is None:
        _emit(args, {"p": args.p, "q": args.q, "k": args.k,
                     "status": cached.status, "value": cached.value},
              str(cached.value))
        return 0
    result = search.compute_r1(args.p, args.q, args.k, m_max=args.m_max,
                               budget=args.budget, seed=args.seed)
    entry = R1Entry(p=args.p, q=args.q, k=args.k, status=result.status, value=result.value)
    if result.draws:
        best_m = max(result.draws)
        entry.witness_m = best_m
        entry.witness_coloring = result.draws[best_m]
    cache.put_r1(entry)
    cache.save()
    payload = {"p": args.p, "q": args.q, "k": args.k,
               "status": result.status, "value": result.value}
    if result.inconclusive_at is not None:
        payload["inconclusiveAt"] = result.inconclusive_at
    text = str(result.value) if result.exact else \
        f">= {result.value} (lower bound; inconclusive at m={result.inconclusive_at})"
    _emit(args, payload, text)
    return 0


def _row_payload(row: bounds_mod.BoundsRow) -> dict:
    return {
        "p": row.p,
        "q": row.q,
        "k": row.k,
        "value": row.value,
        "lower": row.lower,
        "lowerSource": row.lower_source,
        "upperExpr": row.upper_expr,
        "upperInterval": None if row.upper_interval is None
        else row.upper_interval.as_json(),
        "upperSource": row.upper_source,
    }


def _row_text(row: bounds_mod.BoundsRow) -> str:
    lower = f"{row.lower:.3g}" if isinstance(row.lower, float) else str(row.lower)
    value = str(row.value) if row.value is not None else "?"
    return (f"{row.p:>3} {row.q:>3} {row.k:>3} | {lower:>10} | {value:>5} | "
            f"{row.upper_expr or '-':32} {row.upper_interval.render() if row.upper_interval else ''}")


def _cmd_bounds(args) -> int:
    header = "  p   q   k |      lower | value | upper"
    if args.table or args.p is None:
        rows = bounds_mod.bounds_table(include_slow=not args.skip_slow,
                                       exponent=args.exponent)
        if args.json:
            print(json.dumps([_row_payload(r) for r in rows]))
        else:
            print(header)
            for row in rows:
                print(_row_text(row))
        return 0
    if args.q is None or args.k is None:
        print("bounds: need all of --p --q --k (or --table)", file=sys.stderr)
        return 2
    row = bounds_mod.bounds_row(args.p, args.q, args.k, exponent=args.exponent)
    if args.json:
        print(json.dumps(_row_payload(row)))
    else:
        print(header)
        print(_row_text(row))
    return 0


def _cmd_solve(args) -> int:
    config = GameConfig(args.m, args.p, args.q, args.k, Variant(args.variant))
    cache = load_cache(args.cache)
    cached = cache.get_solved(config)
    if cached is not None:
        _emit(args, {"config": args.variant, "outcome": cached, "cached": True}, cached)
        return 0
    state = new_game(config)
    value = solver.solve(state, budget=args.budget)
    cache.put_solved(config, value.outcome)
    cache.save()
    move = "pass" if value.move is None else f"cell {value.move}"
    payload = {
        "config": {"m": args.m, "p": args.p, "q": args.q, "k": args.k,
                   "variant": args.variant},
        "outcome": value.outcome,
        "bestMove": value.move,
        "nodesExplored": value.nodes_explored,
    }
    _emit(args, payload,
          f"{value.outcome} (best first move: {move}; "
          f"{value.nodes_explored} nodes)\n{render_board(state)}")
    return 0


def _cmd_verify(args) -> int:
    results = verification.run_all(fast=args.fast)
    if args.json:
        print(json.dumps([r.as_dict() for r in results]))
    else:
        for r in results:
            flag = "PASS" if r.passed else "FAIL"
            print(f"{flag}  {r.name:28} {r.seconds:8.2f}s  {r.detail}")
    return 0 if all(r.passed for r in results) else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(solver_budget=args.budget, cache_path=args.cache)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_HANDLERS = {
    "bracket": _cmd_bracket,
    "enumerate": _cmd_enumerate,
    "draw-search": _cmd_draw_search,
    "r1": _cmd_r1,
    "bounds": _cmd_bounds,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
