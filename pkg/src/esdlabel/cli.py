"""Command line front end.

Subcommands: verify, construct, search, game (play/solve/bound/replay),
gen, convert.  Graph and labeling inputs are JSON files ('-' reads stdin).

Exit codes: 0 success or positive answer, 1 negative answer (not ESD,
nothing exists, game position lost, min pool not found), 2 usage or input
errors, 3 search aborted on a node or time limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from . import game as game_mod
from . import search as search_mod
from . import serialize
from .graph import (
    Graph,
    InvalidGraphError,
    InvalidLabelingError,
    Labeling,
    canonical_feasible,
    edge_weights,
    verify_esd,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_ABORT = 3


def _print_json(data: dict) -> None:
    serialize.dump_json(data)


# ============================================================
# verify
# ============================================================


def _cmd_verify(args) -> int:
    g = serialize.load_graph(args.graph)
    phi = serialize.load_labeling(args.labeling)
    res = verify_esd(g, phi, require_total=args.require_total)
    if args.format == "table":
        print(f"graph: n={g.n} m={g.edge_count}")
        print(f"esd: {'yes' if res.esd else 'no'}")
        if res.conflict:
            print(f"conflict: {res.conflict.to_json()}")
    else:
        _print_json(res.to_json())
    return EXIT_OK if res.esd else EXIT_NEGATIVE


# ============================================================
# construct / gen
# ============================================================


def _emit_construction(result, args) -> int:
    if isinstance(result, cons.NoneExists):
        if args.format == "table":
            print(f"none exists: {result.reason}")
        else:
            _print_json(result.to_json())
        return EXIT_NEGATIVE
    if args.format == "dot":
        sys.stdout.write(serialize.graph_to_dot(result.graph, result.labeling))
    elif args.format == "table":
        g, phi = result.graph, result.labeling
        print(f"graph: n={g.n} m={g.edge_count} pool={phi.pool_size} canonical={result.canonical}")
        print("vertex labels: " + " ".join(f"{v}:{phi.assignment[v]}" for v in g.vertices()))
        print("edge weights:  " + " ".join(f"{u}-{v}={w}" for (u, v), w in edge_weights(g, phi)))
    else:
        _print_json(result.to_json())
    return EXIT_OK


def _cmd_construct(args) -> int:
    result = cons.construct(args.family, seed=args.seed)
    return _emit_construction(result, args)


def _cmd_gen(args) -> int:
    g = cons.build_graph(args.family, seed=args.seed)
    if args.format == "dot":
        sys.stdout.write(serialize.graph_to_dot(g))
    else:
        _print_json(g.to_json())
    return EXIT_OK


# ============================================================
# search
# ============================================================


def _cmd_search(args) -> int:
    g = serialize.load_graph(args.graph)
    if args.min_pool_up_to is not None:
        try:
            best = search_mod.min_pool_size(
                g,
                args.min_pool_up_to,
                node_limit=args.node_limit,
                time_limit=args.time_limit,
                ordering=args.ordering,
                jobs=args.jobs,
            )
        except search_mod.SearchAborted as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_ABORT
        _print_json({"minPoolSize": best, "searchedUpTo": args.min_pool_up_to})
        return EXIT_OK if best is not None else EXIT_NEGATIVE

    cfg = search_mod.SearchConfig(
        label_pool_size=args.labels if args.labels is not None else g.n,
        mode=args.mode,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        ordering=args.ordering,
        jobs=args.jobs,
    )
    out = search_mod.solve(g, cfg)
    if args.format == "table":
        print(f"status: {out.status}  labelings: {out.count}  nodes: {out.nodes_visited}")
        if out.certificate_note:
            print(f"note: {out.certificate_note}")
        for phi in out.labelings[:10]:
            print("  " + " ".join(f"{v}:{phi.assignment[v]}" for v in sorted(phi.assignment)))
    else:
        data = out.to_json()
        data["feasibleByEdgeCount"] = canonical_feasible(g)
        _print_json(data)
    if out.status == search_mod.STATUS_ABORTED:
        return EXIT_ABORT
    return EXIT_OK if out.status == search_mod.STATUS_FOUND else EXIT_NEGATIVE


# ============================================================
# game
# ============================================================


def _cmd_game_play(args) -> int:
    g = serialize.load_graph(args.graph)
    pool = args.labels if args.labels is not None else g.n
    alice = game_mod.make_strategy(args.alice, seed=args.seed, max_n=args.max_n, max_l=args.max_l)
    bob_seed = None if args.seed is None else args.seed + 1
    bob = game_mod.make_strategy(args.bob, seed=bob_seed, max_n=args.max_n, max_l=args.max_l)
    record = game_mod.play_game(g, pool, alice, bob, bob_starts=args.bob_starts)
    if args.format == "table":
        starter = "Bob" if args.bob_starts else "Alice"
        for i, mv in enumerate(record.moves):
            side = starter if i % 2 == 0 else ("Alice" if starter == "Bob" else "Bob")
            print(f"{i + 1:3d}. {side:5s} v{mv.vertex} <- {mv.label}")
        print(f"winner: {record.winner}")
    else:
        _print_json(record.transcript_json())
    return EXIT_OK


def _cmd_game_solve(args) -> int:
    g = serialize.load_graph(args.graph)
    pool = args.labels if args.labels is not None else g.n
    sol = game_mod.solve_game(
        g, pool, bob_starts=args.bob_starts, max_n=args.max_n, max_l=args.max_l
    )
    _print_json(sol.to_json())
    return EXIT_OK if sol.winner == game_mod.ALICE else EXIT_NEGATIVE


def _cmd_game_bound(args) -> int:
    g = serialize.load_graph(args.graph)
    _print_json({"bound": game_mod.alice_bound(g)})
    return EXIT_OK


def _cmd_game_replay(args) -> int:
    g = serialize.load_graph(args.graph)
    pool = args.labels if args.labels is not None else g.n
    data = serialize.load_json(args.transcript)
    if not isinstance(data, dict) or "moves" not in data:
        raise InvalidLabelingError("transcript JSON needs a 'moves' array")
    state = game_mod.replay_transcript(g, pool, data, bob_starts=args.bob_starts)
    winner = None
    if state.status == game_mod.ALICE_WON:
        winner = game_mod.ALICE
    elif state.status == game_mod.BOB_WON:
        winner = game_mod.BOB
    _print_json(
        {
            "status": state.status,
            "winner": winner,
            "assignment": {str(v): a for v, a in sorted(state.assignment.items())},
        }
    )
    return EXIT_OK


# ============================================================
# convert
# ============================================================


def _cmd_convert(args) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        g = Graph.from_json(json.loads(text))
        phi = None
    else:
        g, phi = serialize.parse_dot(text)
    if args.to == "dot":
        sys.stdout.write(serialize.graph_to_dot(g, phi))
    else:
        _print_json(g.to_json())
    return EXIT_OK


# ============================================================
# parser
# ============================================================


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="esd",
        description="Edge-sum distinguishing labelings: verify, construct, search, play.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "dot", "table"), default="json")

    sp = sub.add_parser("verify", parents=[fmt], help="check a labeling for the ESD property")
    sp.add_argument("graph", help="graph JSON file ('-' for stdin)")
    sp.add_argument("labeling", help="labeling JSON file")
    sp.add_argument("--require-total", action="store_true", help="reject partial labelings")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("construct", parents=[fmt], help="build a family graph with its labeling")
    sp.add_argument("family", help="family spec, e.g. fan:8 grid:4x3 sunlet:5,2 kpq:2,7 tight:12")
    sp.add_argument("--seed", type=int, default=None, help="seed for the tree family")
    sp.set_defaults(fn=_cmd_construct)

    sp = sub.add_parser("gen", parents=[fmt], help="build a family graph without a labeling")
    sp.add_argument("family")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=_cmd_gen)

    sp = sub.add_parser("search", parents=[fmt], help="exhaustive labeling search")
    sp.add_argument("graph")
    sp.add_argument("--labels", type=int, default=None, help="label pool size (default: n)")
    sp.add_argument("--mode", choices=search_mod.MODES, default=search_mod.MODE_FIRST)
    sp.add_argument("--node-limit", type=int, default=search_mod.DEFAULT_NODE_LIMIT)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.add_argument("--ordering", choices=search_mod.ORDERINGS,
                    default=search_mod.ORDER_MOST_CONSTRAINED)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--min-pool-up-to", type=int, default=None,
                    help="instead: find the smallest working pool size up to this cap")
    sp.set_defaults(fn=_cmd_search)

    gp = sub.add_parser("game", help="two-player labeling game")
    gsub = gp.add_subparsers(dest="game_command", required=True)

    guards = argparse.ArgumentParser(add_help=False)
    guards.add_argument("--max-n", type=int, default=6, help="size guard for game-tree solving")
    guards.add_argument("--max-l", type=int, default=12, help="pool guard for game-tree solving")

    sp = gsub.add_parser("play", parents=[fmt, guards], help="play one game between strategies")
    sp.add_argument("graph")
    sp.add_argument("--labels", type=int, default=None)
    sp.add_argument("--alice", choices=game_mod.STRATEGY_KINDS, default="aliceCandidateSet")
    sp.add_argument("--bob", choices=game_mod.STRATEGY_KINDS, default="uniformRandom")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--bob-starts", action="store_true")
    sp.set_defaults(fn=_cmd_game_play)

    sp = gsub.add_parser("solve", parents=[fmt, guards], help="winner under optimal play")
    sp.add_argument("graph")
    sp.add_argument("--labels", type=int, default=None)
    sp.add_argument("--bob-starts", action="store_true")
    sp.set_defaults(fn=_cmd_game_solve)

    sp = gsub.add_parser("bound", parents=[fmt], help="pool size guaranteeing an Alice win")
    sp.add_argument("graph")
    sp.set_defaults(fn=_cmd_game_bound)

    sp = gsub.add_parser("replay", parents=[fmt], help="re-validate a transcript")
    sp.add_argument("graph")
    sp.add_argument("--labels", type=int, default=None)
    sp.add_argument("--transcript", required=True, help="transcript JSON file ('-' for stdin)")
    sp.add_argument("--bob-starts", action="store_true")
    sp.set_defaults(fn=_cmd_game_replay)

    sp = sub.add_parser("convert", help="convert between graph JSON and DOT")
    sp.add_argument("input", help="input file ('-' for stdin); format auto-detected")
    sp.add_argument("--to", choices=("json", "dot"), default="dot")
    sp.set_defaults(fn=_cmd_convert)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (
        InvalidGraphError,
        InvalidLabelingError,
        cons.ConstructionError,
        game_mod.IllegalMoveError,
        game_mod.GameGuardError,
        json.JSONDecodeError,
        FileNotFoundError,
        KeyError,
        TypeError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
