"""Command-line interface.

Exit codes: 0 = question answered, 2 = inconclusive (a cap bound the search),
1 = error. ``--profile @initial`` resolves through the compiled game's
sidecar symbol table (written next to the game file by ``compile``).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import io as gameio
from .cnf import parse_dimacs
from .compilers import (
    compile_sat_market,
    compile_tm_anonymous,
    compile_tm_market,
    compile_tm_player_specific,
    compile_tm_weighted,
    verify_round_anonymous,
    verify_round_weighted,
)
from .dot import export_dot
from .dynamics import (
    Answer,
    EdgeSemantics,
    FirstImprover,
    PriorityList,
    RandomImprover,
    StateGraph,
    default_closure_cap,
    forward_closure,
    has_singleton_sink,
    in_a_sink,
    sccs,
    simulate_walk,
    sinks,
)
from .errors import CapExceededError, SinkeqError
from .games.valid_utility import ValidUtilityInstance, check_valid_utility
from .report import AnalysisReport

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinkeq",
        description="Sink equilibria and dynamics analysis for succinct games",
    )
    parser.add_argument(
        "--semantics",
        choices=["improvement", "best-response"],
        default="improvement",
    )
    parser.add_argument("--cap", type=int, default=None, help="enumeration cap")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sinks", help="list all sink equilibria")
    p.add_argument("game")

    p = sub.add_parser("in-sink", help="is a profile inside a sink equilibrium")
    p.add_argument("game")
    p.add_argument("--profile", required=True,
                   help="comma-separated strategy indices, or @initial")

    p = sub.add_parser("has-pure", help="does a pure Nash equilibrium exist")
    p.add_argument("game")

    p = sub.add_parser("has-non-singleton", help="does a non-singleton sink exist")
    p.add_argument("game")

    p = sub.add_parser("simulate", help="walk the state graph")
    p.add_argument("game")
    p.add_argument("--policy", choices=["first", "random", "priority"],
                   default="first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--order", default="", help="player priority list, comma-separated")
    p.add_argument("--profile", default=None,
                   help="start profile; defaults to all zeros")

    p = sub.add_parser("compile", help="emit a reduction as game + sidecar")
    p.add_argument("kind", choices=["tm2wcg", "tm2psg", "tm2anon", "tm2market",
                                    "sat2market"])
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--penalty", type=int, default=10_000)

    p = sub.add_parser("verify-round", help="replay one simulated machine step")
    p.add_argument("flavor", choices=["weighted", "anonymous"])
    p.add_argument("game")
    p.add_argument("--profile", default="@initial")

    p = sub.add_parser("check-valid-utility", help="check the defining properties")
    p.add_argument("game")

    p = sub.add_parser("export-dot", help="dump a state (sub)graph as DOT")
    p.add_argument("game")
    p.add_argument("--from", dest="from_profile", default=None,
                   help="restrict to the forward closure of this profile")
    return parser


def _semantics(args) -> EdgeSemantics:
    return (EdgeSemantics.BEST_RESPONSE if args.semantics == "best-response"
            else EdgeSemantics.IMPROVEMENT)


def _sidecar_path(game_path: str) -> Path:
    path = Path(game_path)
    if path.suffix == ".json":
        return path.with_suffix(".symbols.json")
    return Path(str(path) + ".symbols.json")


def _load_game(path: str):
    return gameio.parse_game_file(Path(path).read_bytes())


def _load_compiled(path: str):
    game = _load_game(path)
    sidecar = _sidecar_path(path)
    if not sidecar.exists():
        raise SinkeqError(f"no sidecar symbol table at {sidecar}")
    return gameio.parse_sidecar(sidecar.read_bytes(), game)


def _resolve_profile(spec: str, game, game_path: str):
    if spec == "@initial":
        return _load_compiled(game_path).initial
    try:
        choices = tuple(int(tok) for tok in spec.split(","))
    except ValueError:
        raise SinkeqError(f"cannot parse profile {spec!r}") from None
    return game.validate_profile(choices)


def _emit(report: AnalysisReport, args, out) -> None:
    out.write(report.to_json() if args.format == "json" else report.to_text())


def _count_edges(graph, vertices) -> int:
    return sum(len(graph.successors(v)) for v in vertices)


def run_cli(argv, out=sys.stdout, err=sys.stderr) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    started = time.perf_counter()
    try:
        report = _dispatch(args)
    except CapExceededError as exc:
        report = AnalysisReport(
            question=args.command, answer="inconclusive",
            reason=f"{exc} (cap {exc.cap})",
        )
        report.wall_ms = round((time.perf_counter() - started) * 1000, 3)
        _emit(report, args, out)
        return EXIT_INCONCLUSIVE
    except (SinkeqError, OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    report.wall_ms = round((time.perf_counter() - started) * 1000, 3)
    _emit(report, args, out)
    return EXIT_INCONCLUSIVE if report.answer == "inconclusive" else EXIT_OK


def _dispatch(args) -> AnalysisReport:
    if args.command == "sinks":
        game = _load_game(args.game)
        graph = StateGraph(game, _semantics(args))
        found = sinks(game, _semantics(args), args.cap)
        vertices = list(game.codec.all_profiles())
        components = sccs(vertices, lambda v: [w for w, _ in graph.successors(v)])
        return AnalysisReport(
            question="sinks",
            answer=f"{len(found)} sink equilibria",
            states_explored=game.codec.num_profiles,
            edges=_count_edges(graph, vertices),
            scc_count=len(components),
            extra={
                "sink_sizes": [len(s.states) for s in found],
                "singletons": sum(1 for s in found if s.singleton),
            },
        )
    if args.command == "in-sink":
        game = _load_game(args.game)
        profile = _resolve_profile(args.profile, game, args.game)
        semantics = _semantics(args)
        verdict = in_a_sink(game, profile, semantics, args.cap)
        graph = StateGraph(game, semantics)
        closure = forward_closure(graph, profile, args.cap)
        report = AnalysisReport(
            question="in-sink",
            answer=verdict.value,
            states_explored=len(closure),
        )
        if verdict is Answer.INCONCLUSIVE:
            cap = args.cap if args.cap is not None else default_closure_cap()
            report.reason = (
                f"forward closure hit the cap of {cap} at {len(closure)} states"
            )
        else:
            report.edges = _count_edges(graph, closure.states)
            report.scc_count = len(sccs(
                closure.states, lambda v: [w for w, _ in graph.successors(v)]
            ))
        return report
    if args.command == "has-pure":
        game = _load_game(args.game)
        answer = has_singleton_sink(game, args.cap)
        return AnalysisReport(
            question="has-pure",
            answer="true" if answer else "false",
            states_explored=game.codec.num_profiles,
        )
    if args.command == "has-non-singleton":
        game = _load_game(args.game)
        found = sinks(game, _semantics(args), args.cap)
        answer = any(not s.singleton for s in found)
        return AnalysisReport(
            question="has-non-singleton",
            answer="true" if answer else "false",
            states_explored=game.codec.num_profiles,
            extra={"sink_sizes": [len(s.states) for s in found]},
        )
    if args.command == "simulate":
        game = _load_game(args.game)
        graph = StateGraph(game, _semantics(args))
        if args.profile:
            start = _resolve_profile(args.profile, game, args.game)
        else:
            start = (0,) * game.num_players
        if args.policy == "first":
            policy = FirstImprover()
        elif args.policy == "random":
            policy = RandomImprover(args.seed)
        else:
            order = tuple(int(tok) for tok in args.order.split(",") if tok)
            policy = PriorityList(order or tuple(range(game.num_players)))
        walk = simulate_walk(graph, start, policy, args.max_steps, args.cap)
        return AnalysisReport(
            question="simulate",
            answer=walk.outcome.value,
            states_explored=len(walk.states),
            trace=[
                {"player": p, "strategy": s} for p, s in walk.moves
            ],
            extra={"final": list(walk.final)},
        )
    if args.command == "compile":
        return _compile(args)
    if args.command == "verify-round":
        compiled = _load_compiled(args.game)
        if args.profile == "@initial":
            start = compiled.initial
        else:
            start = compiled.game.validate_profile(
                tuple(int(tok) for tok in args.profile.split(","))
            )
        verify = (verify_round_weighted if args.flavor == "weighted"
                  else verify_round_anonymous)
        result = verify(compiled, start)
        return AnalysisReport(
            question="verify-round",
            answer="true" if result.matches else "false",
            reason=result.failure or "",
            trace=[
                {"step": m.step, "role": m.role, "strategy": m.strategy}
                for m in result.trace
            ],
        )
    if args.command == "check-valid-utility":
        game = _load_game(args.game)
        if not isinstance(game, ValidUtilityInstance):
            raise SinkeqError("check-valid-utility needs a valid_utility document")
        result = check_valid_utility(game, args.cap or 200_000)
        return AnalysisReport(
            question="check-valid-utility",
            answer="true" if result.all_hold else "false",
            extra={
                "nondecreasing": result.nondecreasing,
                "submodular": result.submodular,
                "marginal_utility": result.marginal_utility,
                "sum_bounded": result.sum_bounded,
                "counterexamples": {
                    k: repr(v) for k, v in result.counterexamples.items()
                },
            },
        )
    if args.command == "export-dot":
        game = _load_game(args.game)
        graph = StateGraph(game, _semantics(args))
        if args.from_profile:
            start = _resolve_profile(args.from_profile, game, args.game)
            closure = forward_closure(graph, start, args.cap)
            vertices = closure.states
        else:
            cap = args.cap or 4096
            if game.codec.num_profiles > cap:
                raise CapExceededError(
                    f"profile space has {game.codec.num_profiles} states", cap
                )
            vertices = list(game.codec.all_profiles())
        sink_states = set()
        for comp in sccs(vertices, lambda v: [w for w, _ in graph.successors(v)]):
            members = set(comp)
            closed = all(
                w in members or w not in set(vertices)
                for v in comp for w, _ in graph.successors(v)
            )
            if closed:
                sink_states |= members
        return AnalysisReport(
            question="export-dot",
            answer=export_dot(graph, vertices, sink_states),
        )
    raise SinkeqError(f"unhandled command {args.command}")


def _compile(args) -> AnalysisReport:
    data = Path(args.input).read_bytes()
    if args.kind == "sat2market":
        compiled = compile_sat_market(parse_dimacs(data))
    else:
        spec = gameio.parse_tm_file(data)
        if args.kind == "tm2wcg":
            compiled = compile_tm_weighted(spec, penalty=args.penalty)
        elif args.kind == "tm2psg":
            compiled = compile_tm_player_specific(spec, penalty=args.penalty)
        elif args.kind == "tm2market":
            compiled = compile_tm_market(spec, penalty=args.penalty)
        else:
            compiled = compile_tm_anonymous(spec)
    out_path = Path(args.output)
    out_path.write_text(gameio.serialize_game(compiled.game))
    sidecar = _sidecar_path(args.output)
    sidecar.write_text(gameio.serialize_sidecar(compiled))
    return AnalysisReport(
        question="compile",
        answer="ok",
        extra={
            "game": str(out_path),
            "sidecar": str(sidecar),
            "players": compiled.game.num_players,
        },
    )


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
