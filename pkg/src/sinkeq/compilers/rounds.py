"""Round verifiers: drive one simulated machine step and check every mover.

A report's trace records each applied move; ``matches`` turns false at the
first profile whose qualifying moves differ from the expected ones, so the
verifiers double as essential-uniqueness checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..dynamics import EdgeSemantics, StateGraph
from ..profiles import Profile
from ..turing import TMSpec, tm_step
from .anonymous import (
    STRATEGIES,
    _S,
    decode_anonymous_config,
    state_rank,
)
from .common import CompiledReduction
from .tm_gadget import decode_config, delta_tuple, round_start_profile


@dataclass
class RoundMove:
    step: str
    role: str
    strategy: str


@dataclass
class RoundReport:
    matches: bool
    trace: list[RoundMove] = field(default_factory=list)
    failure: str | None = None
    end_profile: Profile | None = None
    end_config: object = None


def _apply(profile: Profile, player: int, strategy: int) -> Profile:
    return profile[:player] + (strategy,) + profile[player + 1:]


def _run_expected_steps(compiled, graph, profile, steps, trace, extra_allowed=None):
    """Walk scripted steps; each is (label, {player: target strategy}).

    At every intermediate profile the qualifying moves must be exactly the
    yet-unapplied expected ones, modulo ``extra_allowed(profile)`` (the Halt
    deviation once the state player reaches the halting state). Returns
    (profile, None) or (profile, failure).
    """
    symbols = compiled.symbols
    for label, expected in steps:
        pending = dict(expected)
        while pending:
            actual = {(p, s) for p, s, _ in graph.improving_moves(profile)}
            wanted = set(pending.items())
            if extra_allowed is not None:
                actual -= extra_allowed(profile)
            if actual != wanted:
                def pretty(pairs):
                    return sorted(
                        (symbols.role_of(p), symbols.strategy_name(symbols.role_of(p), s))
                        for p, s in pairs
                    )
                return profile, (
                    f"step {label}: expected movers {pretty(wanted)}, "
                    f"found {pretty(actual)}"
                )
            player = min(pending)
            strategy = pending.pop(player)
            profile = _apply(profile, player, strategy)
            role = symbols.role_of(player)
            trace.append(RoundMove(label, role, symbols.strategy_name(role, strategy)))
    return profile, None


def verify_round_weighted(
    compiled: CompiledReduction, start: Profile | None = None
) -> RoundReport:
    """Check one round of the congestion/market machine gadget.

    The start profile must have the clock on Trigger, the transition player
    on Wait, the write/verify controls on One and control_D on Zero. For a
    halting-state configuration the expected move is the deviation to Halt,
    which must land on a pure Nash equilibrium.
    """
    spec: TMSpec = compiled.machine
    symbols = compiled.symbols
    profile = compiled.initial if start is None else tuple(start)
    report = RoundReport(matches=False)

    def strat(role, name):
        return symbols.strategy(role, name)

    def player(role):
        return symbols.player(role)

    for role in symbols.players:
        if role.startswith("control_"):
            want = "Zero" if role == "control_D" else "One"
            if profile[player(role)] != strat(role, want):
                report.failure = f"start profile: {role} must be on {want}"
                return report
    if profile[player("transition")] != strat("transition", "Wait"):
        report.failure = "start profile: transition player must be on Wait"
        return report
    if profile[player("clock")] != strat("clock", "Trigger"):
        report.failure = "start profile: clock must be on Trigger"
        return report

    config = decode_config(compiled, profile)
    graph = StateGraph(compiled.game, EdgeSemantics.IMPROVEMENT)
    trace = report.trace

    if config.state == spec.q_halt:
        steps = [("halt", {player("transition"): strat("transition", "Halt")})]
        profile, failure = _run_expected_steps(compiled, graph, profile, steps, trace)
        if failure is None and graph.improving_moves(profile):
            failure = "halt profile is not a pure Nash equilibrium"
        report.failure = failure
        report.matches = failure is None
        report.end_profile = profile
        report.end_config = config
        return report

    q, i, sym = config.state, config.head, config.tape[config.head]
    tau = delta_tuple(spec, q, i, sym)
    ctrl_w = f"control_W_{tau.tag()}"
    ctrl_v = f"control_V_{tau.tag()}"

    step4: dict[int, int] = {}
    if tau.q2 != q:
        step4[player("state")] = strat("state", f"q{tau.q2}")
    if tau.i2 != i:
        step4[player("position")] = strat("position", f"p{tau.i2}")
    if tau.sym2 != sym:
        step4[player(f"cell_{i}")] = strat(f"cell_{i}", tau.sym2)
    step4[player(ctrl_v)] = strat(ctrl_v, "Zero")

    state_player = player("state")
    halt_state_strategy = strat("state", f"q{spec.q_halt}")
    halt_move = (player("transition"), strat("transition", "Halt"))

    def extra_allowed(current):
        # Once the state player sits on the halting state, the Halt deviation
        # qualifies alongside the scripted sequence.
        if current[state_player] == halt_state_strategy:
            return {halt_move}
        return set()

    steps = [
        ("(1)", {player("transition"): strat("transition", f"Read_{q}_{i}_{sym}")}),
        ("(2)", {player(ctrl_w): strat(ctrl_w, "Zero")}),
        ("(3)", {player("transition"): strat("transition", f"Write_{tau.tag()}")}),
        ("(4)", step4),
        ("(5)", {player("transition"): strat("transition", f"Verify_{tau.tag()}")}),
        ("(6)", {player("control_D"): strat("control_D", "One")}),
        ("(7)", {player("transition"): strat("transition", "Done")}),
        ("(8)", {
            player("clock"): strat("clock", "Wait"),
            player(ctrl_w): strat(ctrl_w, "One"),
            player(ctrl_v): strat(ctrl_v, "One"),
        }),
        ("(9)", {player("transition"): strat("transition", "Wait")}),
        ("(10)", {
            player("clock"): strat("clock", "Trigger"),
            player("control_D"): strat("control_D", "Zero"),
        }),
    ]
    profile, failure = _run_expected_steps(
        compiled, graph, profile, steps, trace, extra_allowed
    )
    expected_config = tm_step(spec, config)
    if failure is None:
        expected_end = round_start_profile(compiled, expected_config)
        if profile != expected_end:
            failure = "end profile is not the round start of the successor configuration"
    report.failure = failure
    report.matches = failure is None
    report.end_profile = profile
    report.end_config = expected_config if failure is None else None
    return report


def _class_indices(symbols, prefix: str) -> list[int]:
    return sorted(
        index for role, index in symbols.players.items()
        if role == prefix or role.startswith(prefix + "_")
    )


def verify_round_anonymous(
    compiled: CompiledReduction, start: Profile | None = None
) -> RoundReport:
    """Check the 19-row anonymous round, mover classes included.

    Balancing rows allow any member of the moving class to step (the players
    are interchangeable); every row's qualifying moves must stay inside the
    row's allowed set, and each row must reach its milestone.
    """
    spec: TMSpec = compiled.machine
    symbols = compiled.symbols
    profile = compiled.initial if start is None else tuple(start)
    report = RoundReport(matches=False)
    rank = state_rank(spec)

    c1 = symbols.player("control1")
    c2 = symbols.player("control2")
    if profile[c1] != _S["init"]:
        report.failure = "start profile: control1 must be on init"
        return report
    try:
        config = decode_anonymous_config(compiled, profile)
    except ValueError as exc:
        report.failure = f"start profile: {exc}"
        return report
    if config.state == spec.q_halt:
        report.failure = "start configuration is already halted"
        return report

    q, i, sym = config.state, config.head, config.tape[config.head]
    q2, sym2, move = spec.delta[(q, sym)]
    i2 = i + {"L": -1, "S": 0, "R": 1}[move]
    q2_rank = rank[q2]

    cells = _class_indices(symbols, "cell")
    tapes = _class_indices(symbols, "tape")
    positions = _class_indices(symbols, "position")
    states = _class_indices(symbols, "state")
    new_pos = _class_indices(symbols, "new_pos")
    new_states = _class_indices(symbols, "new_state")
    symbol_p = symbols.player("symbol")
    new_sym_p = symbols.player("new_sym")
    cell_head = symbols.player(f"cell_{i}")

    def counts(profile, players, strategy_name):
        s = _S[strategy_name]
        return sum(1 for p in players if profile[p] == s)

    def histogram_moves(profile, players, names, targets):
        """Moves from over-full strategies to under-full ones."""
        have = {name: counts(profile, players, name) for name in names}
        deficits = [name for name in names if have[name] < targets[name]]
        moves = set()
        for p in players:
            name = STRATEGIES[profile[p]]
            if have[name] > targets.get(name, 0):
                moves.update((p, _S[d]) for d in deficits)
        return moves

    def unary_moves(profile, players, one_name, zero_name, target):
        have = counts(profile, players, one_name)
        if have < target:
            return {(p, _S[one_name]) for p in players if profile[p] == _S[zero_name]}
        if have > target:
            return {(p, _S[zero_name]) for p in players if profile[p] == _S[one_name]}
        return set()

    def follower(profile, x_name):
        return {(c2, _S[x_name])} if profile[c2] != _S[x_name] else set()

    cell_names = [f"cell^{s}" for s in ("0", "1", "b")]
    tape_names = [f"tape^{s}" for s in ("0", "1", "b")]

    def tape_targets(profile):
        return {
            f"tape^{s}": counts(profile, cells, f"cell^{s}") for s in ("0", "1", "b")
        }

    # Each phase: (row label, allowed-moves fn, completion fn).
    phases = [
        ("row 2", lambda P: follower(P, "Xinit") | histogram_moves(
            P, tapes, tape_names, tape_targets(P)),
            lambda P: P[c2] == _S["Xinit"] and not histogram_moves(
                P, tapes, tape_names, tape_targets(P))),
        ("row 3", lambda P: {(c1, _S["tape-change"])},
            lambda P: P[c1] == _S["tape-change"]),
        ("row 4", lambda P: follower(P, "Xtape-change")
            | ({(cell_head, _S["change"])} if P[cell_head] != _S["change"] else set()),
            lambda P: P[c2] == _S["Xtape-change"] and P[cell_head] == _S["change"]),
        ("row 5", lambda P: {(c1, _S["eval-tape"])},
            lambda P: P[c1] == _S["eval-tape"]),
        ("row 6", lambda P: follower(P, "Xeval-tape")
            | ({(symbol_p, _S[f"symbol^{sym}"])}
               if P[symbol_p] != _S[f"symbol^{sym}"] else set()),
            lambda P: P[c2] == _S["Xeval-tape"] and P[symbol_p] == _S[f"symbol^{sym}"]),
        ("row 7", lambda P: {(c1, _S["new-sym"])},
            lambda P: P[c1] == _S["new-sym"]),
        ("row 8", lambda P: follower(P, "Xnew-sym")
            | ({(new_sym_p, _S[f"new-sym^{sym2}"])}
               if P[new_sym_p] != _S[f"new-sym^{sym2}"] else set()),
            lambda P: P[c2] == _S["Xnew-sym"] and P[new_sym_p] == _S[f"new-sym^{sym2}"]),
        ("row 9", lambda P: {(c1, _S["new-sym2"])},
            lambda P: P[c1] == _S["new-sym2"]),
        ("row 10", lambda P: follower(P, "Xnew-sym2")
            | ({(cell_head, _S[f"cell^{sym2}"])}
               if P[cell_head] != _S[f"cell^{sym2}"] else set()),
            lambda P: P[c2] == _S["Xnew-sym2"] and P[cell_head] == _S[f"cell^{sym2}"]),
        ("row 11", lambda P: {(c1, _S["new-pos"])},
            lambda P: P[c1] == _S["new-pos"]),
        ("row 12", lambda P: follower(P, "Xnew-pos")
            | unary_moves(P, new_pos, "new-pos^1", "new-pos^0", i2),
            lambda P: P[c2] == _S["Xnew-pos"]
            and counts(P, new_pos, "new-pos^1") == i2),
        ("row 13", lambda P: {(c1, _S["new-pos2"])},
            lambda P: P[c1] == _S["new-pos2"]),
        ("row 14", lambda P: follower(P, "Xnew-pos2")
            | unary_moves(P, positions, "position^1", "position^0", i2),
            lambda P: P[c2] == _S["Xnew-pos2"]
            and counts(P, positions, "position^1") == i2),
        ("row 15", lambda P: {(c1, _S["new-state"])},
            lambda P: P[c1] == _S["new-state"]),
        ("row 16", lambda P: follower(P, "Xnew-state")
            | unary_moves(P, new_states, "new-state^1", "new-state^0", q2_rank),
            lambda P: P[c2] == _S["Xnew-state"]
            and counts(P, new_states, "new-state^1") == q2_rank),
        ("row 17", lambda P: {(c1, _S["new-state2"])},
            lambda P: P[c1] == _S["new-state2"]),
        ("row 18", lambda P: follower(P, "Xnew-state2")
            | unary_moves(P, states, "state^1", "state^0", q2_rank),
            lambda P: P[c2] == _S["Xnew-state2"]
            and counts(P, states, "state^1") == q2_rank),
        ("row 19", lambda P: {(c1, _S["init"])},
            lambda P: P[c1] == _S["init"]),
    ]

    graph = StateGraph(compiled.game, EdgeSemantics.IMPROVEMENT)
    trace = report.trace
    for label, allowed_fn, done_fn in phases:
        guard = 0
        while not done_fn(profile):
            guard += 1
            if guard > 10 * compiled.game.num_players:
                report.failure = f"{label}: no progress"
                return report
            allowed = allowed_fn(profile)
            actual = {(p, s) for p, s, _ in graph.improving_moves(profile)}
            if actual != allowed:
                def pretty(pairs):
                    return sorted(
                        (symbols.role_of(p), STRATEGIES[s]) for p, s in pairs
                    )
                report.failure = (
                    f"{label}: expected movers {pretty(allowed)}, "
                    f"found {pretty(actual)}"
                )
                return report
            player, strategy = min(allowed)
            profile = _apply(profile, player, strategy)
            trace.append(RoundMove(label, symbols.role_of(player), STRATEGIES[strategy]))

    end_config = decode_anonymous_config(compiled, profile)
    expected = tm_step(spec, config)
    if end_config != expected:
        report.failure = (
            f"end configuration {end_config} differs from the machine step {expected}"
        )
        return report
    report.matches = True
    report.end_profile = profile
    report.end_config = end_config
    return report
