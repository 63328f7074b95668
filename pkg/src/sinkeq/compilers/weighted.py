"""Machine-to-congestion-game reductions (weighted and player-specific)."""

from __future__ import annotations

from ..errors import ConfigurationError
from ..games.congestion import PLAYER_SPECIFIC, SHARED, CongestionGame
from ..turing import TMSpec
from .common import CompiledReduction
from .tm_gadget import (
    CLOCK_WAIT,
    DONE_NN,
    READ_NN,
    TRIGGER_CLOCK,
    TRIGGER_MAIN,
    VERIFY_NN,
    WRITE_NN,
    assemble,
    build_structure,
)

_NN_VALUES = {
    "nn_read": READ_NN,
    "nn_write": WRITE_NN,
    "nn_verify": VERIFY_NN,
    "nn_done": DONE_NN,
    "nn_clock_wait": CLOCK_WAIT,
}


def _nn_value(name: str) -> int:
    for prefix, value in _NN_VALUES.items():
        if name.startswith(prefix):
            return value
    raise AssertionError(name)


def compile_tm_weighted(spec: TMSpec, penalty: int = 10_000) -> CompiledReduction:
    """Weighted shared-delay congestion game simulating one step per round.

    Alpha resources cost 0 alone and 1 shared; beta resources 0 alone and the
    penalty shared. The clock carries weight 2 so that it always pays 100 on
    TriggerMain while a lone transition player pays 0.
    """
    if penalty <= 110:
        raise ConfigurationError("the penalty must exceed every constant delay (110)")
    structure = build_structure(spec)
    m1, m2, m3 = TRIGGER_MAIN
    c1, c2, c3 = TRIGGER_CLOCK
    delays = []
    for name in structure.resource_names:
        if name.startswith("a"):
            delays.append({1: 0, 2: 1})
        elif name.startswith("b"):
            delays.append({1: 0, 2: penalty})
        elif name == "TriggerMain":
            delays.append({1: m1, 2: m2, 3: m3})
        elif name == "TriggerClock":
            delays.append({1: c1, 2: c2, 3: c3})
        elif name == "nn_clock_wait":
            delays.append({1: CLOCK_WAIT, 2: CLOCK_WAIT})
        else:
            delays.append({1: _nn_value(name)})
    weights = [1] * len(structure.player_roles)
    weights[structure.clock_index] = 2
    game = CongestionGame(
        resources=structure.resource_names,
        strategies=structure.strategy_resources,
        delays=delays,
        weights=weights,
        mode=SHARED,
    )
    compiled = assemble(structure, game, spec)
    compiled.penalty = penalty
    return compiled


def compile_tm_player_specific(spec: TMSpec, penalty: int = 10_000) -> CompiledReduction:
    """Unit-weight variant with player-specific trigger delays.

    The clock pays 100 on TriggerMain regardless of who else is there; the
    transition player pays 0 alone and 100 shared. TriggerClock costs both
    players 0 alone and 20 together. Every player's delay matches the
    weighted compile profile for profile.
    """
    if penalty <= 110:
        raise ConfigurationError("the penalty must exceed every constant delay (110)")
    structure = build_structure(spec)
    n_players = len(structure.player_roles)
    transition = structure.transition_index
    clock = structure.clock_index
    m1, m2, _ = TRIGGER_MAIN
    c1, c2, c3 = TRIGGER_CLOCK

    def uniform(table):
        return [dict(table) for _ in range(n_players)]

    delays = []
    for name in structure.resource_names:
        if name.startswith("a"):
            delays.append(uniform({1: 0, 2: 1}))
        elif name.startswith("b"):
            delays.append(uniform({1: 0, 2: penalty}))
        elif name == "TriggerMain":
            per = uniform({})
            per[transition] = {1: m1, 2: m2}
            per[clock] = {1: m2, 2: m2}
            delays.append(per)
        elif name == "TriggerClock":
            per = uniform({})
            per[transition] = {1: c1, 2: c3}
            per[clock] = {1: c2, 2: c3}
            delays.append(per)
        elif name == "nn_clock_wait":
            per = uniform({})
            per[clock] = {1: CLOCK_WAIT}
            delays.append(per)
        else:
            per = uniform({})
            per[transition] = {1: _nn_value(name)}
            delays.append(per)
    game = CongestionGame(
        resources=structure.resource_names,
        strategies=structure.strategy_resources,
        delays=delays,
        weights=[1] * n_players,
        mode=PLAYER_SPECIFIC,
    )
    compiled = assemble(structure, game, spec)
    compiled.penalty = penalty
    return compiled
