"""Compiled reductions: emitted game, canonical initial profile, symbol table."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..dynamics import EdgeSemantics, StateGraph, forward_closure
from ..errors import ConfigurationError
from ..games.base import SuccinctGame
from ..profiles import Profile


@dataclass
class SymbolTable:
    """Maps gadget roles to player indices and role strategies to indices."""

    players: dict[str, int] = field(default_factory=dict)
    strategies: dict[str, dict[str, int]] = field(default_factory=dict)

    def add_player(self, role: str, index: int):
        if role in self.players:
            raise ConfigurationError(f"duplicate role {role}")
        self.players[role] = index
        self.strategies[role] = {}

    def add_strategy(self, role: str, name: str, index: int):
        table = self.strategies[role]
        if name in table:
            raise ConfigurationError(f"duplicate strategy {name} for role {role}")
        table[name] = index

    def player(self, role: str) -> int:
        return self.players[role]

    def strategy(self, role: str, name: str) -> int:
        return self.strategies[role][name]

    def strategy_name(self, role: str, index: int) -> str:
        for name, idx in self.strategies[role].items():
            if idx == index:
                return name
        raise KeyError((role, index))

    def role_of(self, player_index: int) -> str:
        for role, idx in self.players.items():
            if idx == player_index:
                return role
        raise KeyError(player_index)


@dataclass
class CompiledReduction:
    game: SuccinctGame
    initial: Profile
    symbols: SymbolTable
    machine: object = None  # TMSpec for machine reductions
    penalty: int | None = None  # M
    market_base: int | None = None  # N, market compiles only

    def profile_of(self, assignments: dict[str, str]) -> Profile:
        """Initial profile with some roles moved to named strategies."""
        profile = list(self.initial)
        for role, strategy in assignments.items():
            profile[self.symbols.player(role)] = self.symbols.strategy(role, strategy)
        return tuple(profile)

    def describe(self, profile: Profile) -> dict[str, str]:
        return {
            role: self.symbols.strategy_name(role, profile[idx])
            for role, idx in sorted(self.symbols.players.items(), key=lambda kv: kv[1])
        }


def closures_isomorphic(
    a: CompiledReduction,
    b: CompiledReduction,
    semantics: EdgeSemantics = EdgeSemantics.IMPROVEMENT,
    cap: int = 200_000,
) -> bool:
    """Label-isomorphism of the reachable closures under the role mapping.

    Players correspond by role name and strategies by role-strategy name;
    checks that mapped edges (including mover labels) coincide exactly.
    """
    mapping = _role_mapping(a, b)
    graph_a = StateGraph(a.game, semantics)
    graph_b = StateGraph(b.game, semantics)
    closure_a = forward_closure(graph_a, a.initial, cap)
    closure_b = forward_closure(graph_b, b.initial, cap)
    if not (closure_a.exhausted and closure_b.exhausted):
        raise ConfigurationError("closures exceeded the isomorphism cap")
    if len(closure_a) != len(closure_b):
        return False

    def map_profile(profile: Profile) -> Profile:
        out = [0] * len(profile)
        for pa, (pb, strat_map) in mapping.items():
            out[pb] = strat_map[profile[pa]]
        return tuple(out)

    if map_profile(a.initial) != b.initial:
        return False
    closure_b_set = closure_b.index
    for state in closure_a.states:
        image = map_profile(state)
        if image not in closure_b_set:
            return False
        edges_a = {
            (map_profile(nxt), mapping[mover][0])
            for nxt, mover in graph_a.successors(state)
        }
        edges_b = set(graph_b.successors(image))
        if edges_a != edges_b:
            return False
    return True


def _role_mapping(a: CompiledReduction, b: CompiledReduction):
    if set(a.symbols.players) != set(b.symbols.players):
        raise ConfigurationError("role sets differ; no candidate isomorphism")
    mapping = {}
    for role, pa in a.symbols.players.items():
        pb = b.symbols.player(role)
        strats_a = a.symbols.strategies[role]
        strats_b = b.symbols.strategies[role]
        if set(strats_a) != set(strats_b):
            raise ConfigurationError(f"strategy names differ for role {role}")
        strat_map = {ia: strats_b[name] for name, ia in strats_a.items()}
        mapping[pa] = (pb, strat_map)
    return mapping
