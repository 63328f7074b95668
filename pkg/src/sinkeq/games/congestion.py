"""Congestion games: unweighted, weighted, and player-specific delays."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import ConfigurationError, UnsupportedGameError
from ..profiles import Profile, ProfileCodec
from .base import CostGame

SHARED = "shared"
PLAYER_SPECIFIC = "player_specific"


def two_level(low: int, high: int, max_load: int) -> dict[int, int]:
    """Delay ``low`` at load 1 and ``high`` for every load above."""
    return {load: (low if load <= 1 else high) for load in range(1, max_load + 1)}


def three_level(d1: int, d2: int, d3: int, max_load: int) -> dict[int, int]:
    """Delays at loads 1, 2, and >= 3 respectively."""
    table = {}
    for load in range(1, max_load + 1):
        table[load] = d1 if load == 1 else (d2 if load == 2 else d3)
    return table


def constant(value: int, max_load: int) -> dict[int, int]:
    return {load: value for load in range(1, max_load + 1)}


def _subset_sums(weights: Sequence[int]) -> set[int]:
    sums = {0}
    for w in weights:
        sums |= {s + w for s in sums}
    sums.discard(0)
    return sums


class CongestionGame(CostGame):
    """Resource cost game; player cost sums per-resource delays at the load.

    ``strategies[i]`` lists player ``i``'s strategies, each a set of resource
    indices. In shared mode the delay argument is the weighted load
    ``l_e = sum of weights of users``; in player-specific mode it is the user
    count ``n_e`` and each (resource, player) pair has its own table.
    Missing table entries for any reachable load are a construction error.
    """

    def __init__(
        self,
        resources: Sequence[str],
        strategies: Sequence[Sequence[Sequence[int]]],
        delays,
        weights: Sequence[int] | None = None,
        mode: str = SHARED,
    ):
        self.resources = tuple(str(r) for r in resources)
        if len(set(self.resources)) != len(self.resources):
            raise ConfigurationError("duplicate resource names")
        if mode not in (SHARED, PLAYER_SPECIFIC):
            raise ConfigurationError(f"unknown delay mode {mode!r}")
        self.mode = mode
        n_res = len(self.resources)

        frozen = []
        for player, strat_list in enumerate(strategies):
            if not strat_list:
                raise ConfigurationError(f"player {player} has no strategies")
            per_player = []
            for s_idx, strat in enumerate(strat_list):
                fs = frozenset(int(e) for e in strat)
                for e in fs:
                    if not 0 <= e < n_res:
                        raise ConfigurationError(
                            f"player {player} strategy {s_idx} references "
                            f"undeclared resource {e}"
                        )
                per_player.append(fs)
            frozen.append(tuple(per_player))
        self.strategies = tuple(frozen)
        self.strategy_counts = tuple(len(s) for s in self.strategies)
        self.codec = ProfileCodec(self.strategy_counts)

        n = len(self.strategies)
        if weights is None:
            weights = [1] * n
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != n or any(w <= 0 for w in self.weights):
            raise ConfigurationError("weights must be positive, one per player")
        if mode == PLAYER_SPECIFIC and any(w != 1 for w in self.weights):
            raise ConfigurationError("player-specific games use unit weights")

        self.delays = self._freeze_delays(delays, n, n_res)
        self._check_delay_coverage()

    def _freeze_delays(self, delays, n_players, n_res):
        if len(delays) != n_res:
            raise ConfigurationError(
                f"{len(delays)} delay tables for {n_res} resources"
            )
        frozen = []
        if self.mode == SHARED:
            for e, table in enumerate(delays):
                frozen.append(self._freeze_table(table, f"resource {self.resources[e]}"))
        else:
            for e, per_player in enumerate(delays):
                if len(per_player) != n_players:
                    raise ConfigurationError(
                        f"resource {self.resources[e]}: expected one table per player"
                    )
                frozen.append(tuple(
                    self._freeze_table(t, f"resource {self.resources[e]} player {i}")
                    for i, t in enumerate(per_player)
                ))
        return tuple(frozen)

    @staticmethod
    def _freeze_table(table: Mapping, label: str) -> dict[int, int]:
        out = {}
        for load, delay in table.items():
            load = int(load)
            if load <= 0:
                raise ConfigurationError(f"{label}: load {load} not positive")
            out[load] = int(delay)
        return out

    def _potential_users(self, e: int) -> list[int]:
        return [
            i for i, strats in enumerate(self.strategies)
            if any(e in s for s in strats)
        ]

    def _check_delay_coverage(self):
        for e in range(len(self.resources)):
            users = self._potential_users(e)
            if self.mode == SHARED:
                reachable = _subset_sums([self.weights[i] for i in users])
                missing = reachable - set(self.delays[e])
                if missing:
                    raise ConfigurationError(
                        f"resource {self.resources[e]}: no delay for reachable "
                        f"load(s) {sorted(missing)}"
                    )
            else:
                reachable = set(range(1, len(users) + 1))
                for i in users:
                    missing = reachable - set(self.delays[e][i])
                    if missing:
                        raise ConfigurationError(
                            f"resource {self.resources[e]}: player {i} has no "
                            f"delay for reachable count(s) {sorted(missing)}"
                        )

    def loads(self, profile: Profile) -> list[int]:
        """Weighted load per resource (shared) or user count (player-specific)."""
        loads = [0] * len(self.resources)
        for i, choice in enumerate(profile):
            add = self.weights[i] if self.mode == SHARED else 1
            for e in self.strategies[i][choice]:
                loads[e] += add
        return loads

    def cost(self, profile: Profile, player: int) -> int:
        return self._cost_at(profile, player, profile[player], self.loads(profile))

    def _cost_at(self, profile, player, choice, loads):
        strat = self.strategies[player][choice]
        if self.mode == SHARED:
            return sum(self.delays[e][loads[e]] for e in strat)
        return sum(self.delays[e][player][loads[e]] for e in strat)

    def deviation_costs(self, profile: Profile, player: int, loads=None):
        """Cost of every strategy of ``player`` holding the others fixed.

        Returns a list aligned with the player's strategy indices; used by the
        dynamics engine to avoid recomputing loads per deviation.
        """
        if loads is None:
            loads = self.loads(profile)
        current = self.strategies[player][profile[player]]
        add = self.weights[player] if self.mode == SHARED else 1
        out = []
        for choice, strat in enumerate(self.strategies[player]):
            total = 0
            for e in strat:
                load = loads[e] + (0 if e in current else add)
                table = self.delays[e] if self.mode == SHARED else self.delays[e][player]
                total += table[load]
            out.append(total)
        return out

    def deviation_utilities(self, profile: Profile, player: int):
        return [-c for c in self.deviation_costs(profile, player)]

    @property
    def unweighted_shared(self) -> bool:
        return self.mode == SHARED and all(w == 1 for w in self.weights)

    def require_unweighted_shared(self, operation: str):
        if not self.unweighted_shared:
            raise UnsupportedGameError(
                f"{operation} is defined only for unweighted shared-delay games"
            )
