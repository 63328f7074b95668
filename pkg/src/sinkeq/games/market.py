"""Many-to-one two-sided market games with uniform market values.

Active agents demand sets of passive agents; each demanded passive agent is
won by the demander it prefers most, and an active agent's utility is the
summed value of the passive agents it wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ConfigurationError
from ..profiles import Profile, ProfileCodec
from .base import SuccinctGame


@dataclass(frozen=True)
class PassiveAgent:
    name: str
    value: int
    preference: tuple[int, ...]  # active-agent indices, most preferred first


@dataclass(frozen=True)
class ActiveAgent:
    name: str
    strategies: tuple[frozenset[int], ...]  # each a set of passive indices


class TwoSidedMarketGame(SuccinctGame):
    """Preference orders must strictly rank every potential demander."""

    def __init__(self, passive: Sequence[PassiveAgent], active: Sequence[ActiveAgent]):
        self.passive = tuple(passive)
        self.active = tuple(active)
        n_passive = len(self.passive)
        for x, agent in enumerate(self.active):
            if not agent.strategies:
                raise ConfigurationError(f"agent {agent.name}: no strategies")
            for s_idx, strat in enumerate(agent.strategies):
                for y in strat:
                    if not 0 <= y < n_passive:
                        raise ConfigurationError(
                            f"agent {agent.name} strategy {s_idx}: passive index "
                            f"{y} out of range"
                        )
        for y, p in enumerate(self.passive):
            if p.value <= 0:
                raise ConfigurationError(f"passive agent {p.name}: value not positive")
            if len(set(p.preference)) != len(p.preference):
                raise ConfigurationError(f"passive agent {p.name}: preference repeats")
            demanders = {
                x for x, agent in enumerate(self.active)
                if any(y in s for s in agent.strategies)
            }
            if not demanders <= set(p.preference):
                missing = sorted(demanders - set(p.preference))
                raise ConfigurationError(
                    f"passive agent {p.name}: preference omits demander(s) {missing}"
                )
        # rank[y][x]: lower is better; absent demanders never win
        self._rank = tuple(
            {x: r for r, x in enumerate(p.preference)} for p in self.passive
        )
        self.strategy_counts = tuple(len(a.strategies) for a in self.active)
        self.codec = ProfileCodec(self.strategy_counts)

    def compute_winners(self, profile: Profile) -> list[int | None]:
        """The winning active agent per passive agent, or None if undemanded."""
        winners: list[int | None] = [None] * len(self.passive)
        for x, choice in enumerate(profile):
            for y in self.active[x].strategies[choice]:
                cur = winners[y]
                if cur is None or self._rank[y][x] < self._rank[y][cur]:
                    winners[y] = x
        return winners

    def winner_sets(self, profile: Profile) -> list[set[int]]:
        sets: list[set[int]] = [set() for _ in self.active]
        for y, x in enumerate(self.compute_winners(profile)):
            if x is not None:
                sets[x].add(y)
        return sets

    def utility(self, profile: Profile, player: int) -> int:
        winners = self.compute_winners(profile)
        return sum(
            self.passive[y].value
            for y in self.active[player].strategies[profile[player]]
            if winners[y] == player
        )

    def deviation_utilities(self, profile: Profile, player: int):
        # Winners among the *other* agents stay fixed across this player's
        # deviations, so compute them once with the player absent.
        others: list[int | None] = [None] * len(self.passive)
        for x, choice in enumerate(profile):
            if x == player:
                continue
            for y in self.active[x].strategies[choice]:
                cur = others[y]
                if cur is None or self._rank[y][x] < self._rank[y][cur]:
                    others[y] = x
        out = []
        for strat in self.active[player].strategies:
            total = 0
            for y in strat:
                incumbent = others[y]
                if incumbent is None or self._rank[y][player] < self._rank[y][incumbent]:
                    total += self.passive[y].value
            out.append(total)
        return out

    def passive_index(self, name: str) -> int:
        for y, p in enumerate(self.passive):
            if p.name == name:
                return y
        raise KeyError(name)


def lint_lower_ideal(game: TwoSidedMarketGame) -> list[str]:
    """Report strategies whose subsets are not all available.

    Strategy families are not required to be lower-ideal at construction
    (gadget games list strategies explicitly); this on-demand check names
    each (agent, strategy, missing subset) violation.
    """
    findings = []
    for agent in game.active:
        family = set(agent.strategies)
        for strat in agent.strategies:
            for y in strat:
                smaller = strat - {y}
                if smaller not in family:
                    findings.append(
                        f"{agent.name}: subset {sorted(smaller)} of "
                        f"{sorted(strat)} is not a strategy"
                    )
    return findings
