"""Common evaluation interface over the concrete game classes."""

from __future__ import annotations

from typing import Sequence

from ..profiles import Profile, validate_profile


class SuccinctGame:
    """A finite strategic game evaluated through exact integer utilities.

    Subclasses set ``strategy_counts`` and implement ``utility``. Games are
    immutable after construction; every evaluation is a pure function of
    (game, player, profile).
    """

    strategy_counts: tuple[int, ...]

    @property
    def num_players(self) -> int:
        return len(self.strategy_counts)

    def utility(self, profile: Profile, player: int) -> int:
        raise NotImplementedError

    def validate_profile(self, profile: Sequence[int]) -> Profile:
        return validate_profile(self.strategy_counts, profile)

    def utilities(self, profile: Profile) -> tuple[int, ...]:
        return tuple(self.utility(profile, i) for i in range(self.num_players))


class CostGame(SuccinctGame):
    """A cost-minimizing game; utility is the negated cost."""

    def cost(self, profile: Profile, player: int) -> int:
        raise NotImplementedError

    def utility(self, profile: Profile, player: int) -> int:
        return -self.cost(profile, player)
