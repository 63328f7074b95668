"""Implicit state graphs, sink equilibria, and dynamics simulation.

The state graph has one vertex per strategy profile and one labeled arc per
qualifying unilateral move. Moves must strictly increase the mover's utility;
under best-response semantics only moves to a maximum-utility strategy
qualify, which keeps every best-response edge an improvement edge.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import CapExceededError, UnsupportedGameError
from .games.base import CostGame, SuccinctGame
from .games.congestion import CongestionGame
from .profiles import Profile


class EdgeSemantics(Enum):
    IMPROVEMENT = "improvement"
    BEST_RESPONSE = "best-response"


class Answer(Enum):
    YES = "true"
    NO = "false"
    INCONCLUSIVE = "inconclusive"


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def default_profile_cap() -> int:
    cap = _env_cap("SINKEQ_DEFAULT_CAP", 2**26)
    return _env_cap("SINKEQ_PROFILE_CAP", cap)


def default_closure_cap() -> int:
    cap = _env_cap("SINKEQ_DEFAULT_CAP", 10**7)
    return _env_cap("SINKEQ_CLOSURE_CAP", cap)


Move = tuple[int, int, int]  # (player, strategy, new utility)


class StateGraph:
    """View of a game's state graph under one edge semantics."""

    def __init__(self, game: SuccinctGame, semantics: EdgeSemantics = EdgeSemantics.IMPROVEMENT):
        self.game = game
        self.semantics = semantics
        self.codec = game.codec

    def _deviation_utilities(self, profile: Profile, player: int) -> list[int]:
        special = getattr(self.game, "deviation_utilities", None)
        if special is not None:
            return special(profile, player)
        out = []
        for s in range(self.game.strategy_counts[player]):
            if s == profile[player]:
                out.append(self.game.utility(profile, player))
            else:
                moved = profile[:player] + (s,) + profile[player + 1:]
                out.append(self.game.utility(moved, player))
        return out

    def improving_moves(self, profile: Profile) -> list[Move]:
        """Qualifying moves in canonical order (ascending player, strategy)."""
        moves: list[Move] = []
        for player in range(self.game.num_players):
            devs = self._deviation_utilities(profile, player)
            current = devs[profile[player]]
            if self.semantics is EdgeSemantics.BEST_RESPONSE:
                best = max(devs)
                if best > current:
                    moves.extend(
                        (player, s, u) for s, u in enumerate(devs) if u == best
                    )
            else:
                moves.extend(
                    (player, s, u) for s, u in enumerate(devs) if u > current
                )
        return moves

    def successors(self, profile: Profile) -> list[tuple[Profile, int]]:
        """(next profile, moving player) pairs, canonical order."""
        return [
            (profile[:p] + (s,) + profile[p + 1:], p)
            for p, s, _ in self.improving_moves(profile)
        ]


@dataclass(frozen=True)
class SinkEquilibrium:
    states: frozenset[Profile]

    @property
    def singleton(self) -> bool:
        return len(self.states) == 1


@dataclass
class Closure:
    states: list[Profile]  # BFS order from the start profile
    exhausted: bool  # False when the cap cut enumeration short
    index: dict[Profile, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {s: k for k, s in enumerate(self.states)}

    def __contains__(self, profile: Profile) -> bool:
        return profile in self.index

    def __len__(self) -> int:
        return len(self.states)


def is_pure_ne(game: SuccinctGame, profile: Profile) -> bool:
    graph = StateGraph(game, EdgeSemantics.IMPROVEMENT)
    return not graph.improving_moves(profile)


def is_alpha_ne(game: SuccinctGame, profile: Profile, alpha) -> bool:
    """Every deviation's cost stays at least (1 - alpha) of the current cost."""
    if not isinstance(game, CostGame):
        raise UnsupportedGameError("alpha-Nash equilibria are defined on cost games")
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    threshold = 1 - alpha
    for player in range(game.num_players):
        here = Fraction(game.cost(profile, player))
        for s in range(game.strategy_counts[player]):
            if s == profile[player]:
                continue
            moved = profile[:player] + (s,) + profile[player + 1:]
            if Fraction(game.cost(moved, player)) < threshold * here:
                return False
    return True


def forward_closure(graph: StateGraph, start: Profile, cap: int | None = None) -> Closure:
    """All profiles reachable from ``start``; deterministic BFS order."""
    if cap is None:
        cap = default_closure_cap()
    start = tuple(start)
    order = [start]
    index = {start: 0}
    head = 0
    while head < len(order):
        current = order[head]
        head += 1
        for nxt, _ in graph.successors(current):
            if nxt not in index:
                if len(order) >= cap:
                    return Closure(order, exhausted=False, index=index)
                index[nxt] = len(order)
                order.append(nxt)
    return Closure(order, exhausted=True, index=index)


def sccs(vertices: Sequence, successors: Callable[[object], Iterable]) -> list[list]:
    """Tarjan partition, iterative, restricted to the given vertex set.

    Components come out in completion order, deterministic for a fixed
    vertex order; vertices inside each component keep discovery order.
    """
    allowed = set(vertices)
    index: dict = {}
    low: dict = {}
    onstack: set = set()
    stack: list = []
    components: list[list] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack.add(root)
        work = [(root, iter([w for w in successors(root) if w in allowed]))]
        while work:
            v, edges = work[-1]
            pushed = False
            for w in edges:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter([u for u in successors(w) if u in allowed])))
                    pushed = True
                    break
                if w in onstack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if pushed:
                continue
            work.pop()
            if work and low[v] < low[work[-1][0]]:
                low[work[-1][0]] = low[v]
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                component.reverse()
                components.append(component)
    return components


def bottom_sccs(vertices: Sequence, successors: Callable) -> list[list]:
    """Components with no edge leaving them."""
    allowed = set(vertices)
    components = sccs(vertices, successors)
    comp_of = {}
    for k, comp in enumerate(components):
        for v in comp:
            comp_of[v] = k
    bottoms = []
    for k, comp in enumerate(components):
        closed = True
        for v in comp:
            for w in successors(v):
                if w in allowed and comp_of[w] != k:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            bottoms.append(comp)
    return bottoms


def _require_enumerable(game: SuccinctGame, cap: int | None) -> int:
    if cap is None:
        cap = default_profile_cap()
    size = game.codec.num_profiles
    if size > cap:
        raise CapExceededError(
            f"profile space has {size} states, above the cap of {cap}", cap
        )
    return size


def sinks(
    game: SuccinctGame,
    semantics: EdgeSemantics = EdgeSemantics.IMPROVEMENT,
    cap: int | None = None,
) -> list[SinkEquilibrium]:
    """All sink equilibria of the full state graph; at least one always exists."""
    _require_enumerable(game, cap)
    graph = StateGraph(game, semantics)
    vertices = list(game.codec.all_profiles())
    succ = lambda v: [w for w, _ in graph.successors(v)]
    bottoms = bottom_sccs(vertices, succ)
    bottoms.sort(key=lambda comp: min(game.codec.encode(v) for v in comp))
    return [SinkEquilibrium(frozenset(comp)) for comp in bottoms]


def in_a_sink(
    game: SuccinctGame,
    profile: Profile,
    semantics: EdgeSemantics = EdgeSemantics.IMPROVEMENT,
    cap: int | None = None,
) -> Answer:
    """Whether the profile lies in a sink equilibrium; inconclusive on cap.

    The profile is in a sink exactly when its whole forward closure can reach
    it back, i.e. the closure is one strongly connected component.
    """
    profile = game.validate_profile(profile)
    graph = StateGraph(game, semantics)
    closure = forward_closure(graph, profile, cap)
    if not closure.exhausted:
        return Answer.INCONCLUSIVE
    succ = lambda v: [w for w, _ in graph.successors(v)]
    components = sccs(closure.states, succ)
    for comp in components:
        if profile in comp:
            return Answer.YES if len(comp) == len(closure.states) else Answer.NO
    raise AssertionError("profile missing from its own closure")


def has_singleton_sink(game: SuccinctGame, cap: int | None = None) -> bool:
    """True when some profile is a pure Nash equilibrium; exhaustive scan."""
    _require_enumerable(game, cap)
    graph = StateGraph(game, EdgeSemantics.IMPROVEMENT)
    for profile in game.codec.all_profiles():
        if not graph.improving_moves(profile):
            return True
    return False


def has_non_singleton_sink(
    game: SuccinctGame,
    semantics: EdgeSemantics = EdgeSemantics.IMPROVEMENT,
    cap: int | None = None,
) -> bool:
    return any(not s.singleton for s in sinks(game, semantics, cap))


@dataclass(frozen=True)
class FirstImprover:
    pass


@dataclass(frozen=True)
class RandomImprover:
    seed: int = 0


@dataclass(frozen=True)
class PriorityList:
    order: tuple[int, ...]


class WalkOutcome(Enum):
    REACHED_SINK_STATE = "reached-sink-state"
    STILL_MOVING = "still-moving"


@dataclass
class WalkResult:
    states: list[Profile]
    moves: list[tuple[int, int]]  # (player, new strategy)
    outcome: WalkOutcome

    @property
    def final(self) -> Profile:
        return self.states[-1]


def simulate_walk(
    graph: StateGraph,
    start: Profile,
    policy=FirstImprover(),
    max_steps: int = 1000,
    closure_cap: int | None = None,
) -> WalkResult:
    """Walk the state graph from ``start`` under a move-selection policy.

    Deterministic given the policy (and its seed). The walk stops early at a
    pure NE; otherwise, after ``max_steps`` moves the final profile is
    classified by an `in_a_sink` check.
    """
    start = graph.game.validate_profile(start)
    rng = random.Random(policy.seed) if isinstance(policy, RandomImprover) else None
    states = [start]
    moves: list[tuple[int, int]] = []
    current = start
    for _ in range(max_steps):
        options = graph.improving_moves(current)
        if not options:
            return WalkResult(states, moves, WalkOutcome.REACHED_SINK_STATE)
        if isinstance(policy, FirstImprover):
            player, strategy, _ = options[0]
        elif isinstance(policy, RandomImprover):
            player, strategy, _ = rng.choice(options)
        elif isinstance(policy, PriorityList):
            by_player = {}
            for p, s, u in options:
                by_player.setdefault(p, (p, s, u))  # lowest strategy index wins ties
            for p in policy.order:
                if p in by_player:
                    player, strategy, _ = by_player[p]
                    break
            else:
                player, strategy, _ = options[0]
        else:
            raise TypeError(f"unknown policy {policy!r}")
        current = current[:player] + (strategy,) + current[player + 1:]
        states.append(current)
        moves.append((player, strategy))
    verdict = in_a_sink(graph.game, current, graph.semantics, closure_cap)
    outcome = (
        WalkOutcome.REACHED_SINK_STATE if verdict is Answer.YES else WalkOutcome.STILL_MOVING
    )
    return WalkResult(states, moves, outcome)


def rosenthal_potential(game: CongestionGame, profile: Profile) -> int:
    """Sum over resources of the delay prefix up to the profile's congestion.

    Along any improvement edge the potential drops by exactly the mover's
    cost decrease, so improvement dynamics cannot cycle.
    """
    if not isinstance(game, CongestionGame):
        raise UnsupportedGameError("the potential is defined for congestion games")
    game.require_unweighted_shared("rosenthal_potential")
    loads = game.loads(profile)
    total = 0
    for e, load in enumerate(loads):
        for j in range(1, load + 1):
            total += game.delays[e][j]
    return total
