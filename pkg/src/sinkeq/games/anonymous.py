"""Anonymous games: utilities depend on own strategy plus occupancy counts.

The predicate mini-language is a closed AST over strategy-occupancy counts:
integer constants, count references, + and -, the five comparisons, and
conjunction. A rule list per (player, strategy) acts as a disjunction; any
firing rule yields utility 2, otherwise an allowed strategy yields 1 and a
disallowed one 0. Counts include the evaluating player's own choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ConfigurationError
from ..profiles import Profile, ProfileCodec
from .base import SuccinctGame

_OPS = {
    "==": lambda a, b: a == b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
}


@dataclass(frozen=True)
class Const:
    value: int

    def eval(self, hist) -> int:
        return self.value

    def strategy_refs(self):
        return ()

    def to_json(self):
        return {"const": self.value}


@dataclass(frozen=True)
class Count:
    strategy: int

    def eval(self, hist) -> int:
        return hist[self.strategy]

    def strategy_refs(self):
        return (self.strategy,)

    def to_json(self):
        return {"count": self.strategy}


@dataclass(frozen=True)
class Add:
    lhs: object
    rhs: object

    def eval(self, hist) -> int:
        return self.lhs.eval(hist) + self.rhs.eval(hist)

    def strategy_refs(self):
        return (*self.lhs.strategy_refs(), *self.rhs.strategy_refs())

    def to_json(self):
        return {"add": [self.lhs.to_json(), self.rhs.to_json()]}


@dataclass(frozen=True)
class Sub:
    lhs: object
    rhs: object

    def eval(self, hist) -> int:
        return self.lhs.eval(hist) - self.rhs.eval(hist)

    def strategy_refs(self):
        return (*self.lhs.strategy_refs(), *self.rhs.strategy_refs())

    def to_json(self):
        return {"sub": [self.lhs.to_json(), self.rhs.to_json()]}


@dataclass(frozen=True)
class Cmp:
    op: str
    lhs: object
    rhs: object

    def __post_init__(self):
        if self.op not in _OPS:
            raise ConfigurationError(f"unknown comparison {self.op!r}")

    def eval(self, hist) -> bool:
        return _OPS[self.op](self.lhs.eval(hist), self.rhs.eval(hist))

    def strategy_refs(self):
        return (*self.lhs.strategy_refs(), *self.rhs.strategy_refs())

    def to_json(self):
        return {"cmp": self.op, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}


@dataclass(frozen=True)
class And:
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))

    def eval(self, hist) -> bool:
        return all(p.eval(hist) for p in self.parts)

    def strategy_refs(self):
        return tuple(r for p in self.parts for r in p.strategy_refs())

    def to_json(self):
        return {"and": [p.to_json() for p in self.parts]}


def expr_from_json(doc):
    if "const" in doc:
        return Const(int(doc["const"]))
    if "count" in doc:
        return Count(int(doc["count"]))
    if "add" in doc:
        lhs, rhs = doc["add"]
        return Add(expr_from_json(lhs), expr_from_json(rhs))
    if "sub" in doc:
        lhs, rhs = doc["sub"]
        return Sub(expr_from_json(lhs), expr_from_json(rhs))
    raise ConfigurationError(f"unknown expression node {doc!r}")


def predicate_from_json(doc):
    if "and" in doc:
        return And(*(predicate_from_json(p) for p in doc["and"]))
    if "cmp" in doc:
        return Cmp(doc["cmp"], expr_from_json(doc["lhs"]), expr_from_json(doc["rhs"]))
    raise ConfigurationError(f"unknown predicate node {doc!r}")


# Shorthand builders; keep gadget-definition code readable.
def count_eq(strategy: int, value: int) -> Cmp:
    return Cmp("==", Count(strategy), Const(value))


def count_ge(strategy: int, value: int) -> Cmp:
    return Cmp(">=", Count(strategy), Const(value))


@dataclass(frozen=True)
class AnonymousPlayer:
    name: str
    allowed: frozenset[int]
    rules: tuple  # of (strategy index, predicate)


class AnonymousGame(SuccinctGame):
    """Common strategy set, per-player allowed sets, and {0,1,2} utilities."""

    def __init__(self, strategy_names: Sequence[str], players: Sequence[AnonymousPlayer]):
        self.strategy_names = tuple(str(s) for s in strategy_names)
        if len(set(self.strategy_names)) != len(self.strategy_names):
            raise ConfigurationError("duplicate strategy names")
        k = len(self.strategy_names)
        self.players = tuple(players)
        for p in self.players:
            for s in p.allowed:
                if not 0 <= s < k:
                    raise ConfigurationError(
                        f"player {p.name}: allowed strategy {s} out of range"
                    )
            if not p.allowed:
                raise ConfigurationError(f"player {p.name}: empty allowed set")
            for strat, pred in p.rules:
                if strat not in p.allowed:
                    raise ConfigurationError(
                        f"player {p.name}: rule on disallowed strategy {strat}"
                    )
                for ref in pred.strategy_refs():
                    if not 0 <= ref < k:
                        raise ConfigurationError(
                            f"player {p.name}: predicate references undeclared "
                            f"strategy {ref}"
                        )
        self.strategy_counts = (k,) * len(self.players)
        self.codec = ProfileCodec(self.strategy_counts)
        self._rules_by_strategy = tuple(
            {s: tuple(pred for st, pred in p.rules if st == s) for s in p.allowed}
            for p in self.players
        )

    def histogram(self, profile: Profile) -> list[int]:
        hist = [0] * len(self.strategy_names)
        for choice in profile:
            hist[choice] += 1
        return hist

    def _utility_from_hist(self, player: int, choice: int, hist) -> int:
        rules = self._rules_by_strategy[player].get(choice)
        if rules is None:
            return 0
        for pred in rules:
            if pred.eval(hist):
                return 2
        return 1

    def utility(self, profile: Profile, player: int) -> int:
        return self._utility_from_hist(player, profile[player], self.histogram(profile))

    def deviation_utilities(self, profile: Profile, player: int):
        hist = self.histogram(profile)
        current = profile[player]
        out = []
        for choice in range(len(self.strategy_names)):
            hist[current] -= 1
            hist[choice] += 1
            out.append(self._utility_from_hist(player, choice, hist))
            hist[choice] -= 1
            hist[current] += 1
        return out

    def strategy_index(self, name: str) -> int:
        return self.strategy_names.index(name)
