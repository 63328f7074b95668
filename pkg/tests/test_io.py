import pytest

from sinkeq.cnf import CnfFormula, parse_dimacs
from sinkeq.compilers import compile_sat_market, compile_tm_weighted
from sinkeq.dynamics import has_singleton_sink
from sinkeq.errors import FormatError
from sinkeq.games import (
    AnonymousGame,
    AnonymousPlayer,
    CongestionGame,
    count_ge,
    coverage_instance,
    prisoners_dilemma,
)
from sinkeq.io import (
    game_to_json,
    parse_game_file,
    parse_sidecar,
    parse_tm_file,
    serialize_game,
    serialize_sidecar,
    serialize_tm,
)


def round_trip(game):
    text = serialize_game(game)
    again = parse_game_file(text)
    assert serialize_game(again) == text
    return again


def test_minimal_table_game():
    game = parse_game_file(
        '{"class": "table", "strategy_counts": [1], "tables": [[7]]}'
    )
    assert game.codec.num_profiles == 1
    assert game.utility((0,), 0) == 7


def test_table_round_trip_preserves_answers():
    pd = prisoners_dilemma()
    again = round_trip(pd)
    assert again.tables == pd.tables


def test_congestion_round_trip_both_modes():
    shared = CongestionGame(
        ["e", "f"], [[[0], [1]], [[0, 1], []]],
        [{1: 0, 2: 3, 3: 5}, {1: 1, 2: 2, 3: 4}], weights=[1, 2],
    )
    again = round_trip(shared)
    assert again.weights == (1, 2)
    specific = CongestionGame(
        ["e"], [[[0]], [[0]]],
        [[{1: 1, 2: 5}, {1: 2, 2: 9}]], mode="player_specific",
    )
    again = round_trip(specific)
    assert again.cost((0, 0), 1) == 9


def test_anonymous_round_trip():
    game = AnonymousGame(
        ["a", "b"],
        [
            AnonymousPlayer("p0", frozenset({0, 1}), ((0, count_ge(0, 2)),)),
            AnonymousPlayer("p1", frozenset({0}), ()),
        ],
    )
    again = round_trip(game)
    assert again.utility((0, 0), 0) == 2


def test_market_round_trip_preserves_decision():
    compiled = compile_sat_market(CnfFormula(1, ((1, 1, 1), (-1, -1, -1))))
    again = round_trip(compiled.game)
    assert has_singleton_sink(again) == has_singleton_sink(compiled.game)


def test_valid_utility_round_trip():
    inst = coverage_instance(
        [("a", "b"), ("b",)],
        [(frozenset(), frozenset({"a"})), (frozenset(), frozenset({"b"}))],
    )
    again = round_trip(inst)
    for profile in inst.codec.all_profiles():
        for player in range(2):
            assert again.utility(profile, player) == inst.utility(profile, player)


def test_unknown_class_rejected():
    with pytest.raises(FormatError, match="unknown game class"):
        parse_game_file('{"class": "mystery"}')


def test_malformed_json_has_path():
    with pytest.raises(FormatError, match="\\$"):
        parse_game_file("{nope")


def test_missing_delay_entry_diagnostic_names_resource():
    doc = {
        "class": "congestion",
        "resources": ["edge_x"],
        "mode": "shared",
        "weights": [1, 1],
        "strategies": [[[0]], [[0]]],
        "delays": [[[1, 0]]],  # load 2 reachable but missing
    }
    import json
    with pytest.raises(FormatError, match="edge_x"):
        parse_game_file(json.dumps(doc))


def test_tm_round_trip(flipper):
    text = serialize_tm(flipper)
    again = parse_tm_file(text)
    assert again.delta == flipper.delta
    assert serialize_tm(again) == text


def test_sidecar_round_trip(flipper):
    compiled = compile_tm_weighted(flipper)
    game_text = serialize_game(compiled.game)
    sidecar_text = serialize_sidecar(compiled)
    game = parse_game_file(game_text)
    again = parse_sidecar(sidecar_text, game)
    assert again.initial == compiled.initial
    assert again.symbols.players == compiled.symbols.players
    assert again.symbols.strategies == compiled.symbols.strategies
    assert again.penalty == compiled.penalty
    assert again.machine.delta == flipper.delta


def test_dimacs_basic_and_negation():
    formula = parse_dimacs("c comment\np cnf 1 1\n1 1 1 0\n")
    assert formula.clauses == ((1, 1, 1),)
    formula = parse_dimacs("p cnf 3 1\n1 -2 3 0\n")
    assert formula.clauses == ((1, -2, 3),)


def test_dimacs_rejects_short_clause():
    with pytest.raises(FormatError, match="clause 0 has 2"):
        parse_dimacs("p cnf 2 1\n1 -2 0\n")


def test_dimacs_rejects_bad_header_count():
    with pytest.raises(FormatError, match="promised"):
        parse_dimacs("p cnf 1 2\n1 1 1 0\n")


def test_game_to_json_deterministic():
    pd = prisoners_dilemma()
    assert game_to_json(pd) == game_to_json(prisoners_dilemma())
