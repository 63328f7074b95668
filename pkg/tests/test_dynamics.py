import random
from fractions import Fraction

import pytest

from sinkeq.dot import export_dot
from sinkeq.dynamics import (
    Answer,
    EdgeSemantics,
    FirstImprover,
    PriorityList,
    RandomImprover,
    StateGraph,
    WalkOutcome,
    forward_closure,
    has_non_singleton_sink,
    has_singleton_sink,
    in_a_sink,
    is_alpha_ne,
    is_pure_ne,
    rosenthal_potential,
    sccs,
    simulate_walk,
    sinks,
)
from sinkeq.errors import CapExceededError, UnsupportedGameError
from sinkeq.games import CongestionGame, TableGame, matching_pennies, prisoners_dilemma

from _oracles import bitset_bottom_sccs


def successor_fn(graph):
    return lambda v: [w for w, _ in graph.successors(v)]


def test_improving_moves_empty_at_pure_ne():
    pd = prisoners_dilemma()
    graph = StateGraph(pd)
    assert graph.improving_moves((1, 1)) == []
    assert is_pure_ne(pd, (1, 1))
    assert not is_pure_ne(pd, (0, 0))


def test_matching_pennies_has_one_mover_per_state():
    mp = matching_pennies()
    graph = StateGraph(mp)
    for profile in mp.codec.all_profiles():
        moves = graph.improving_moves(profile)
        assert len(moves) == 1


def test_canonical_move_order():
    game = TableGame((2, 2), [[0, 1, 0, 1], [0, 0, 1, 1]])
    graph = StateGraph(game)
    moves = graph.improving_moves((0, 0))
    assert moves == [(0, 1, 1), (1, 1, 1)]


def test_best_response_edges_subset_of_improvement():
    rng = random.Random(3)
    for _ in range(20):
        game = TableGame.random(rng)
        imp = StateGraph(game, EdgeSemantics.IMPROVEMENT)
        br = StateGraph(game, EdgeSemantics.BEST_RESPONSE)
        for profile in game.codec.all_profiles():
            br_moves = set(br.improving_moves(profile))
            imp_moves = set(imp.improving_moves(profile))
            assert br_moves <= imp_moves


def test_single_strategy_game_is_pure_ne():
    game = TableGame((1, 1), [[0], [0]])
    assert is_pure_ne(game, (0, 0))
    assert has_singleton_sink(game)


def test_alpha_ne_boundary_and_strictness():
    game = CongestionGame(
        ["cheap", "dear"],
        [[[1], [0]]],  # strategy 0 -> dear (100), strategy 1 -> cheap (99)
        [{1: 99}, {1: 100}],
    )
    profile = (0,)
    assert is_alpha_ne(game, profile, Fraction(5, 100))
    assert not is_alpha_ne(game, profile, Fraction(1, 1000))
    # boundary: (1 - alpha) * 100 == 99 exactly at alpha = 1/100
    assert is_alpha_ne(game, profile, Fraction(1, 100))


def test_alpha_ne_on_utility_game_unsupported():
    with pytest.raises(UnsupportedGameError):
        is_alpha_ne(prisoners_dilemma(), (1, 1), Fraction(1, 2))


def test_alpha_ne_true_at_pure_ne():
    game = CongestionGame(
        ["e", "f"], [[[0], [1]], [[0], [1]]],
        [{1: 1, 2: 2}, {1: 1, 2: 2}],
    )
    for profile in game.codec.all_profiles():
        if is_pure_ne(game, profile):
            assert is_alpha_ne(game, profile, Fraction(1, 2))


def test_forward_closure_of_pure_ne_is_singleton():
    pd = prisoners_dilemma()
    closure = forward_closure(StateGraph(pd), (1, 1))
    assert closure.states == [(1, 1)]
    assert closure.exhausted


def test_forward_closure_cycle_and_cap():
    mp = matching_pennies()
    graph = StateGraph(mp)
    closure = forward_closure(graph, (0, 0))
    assert len(closure) == 4
    assert closure.exhausted
    capped = forward_closure(graph, (0, 0), cap=2)
    assert not capped.exhausted
    assert len(capped) == 2


def test_sccs_handles_dag_and_cycle():
    edges = {1: [2], 2: [3], 3: []}
    comps = sccs([1, 2, 3], lambda v: edges[v])
    assert sorted(map(tuple, comps)) == [(1,), (2,), (3,)]
    ring = {0: [1], 1: [2], 2: [3], 3: [0]}
    comps = sccs([0, 1, 2, 3], lambda v: ring[v])
    assert len(comps) == 1 and len(comps[0]) == 4


def test_sccs_iterative_on_long_path():
    n = 50_000
    comps = sccs(range(n), lambda v: [v + 1] if v + 1 < n else [])
    assert len(comps) == n


def test_sinks_match_bitset_oracle_on_random_games():
    rng = random.Random(99)
    for _ in range(40):
        game = TableGame.random(rng)
        graph = StateGraph(game)
        codec = game.codec

        def successor_indices(k):
            return [
                codec.encode(w) for w, _ in graph.successors(codec.decode(k))
            ]

        _, bottoms = bitset_bottom_sccs(codec.num_profiles, successor_indices)
        expected = {
            frozenset(codec.decode(k) for k in comp) for comp in bottoms
        }
        got = {s.states for s in sinks(game)}
        assert got == expected
        # singleton sinks are exactly the pure equilibria
        pure = {
            p for p in codec.all_profiles() if is_pure_ne(game, p)
        }
        assert {next(iter(s.states)) for s in sinks(game) if s.singleton} == pure


def test_sinks_exist_and_cap_is_loud():
    mp = matching_pennies()
    found = sinks(mp)
    assert len(found) == 1 and len(found[0].states) == 4
    with pytest.raises(CapExceededError):
        sinks(mp, cap=2)


def test_pd_has_unique_singleton_sink():
    pd = prisoners_dilemma()
    found = sinks(pd)
    assert [s.singleton for s in found] == [True]
    assert found[0].states == {(1, 1)}
    assert has_singleton_sink(pd)
    assert not has_non_singleton_sink(pd)


def test_in_a_sink_answers():
    pd = prisoners_dilemma()
    assert in_a_sink(pd, (1, 1)) is Answer.YES
    assert in_a_sink(pd, (0, 0)) is Answer.NO
    mp = matching_pennies()
    assert in_a_sink(mp, (0, 0)) is Answer.YES
    assert in_a_sink(mp, (0, 0), cap=2) is Answer.INCONCLUSIVE


def test_in_a_sink_members_belong_to_some_sink():
    rng = random.Random(5)
    for _ in range(15):
        game = TableGame.random(rng)
        sink_states = set()
        for s in sinks(game):
            sink_states |= s.states
        for profile in game.codec.all_profiles():
            verdict = in_a_sink(game, profile)
            assert (verdict is Answer.YES) == (profile in sink_states)


def test_walk_from_pure_ne_has_no_steps():
    pd = prisoners_dilemma()
    walk = simulate_walk(StateGraph(pd), (1, 1))
    assert walk.outcome is WalkOutcome.REACHED_SINK_STATE
    assert walk.states == [(1, 1)]
    assert walk.moves == []


def test_walk_determinism_per_seed():
    mp = matching_pennies()
    graph = StateGraph(mp)
    a = simulate_walk(graph, (0, 0), RandomImprover(123), max_steps=9)
    b = simulate_walk(graph, (0, 0), RandomImprover(123), max_steps=9)
    assert a.states == b.states and a.moves == b.moves


def test_walk_policies():
    game = TableGame((2, 2), [[0, 1, 0, 1], [0, 0, 1, 1]])
    graph = StateGraph(game)
    first = simulate_walk(graph, (0, 0), FirstImprover(), max_steps=5)
    assert first.moves[0] == (0, 1)
    pri = simulate_walk(graph, (0, 0), PriorityList((1, 0)), max_steps=5)
    assert pri.moves[0] == (1, 1)


def test_walk_inside_cycle_reports_sink():
    mp = matching_pennies()
    walk = simulate_walk(StateGraph(mp), (0, 0), FirstImprover(), max_steps=7)
    assert walk.outcome is WalkOutcome.REACHED_SINK_STATE
    assert len(walk.moves) == 7


def test_rosenthal_potential_values():
    game = CongestionGame(
        ["e"], [[[0], []], [[0], []]], [{1: 1, 2: 5}],
    )
    assert rosenthal_potential(game, (1, 1)) == 0
    assert rosenthal_potential(game, (0, 0)) == 6  # d(1) + d(2)
    assert rosenthal_potential(game, (0, 1)) == 1


def test_rosenthal_rejects_weighted():
    game = CongestionGame(
        ["e"], [[[0]], [[0]]], [{1: 0, 2: 0, 3: 0}], weights=[1, 2],
    )
    with pytest.raises(UnsupportedGameError):
        rosenthal_potential(game, (0, 0))


def random_unweighted_congestion(rng):
    n_players = rng.randint(2, 3)
    n_res = rng.randint(1, 5)
    strategies = []
    for _ in range(n_players):
        strats = []
        for _ in range(rng.randint(1, 4)):
            strats.append([e for e in range(n_res) if rng.random() < 0.5])
        strategies.append(strats)
    delays = [
        {load: rng.randint(0, 9) for load in range(1, n_players + 1)}
        for _ in range(n_res)
    ]
    return CongestionGame([f"r{e}" for e in range(n_res)], strategies, delays)


def test_potential_descends_along_every_improvement_edge():
    rng = random.Random(2024)
    for _ in range(60):
        game = random_unweighted_congestion(rng)
        graph = StateGraph(game)
        for profile in game.codec.all_profiles():
            phi = rosenthal_potential(game, profile)
            cost_here = {p: game.cost(profile, p) for p in range(game.num_players)}
            for player, strategy, new_u in graph.improving_moves(profile):
                moved = profile[:player] + (strategy,) + profile[player + 1:]
                drop = cost_here[player] - (-new_u)
                assert drop > 0
                assert phi - rosenthal_potential(game, moved) == drop


def test_dot_export_golden():
    mp = matching_pennies()
    graph = StateGraph(mp)
    vertices = list(mp.codec.all_profiles())
    sink_states = sinks(mp)[0].states
    dot = export_dot(graph, vertices, sink_states)
    assert dot == (
        "digraph state_graph {\n"
        '  n0 [label="0" shape=doublecircle];\n'
        '  n1 [label="1" shape=doublecircle];\n'
        '  n2 [label="2" shape=doublecircle];\n'
        '  n3 [label="3" shape=doublecircle];\n'
        '  n0 -> n2 [label="1"];\n'
        '  n1 -> n0 [label="0"];\n'
        '  n2 -> n3 [label="0"];\n'
        '  n3 -> n1 [label="1"];\n'
        "}\n"
    )
    decoded = export_dot(graph, vertices[:1], set(), decode=True)
    assert 'label="0: (0, 0)"' in decoded


def test_pure_ne_is_singleton_sink_under_both_semantics():
    rng = random.Random(61)
    for _ in range(15):
        game = TableGame.random(rng)
        pure = {p for p in game.codec.all_profiles() if is_pure_ne(game, p)}
        for semantics in (EdgeSemantics.IMPROVEMENT, EdgeSemantics.BEST_RESPONSE):
            singletons = {
                next(iter(s.states))
                for s in sinks(game, semantics) if s.singleton
            }
            assert pure <= singletons
            if semantics is EdgeSemantics.IMPROVEMENT:
                assert singletons == pure


def test_best_response_ties_become_parallel_edges():
    # player 0 has two distinct maximal targets from strategy 0
    game = TableGame((3, 1), [[0, 5, 5], [0, 0, 0]])
    graph = StateGraph(game, EdgeSemantics.BEST_RESPONSE)
    moves = graph.improving_moves((0, 0))
    assert moves == [(0, 1, 5), (0, 2, 5)]
