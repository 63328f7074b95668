"""Independent oracles the tests check the library against.

Everything here is deliberately written from the definitions, without reusing
the library's evaluation or graph code paths.
"""

from __future__ import annotations

import itertools


def congestion_cost_by_resource(game, profile, player):
    """Per-resource accumulation written independently of CongestionGame.cost."""
    total = 0
    for e in range(len(game.resources)):
        users = [i for i, c in enumerate(profile) if e in game.strategies[i][c]]
        if player not in users:
            continue
        if game.mode == "shared":
            load = sum(game.weights[i] for i in users)
            total += game.delays[e][load]
        else:
            total += game.delays[e][player][len(users)]
    return total


def market_utility_by_winner_sets(game, profile, player):
    """Recompute a market utility by scanning every passive agent."""
    total = 0
    for y, passive in enumerate(game.passive):
        demanders = [
            x for x, c in enumerate(profile) if y in game.active[x].strategies[c]
        ]
        if not demanders:
            continue
        best = min(demanders, key=lambda x: passive.preference.index(x))
        if best == player:
            total += passive.value
    return total


def bitset_bottom_sccs(num_vertices, successor_indices):
    """Bottom SCCs via boolean transitive closure over integer bitsets.

    ``successor_indices(v)`` yields successor vertex indices. Two vertices are
    in one SCC iff they reach each other; a component is a sink iff its
    reachability set equals the component.
    """
    reach = []
    for v in range(num_vertices):
        mask = 1 << v
        for w in successor_indices(v):
            mask |= 1 << w
        reach.append(mask)
    changed = True
    while changed:
        changed = False
        for v in range(num_vertices):
            acc = reach[v]
            m = acc
            while m:
                low = m & -m
                w = low.bit_length() - 1
                acc |= reach[w]
                m ^= low
            if acc != reach[v]:
                reach[v] = acc
                changed = True
    assigned = [None] * num_vertices
    components = []
    for v in range(num_vertices):
        if assigned[v] is not None:
            continue
        comp = [
            w for w in range(num_vertices)
            if reach[v] >> w & 1 and reach[w] >> v & 1
        ]
        for w in comp:
            assigned[w] = len(components)
        components.append(comp)
    bottoms = []
    for comp in components:
        members = set(comp)
        if all(w in members for v in comp for w in successor_indices(v)):
            bottoms.append(frozenset(comp))
    return components, bottoms


def brute_force_satisfiable(formula):
    for bits in itertools.product([False, True], repeat=formula.num_vars):
        if formula.evaluate(dict(zip(range(1, formula.num_vars + 1), bits))):
            return True
    return False


def direct_tm_rejects(machine, x, t, halt_is_accept=False, max_steps=1_000_000):
    """Simulate a machine on input x within t cells, with cycle detection.

    Returns True when the run halts (and halting means reject). Leaving the
    workspace or cycling counts as non-rejecting, matching the wrapper's
    erase-and-restart behavior.
    """
    tape = ["b"] * t
    for k, ch in enumerate(x):
        tape[k] = ch
    state, head = machine.q0, 0
    seen = set()
    for _ in range(max_steps):
        if state == machine.q_halt:
            return not halt_is_accept
        key = (state, head, tuple(tape))
        if key in seen:
            return False
        seen.add(key)
        q2, write, move = machine.delta[(state, tape[head])]
        tape[head] = write
        head += {"L": -1, "S": 0, "R": 1}[move]
        state = q2
        if not 0 <= head < t:
            return False
    raise RuntimeError("oracle did not resolve")
