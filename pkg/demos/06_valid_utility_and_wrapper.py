"""Valid-utility checking and the self-restarting machine wrapper.

A valid-utility instance needs a submodular, non-decreasing social function,
utilities that cover each player's marginal contribution, and a utility sum
bounded by the social value. The checker enumerates the whole subset lattice
and reports the first counterexample per failed property.

The wrapper turns any bounded machine-and-input pair into a self-starting
machine that halts exactly on rejection: it writes the input, zeroes a tape
counter, simulates step by step, and erases everything to restart whenever
the machine accepts, overflows the counter, or leaves its workspace.
"""

from sinkeq.games.valid_utility import (
    ValidUtilityInstance,
    check_valid_utility,
    coverage_instance,
)
from sinkeq.turing import TMSpec, counter_width, run_bounded, wrap_machine

print("Coverage game: two players pick expansions over {a, b} and {b, c};")
print("the social value is the size of the union, utilities are marginals.")
base = coverage_instance(
    [("a", "b"), ("b", "c")],
    [
        (frozenset(), frozenset({"a"}), frozenset({"a", "b"})),
        (frozenset(), frozenset({"b"}), frozenset({"b", "c"})),
    ],
)
report = check_valid_utility(base)
print("  nondecreasing:", report.nondecreasing)
print("  submodular:", report.submodular)
print("  marginal_utility:", report.marginal_utility)
print("  sum_bounded:", report.sum_bounded)

print("\nLower one utility below its marginal contribution:")


def dented(sets, player):
    u = base.utility_fn(sets, player)
    if player == 0 and sets[0] == frozenset({"a", "b"}):
        return u - 1
    return u


report = check_valid_utility(ValidUtilityInstance(
    base.ground_sets, base.feasible, dented, base.social_fn
))
print("  marginal_utility now:", report.marginal_utility)
print("  counterexample:", report.counterexamples["marginal_utility"])

print("\nThe wrapper, on a machine that rejects exactly inputs ending in 1:")
ends_in_one = TMSpec(6, 0, 5, 3, {
    (0, "0"): (1, "0", "R"), (0, "1"): (2, "1", "R"), (0, "b"): (3, "b", "S"),
    (1, "0"): (1, "0", "R"), (1, "1"): (2, "1", "R"), (1, "b"): (3, "b", "S"),
    (2, "0"): (1, "0", "R"), (2, "1"): (2, "1", "R"), (2, "b"): (5, "b", "S"),
    (3, "0"): (3, "0", "S"), (3, "1"): (3, "1", "S"), (3, "b"): (3, "b", "S"),
    (4, "0"): (3, "0", "S"), (4, "1"): (3, "1", "S"), (4, "b"): (3, "b", "S"),
})
print("  counter width for t=3:", counter_width(ends_in_one, 3), "bits")
for word in ("011", "010", "11", ""):
    wrapped = wrap_machine(ends_in_one, word, 3)
    outcome = run_bounded(wrapped, cap=5_000_000)
    verdict = "halts (rejects)" if outcome.halted else f"loops ({outcome})"
    print(f"  input {word!r:6}: wrapper {verdict}")
