"""The anonymous-game gadget: machine steps from occupancy counts alone.

Payoffs see only how many players occupy each strategy, never who. Machine
state j is "j players on state^1", the head position is the count on
position^1, and the scanned symbol is recovered as the unique deficit
between the cell histogram and its tape-player copy. Two control players
pace a 19-row cascade per machine step.
"""

from sinkeq.compilers import (
    compile_tm_anonymous,
    decode_anonymous_config,
    verify_round_anonymous,
)
from sinkeq.turing import TMSpec, run_bounded

walker = TMSpec(
    num_states=3, q0=0, q_halt=2, t_prime=2,
    delta={
        (0, "b"): (1, "1", "R"),
        (0, "0"): (0, "1", "S"),
        (0, "1"): (1, "0", "R"),
        (1, "b"): (0, "b", "L"),
        (1, "0"): (0, "0", "L"),
        (1, "1"): (0, "1", "L"),
    },
)
print("Machine:", run_bounded(walker))

compiled = compile_tm_anonymous(walker)
game = compiled.game
print(f"Anonymous game: {game.num_players} players share",
      f"{len(game.strategy_names)} strategies")
print("Utility values are only 0 (disallowed), 1 (default), 2 (rule fired).")

print("\nRound 1 (each row of the cascade, mover by mover):")
report = verify_round_anonymous(compiled)
for move in report.trace:
    print(f"  {move.step:7s} {move.role:12s} -> {move.strategy}")
print("  table matched:", report.matches)
print("  decoded configuration:", report.end_config)

print("\nRound 2 chains directly off round 1's end profile;")
print("watch the tape players re-copy the changed cell histogram:")
second = verify_round_anonymous(compiled, report.end_profile)
for move in second.trace:
    if move.role.startswith("tape") or move.role == "control1":
        print(f"  {move.step:7s} {move.role:12s} -> {move.strategy}")
print("  decoded configuration:", second.end_config)

print("\nOccupancy counts after two rounds:")
hist = game.histogram(second.end_profile)
for name, count in zip(game.strategy_names, hist):
    if count:
        print(f"  {name}: {count}")
print("decode:", decode_anonymous_config(compiled, second.end_profile))
