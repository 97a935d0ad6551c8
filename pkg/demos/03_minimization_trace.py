"""
Minimization one merge at a time
================================

Minimizing a DFA here means: drop unreachable states, group states that
accept the same language, then collapse each group with two-state merges.
Every intermediate automaton is kept, so we can watch the walk structure
survive each step.
"""

from ergodfa import are_equivalent, communicating_classes, minimize, myhill_nerode_classes
from ergodfa import Dfa, reachable_trim

# Four states where 2 and 3 behave exactly like 0 and 1, plus an unreachable state 4
a = Dfa.from_table([[2, 1], [3, 0], [0, 3], [1, 2], [4, 0]], [0, 1, 0, 1, 1])

trimmed, renum = reachable_trim(a)
print("kept states:", renum)
print("language classes:", myhill_nerode_classes(trimmed).blocks)

res = minimize(a)
for i, (snap, psi) in enumerate(zip(res.trace.snapshots[1:], res.trace.maps), 1):
    dec = communicating_classes(snap)
    print(f"step {i}: merge map {psi.map} -> {snap.n} states, ergodic={dec.is_ergodic}")

print("minimal table:", res.dfa.to_dict()["transitions"], "phi:", res.dfa.termination)
print("same language:", are_equivalent(a, res.dfa))
print("where each original state went:", res.state_map)
