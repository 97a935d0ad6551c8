"""
Automata, words and merges
==========================

A DFA is a transition table plus termination bits.  Here we build the
two-state parity automaton, run words through it, and glue states together
with merge maps.
"""

from ergodfa import Dfa, MergeMap, Nfa, apply_merge, characteristic, tau_star, word

# State 0 is the start; 'a' keeps the state, 'b' flips it.  Accepting = odd number of b's.
parity = Dfa.from_table([[0, 1], [1, 0]], termination=[0, 1])
for w in ["", "b", "ab", "bab", "abba"]:
    print(f"f({w!r}) = {characteristic(parity, word(w))}")

# The set of states reachable from the start
print("reachable:", sorted(tau_star(parity, {parity.initial})))

# A four-state copy where states 2 and 3 duplicate 0 and 1
dup = Dfa.from_table([[2, 1], [3, 0], [0, 3], [1, 2]], termination=[0, 1, 0, 1])

# Merging 0 with 2 keeps id 0 and shifts 3 down to 2
psi = MergeMap.elementary(4, 0, 2)
once = apply_merge(dup, psi)
print("after merging 0 and 2:", once.to_dict()["transitions"])

# One more merge collapses the copy of state 1
twice = apply_merge(once, MergeMap.elementary(3, 1, 2))
print("after merging 1 and 2:", twice.to_dict()["transitions"], type(twice).__name__)

# Nondeterminism: a state may have several successors per symbol
nfa = Nfa([[{0, 1}, {0}], [{1}, {0}]], termination=[0, 1])
print("NFA accepts 'a'?", characteristic(nfa, word("a")))
