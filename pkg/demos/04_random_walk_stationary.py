"""
Random walks and the stationary law
===================================

Picking a symbol uniformly at random at each step turns a DFA into a Markov
chain.  For an ergodic automaton the walk forgets where it started.
"""

import numpy as np

from ergodfa import (
    NotConverged, SampleSpec, communicating_classes, sample_dfa, simulate_walk, stationary,
    transition_matrix, tv_distance,
)
from ergodfa.markov import one_hot
from ergodfa.oracles import stationary_linear

np.set_printoptions(precision=4, suppress=True)

a = sample_dfa(SampleSpec(n=12, r=2, master_seed=7))
print("ergodic:", communicating_classes(a).is_ergodic)

P = transition_matrix(a)
p = stationary(P)
print("stationary law:", p)

# The linear solve of p P = p agrees
print("max gap to linear solve:", np.abs(p - stationary_linear(P.dense())).max())

# Every start leads to the same limit
print("TV between starts 0 and 11:",
      tv_distance(stationary(P, start=one_hot(12, 0)), stationary(P, start=one_hot(12, 11))))

# Long-run visit frequencies of one walk approach p
for steps in (10**3, 10**4, 10**5, 10**6):
    walk = simulate_walk(a, seed=1, steps=steps)
    print(f"{steps:>8} steps: TV to stationary = {tv_distance(walk.frequencies, p):.4f}")

# A pure 2-cycle has no limit
from ergodfa import Dfa
try:
    stationary(transition_matrix(Dfa.from_table([[1], [0]], [0, 0])))
except NotConverged as exc:
    print("2-cycle:", exc)
