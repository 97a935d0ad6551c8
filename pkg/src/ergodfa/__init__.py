"""Structure of random walks on random deterministic finite automata."""

from .automata import (
    Dfa, MergeMap, Nfa, apply_merge, characteristic, extend_transition, tau1, tau_star, word,
)
from .bounds import (
    CensusResult, brute_force_census, emk_bound, grusho_constant, technical_lemma_value,
)
from .errors import *  # noqa: F401,F403
from .markov import (
    TransitionMatrix, WalkResult, simulate_walk, stationary, step, transition_matrix, tv_distance,
)
from .minimize import (
    MergeTrace, NerodePartition, are_equivalent, is_isomorphic, minimize,
    myhill_nerode_classes, reachable_trim,
)
from .randgen import SampleSpec, derive_trial_seed, sample_dfa
from .structure import (
    ClassDecomposition, closed_class_sizes, communicating_classes, is_ergodic_structure,
    period_of_class,
)

__version__ = "0.1.0"
