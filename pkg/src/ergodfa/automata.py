"""Finite automata over dense integer alphabets.

States are the integers ``0..n-1`` and symbols the integers ``0..r-1``.  An
:class:`Nfa` stores, for every (state, symbol) pair, a frozenset of successor
states; a :class:`Dfa` is the special case where every such set is a
singleton, and additionally exposes the transition table as plain integers.

Strings are sequences of symbol ids.  For hand-written examples a ``str`` is
also accepted, letters being read as ``a -> 0``, ``b -> 1`` and so on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput, NonSurjectiveMap, TerminationMismatch

__all__ = [
    "Nfa",
    "Dfa",
    "MergeMap",
    "word",
    "extend_transition",
    "tau1",
    "tau_star",
    "characteristic",
    "apply_merge",
]


def word(x: str | Sequence[int]) -> tuple[int, ...]:
    """Convert ``"aba"`` style strings to symbol ids; sequences pass through."""
    if isinstance(x, str):
        return tuple(ord(c) - ord("a") for c in x)
    return tuple(int(s) for s in x)


@dataclass(frozen=True)
class Nfa:
    """Non-deterministic automaton ``(r, n, initial, transitions, termination)``.

    ``transitions[q][s]`` is the frozenset of successors of ``q`` on ``s``.
    Empty successor sets are allowed here, but the structure and Markov
    routines reject them.
    """

    transitions: tuple
    termination: tuple
    initial: int = 0
    r: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(frozenset(int(t) for t in cell) for cell in row)
                     for row in self.transitions)
        n = len(rows)
        if n == 0:
            raise InvalidInput("automaton needs at least one state")
        r = len(rows[0]) if self.r is None else int(self.r)
        if r < 1:
            raise InvalidInput("alphabet size must be at least 1")
        for q, row in enumerate(rows):
            if len(row) != r:
                raise InvalidInput(f"state {q} has {len(row)} transition entries, expected {r}")
            for cell in row:
                for t in cell:
                    if not 0 <= t < n:
                        raise InvalidInput(f"successor {t} of state {q} is out of range")
        phi = tuple(int(b) for b in self.termination)
        if len(phi) != n:
            raise InvalidInput(f"termination has {len(phi)} entries, expected {n}")
        if any(b not in (0, 1) for b in phi):
            raise InvalidInput("termination bits must be 0 or 1")
        if not 0 <= int(self.initial) < n:
            raise InvalidInput(f"initial state {self.initial} is out of range")
        object.__setattr__(self, "transitions", rows)
        object.__setattr__(self, "termination", phi)
        object.__setattr__(self, "initial", int(self.initial))
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return len(self.transitions)

    def successors(self, q: int, sigma: int) -> frozenset:
        return self.transitions[q][sigma]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted distinct one-step successors of every state (the arc set)."""
        return tuple(tuple(sorted(set().union(*row))) for row in self.transitions)

    def has_empty_transition(self) -> bool:
        return any(not cell for row in self.transitions for cell in row)

    def is_deterministic(self) -> bool:
        return all(len(cell) == 1 for row in self.transitions for cell in row)

    def with_initial(self, q: int) -> "Nfa":
        """The automaton ``A_q``: same structure, initial state ``q``."""
        return type(self)(self.transitions, self.termination, q, self.r)

    def to_dfa(self) -> "Dfa":
        if not self.is_deterministic():
            raise InvalidInput("automaton is not deterministic")
        return Dfa(self.transitions, self.termination, self.initial, self.r)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "initial": self.initial,
            "transitions": [[sorted(cell) for cell in row] for row in self.transitions],
            "termination": list(self.termination),
        }


@dataclass(frozen=True)
class Dfa(Nfa):
    """Deterministic automaton: every successor set is a singleton."""

    def __post_init__(self):
        rows = tuple(tuple(frozenset((c,)) if isinstance(c, (int, np.integer)) else c
                           for c in row) for row in self.transitions)
        object.__setattr__(self, "transitions", rows)
        super().__post_init__()
        for q, row in enumerate(self.transitions):
            for s, cell in enumerate(row):
                if len(cell) != 1:
                    raise InvalidInput(f"DFA transition ({q}, {s}) has {len(cell)} successors")

    @classmethod
    def from_table(cls, table, termination, initial: int = 0) -> "Dfa":
        """Build from an ``n x r`` table of successor ids."""
        table = [[int(t) for t in row] for row in table]
        return cls(tuple(tuple(row) for row in table), termination, initial)

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(next(iter(cell)) for cell in row) for row in self.transitions)

    @cached_property
    def table(self) -> np.ndarray:
        t = np.array(self.rows, dtype=np.int64).reshape(self.n, self.r)
        t.setflags(write=False)
        return t

    def to_dfa(self) -> "Dfa":
        return self

    def delta(self, q: int, sigma: int) -> int:
        return self.rows[q][sigma]

    def run(self, x) -> int:
        q = self.initial
        for s in word(x):
            q = self.rows[q][s]
        return q

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["transitions"] = [list(row) for row in self.rows]
        return d


def _check_states(a: Nfa, states: Iterable[int]) -> frozenset:
    states = frozenset(int(q) for q in states)
    for q in states:
        if not 0 <= q < a.n:
            raise InvalidInput(f"state {q} out of range for n={a.n}")
    return states


def _check_word(a: Nfa, x) -> tuple[int, ...]:
    x = word(x)
    for s in x:
        if not 0 <= s < a.r:
            raise InvalidInput(f"symbol {s} out of range for r={a.r}")
    return x


def extend_transition(a: Nfa, states: Iterable[int], x) -> frozenset:
    """States reachable from ``states`` by reading exactly ``x``."""
    current = _check_states(a, states)
    for s in _check_word(a, x):
        current = frozenset().union(*(a.transitions[q][s] for q in current))
    return current


def tau1(a: Nfa, states: Iterable[int]) -> frozenset:
    """Union of all one-symbol successors of ``states``."""
    states = _check_states(a, states)
    adj = a.adjacency
    return frozenset(t for q in states for t in adj[q])


def tau_star(a: Nfa, states: Iterable[int]) -> frozenset:
    """Forward closure of ``states`` (everything reachable, ``states`` included)."""
    seen = set(_check_states(a, states))
    adj = a.adjacency
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for t in adj[q]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


def characteristic(a: Nfa, x) -> int:
    """1 iff some state reached from the initial state on ``x`` terminates."""
    reached = extend_transition(a, (a.initial,), x)
    return int(any(a.termination[q] for q in reached))


@dataclass(frozen=True)
class MergeMap:
    """Surjective state map ``0..source_n-1 -> 0..target_n-1``."""

    source_n: int
    target_n: int
    map: tuple = field(default=())

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.source_n:
            raise InvalidInput(f"merge map has {len(m)} entries, expected {self.source_n}")
        if self.target_n > self.source_n:
            raise InvalidInput("merge map cannot increase the number of states")
        if any(not 0 <= v < self.target_n for v in m):
            raise InvalidInput("merge map image out of range")
        if len(set(m)) != self.target_n:
            raise NonSurjectiveMap(f"merge map is not onto 0..{self.target_n - 1}")

    @classmethod
    def identity(cls, n: int) -> "MergeMap":
        return cls(n, n, tuple(range(n)))

    @classmethod
    def elementary(cls, n: int, q: int, q2: int) -> "MergeMap":
        """Merge ``q`` and ``q2`` into the smaller id; later ids shift down by one."""
        lo, hi = sorted((int(q), int(q2)))
        if lo == hi or not (0 <= lo and hi < n):
            raise InvalidInput(f"cannot merge states {q} and {q2} of an {n}-state automaton")
        image = tuple(lo if p == hi else (p - 1 if p > hi else p) for p in range(n))
        return cls(n, n - 1, image)

    @property
    def is_elementary(self) -> bool:
        return self.target_n == self.source_n - 1

    def __call__(self, q: int) -> int:
        return self.map[q]

    def preimages(self) -> list[list[int]]:
        pre = [[] for _ in range(self.target_n)]
        for q, v in enumerate(self.map):
            pre[v].append(q)
        return pre

    def then(self, other: "MergeMap") -> "MergeMap":
        """Composition: apply ``self`` first, then ``other``."""
        if other.source_n != self.target_n:
            raise InvalidInput("merge maps do not compose")
        return MergeMap(self.source_n, other.target_n, tuple(other.map[v] for v in self.map))

    def to_dict(self) -> dict:
        return {"source_n": self.source_n, "target_n": self.target_n, "map": list(self.map)}


def apply_merge(a: Nfa, psi: MergeMap) -> Nfa:
    """Smallest automaton obtained from ``a`` by the merge operation ``psi``.

    Each target state gets the pointwise image of its preimages' transitions;
    the initial state is the image of ``a.initial``.  The result is a
    :class:`Dfa` whenever every target transition set is a singleton.
    """
    if psi.source_n != a.n:
        raise InvalidInput(f"merge map is defined on {psi.source_n} states, automaton has {a.n}")
    m = psi.map
    transitions = [[set() for _ in range(a.r)] for _ in range(psi.target_n)]
    phi = [None] * psi.target_n
    for q in range(a.n):
        v = m[q]
        if phi[v] is None:
            phi[v] = a.termination[q]
        elif phi[v] != a.termination[q]:
            raise TerminationMismatch(f"state {q} merged into {v} with a different termination bit")
        row = transitions[v]
        for s, cell in enumerate(a.transitions[q]):
            row[s].update(m[t] for t in cell)
    result = Nfa(transitions, phi, m[a.initial], a.r)
    if result.is_deterministic():
        return result.to_dfa()
    return result
