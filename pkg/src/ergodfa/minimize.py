"""DFA minimization by explicit elementary state merges.

:func:`minimize` follows the classic three steps: drop unreachable states,
split the rest into classes of undistinguishable states (Moore refinement),
then collapse every class with a sequence of two-state merges.  Intermediate
automata may be non-deterministic; each one is kept in the returned
:class:`MergeTrace` so structural invariants can be checked step by step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automata import Dfa, MergeMap, Nfa, apply_merge, tau_star
from .errors import AlphabetMismatch, NotTrimmed

__all__ = [
    "NerodePartition",
    "MergeTrace",
    "MinimizeResult",
    "reachable_trim",
    "myhill_nerode_classes",
    "minimize",
    "distinguishing_word",
    "are_equivalent",
    "canonical_form",
    "is_isomorphic",
]


@dataclass(frozen=True)
class NerodePartition:
    blocks: tuple
    block_of: tuple

    def __len__(self):
        return len(self.blocks)


@dataclass
class MergeTrace:
    """The trimmed input followed by one ``(merge map, result)`` per elementary merge."""

    start: Nfa
    steps: list = field(default_factory=list)

    @property
    def snapshots(self) -> list[Nfa]:
        return [self.start] + [a for _, a in self.steps]

    @property
    def maps(self) -> list[MergeMap]:
        return [psi for psi, _ in self.steps]

    def __len__(self):
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "start": self.start.to_dict(),
            "steps": [{"merge": psi.to_dict(), "automaton": a.to_dict()} for psi, a in self.steps],
        }


@dataclass
class MinimizeResult:
    dfa: Dfa
    trace: MergeTrace | None
    # original state id -> state of ``dfa`` (unreachable states are absent)
    state_map: dict


def reachable_trim(a: Dfa) -> tuple[Dfa, dict]:
    """Restrict ``a`` to the states reachable from its initial state.

    Survivors keep their relative order; the returned dict maps old ids to
    new ones.
    """
    keep = sorted(tau_star(a, (a.initial,)))
    renum = {q: i for i, q in enumerate(keep)}
    table = [[renum[t] for t in a.rows[q]] for q in keep]
    phi = [a.termination[q] for q in keep]
    return Dfa.from_table(table, phi, renum[a.initial]), renum


def myhill_nerode_classes(a: Dfa) -> NerodePartition:
    """Undistinguishability classes of a trimmed DFA, by Moore refinement."""
    if len(tau_star(a, (a.initial,))) != a.n:
        raise NotTrimmed("automaton has unreachable states")
    rows = a.rows
    block = list(a.termination)
    count = len(set(block))
    while True:
        ids = {}
        new = []
        for q in range(a.n):
            sig = (block[q],) + tuple(block[t] for t in rows[q])
            new.append(ids.setdefault(sig, len(ids)))
        block = new
        if len(ids) == count:
            break
        count = len(ids)
    groups = {}
    for q, b in enumerate(block):
        groups.setdefault(b, []).append(q)
    blocks = tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))
    block_of = [0] * a.n
    for i, g in enumerate(blocks):
        for q in g:
            block_of[q] = i
    return NerodePartition(blocks, tuple(block_of))


def minimize(a: Dfa, keep_trace: bool = True) -> MinimizeResult:
    """Minimal DFA for ``a``'s language built from elementary merges.

    Within each class the two smallest current state ids are merged first,
    so the output lists classes by their smallest reachable original member.
    """
    trimmed, renum = reachable_trim(a)
    partition = myhill_nerode_classes(trimmed)
    current: Nfa = trimmed
    trace = MergeTrace(trimmed) if keep_trace else None
    # position[q] is the current id of trimmed state q
    position = list(range(trimmed.n))
    for blk in partition.blocks:
        members = sorted({position[q] for q in blk})
        while len(members) > 1:
            lo, hi = members[0], members[1]
            psi = MergeMap.elementary(current.n, lo, hi)
            current = apply_merge(current, psi)
            if trace is not None:
                trace.steps.append((psi, current))
            position = [psi(p) for p in position]
            members = sorted({psi(p) for p in members})
    dfa = current if isinstance(current, Dfa) else current.to_dfa()
    state_map = {q: position[i] for q, i in renum.items()}
    return MinimizeResult(dfa, trace, state_map)


def distinguishing_word(a: Nfa, b: Nfa) -> tuple[int, ...] | None:
    """Shortest word on which two DFA disagree, or None if they are equivalent.

    Breadth-first search over the product automaton; symbols tried in order.
    """
    if a.r != b.r:
        raise AlphabetMismatch(f"alphabet sizes differ: {a.r} vs {b.r}")
    ra, rb = a.to_dfa().rows, b.to_dfa().rows
    start = (a.initial, b.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p, q = node = queue.popleft()
        if a.termination[p] != b.termination[q]:
            path = []
            while parent[node] is not None:
                node, s = parent[node]
                path.append(s)
            return tuple(reversed(path))
        for s in range(a.r):
            nxt = (ra[p][s], rb[q][s])
            if nxt not in parent:
                parent[nxt] = (node, s)
                queue.append(nxt)
    return None


def are_equivalent(a: Nfa, b: Nfa) -> bool:
    return distinguishing_word(a, b) is None


def canonical_form(a: Dfa) -> tuple:
    """Reachable part renumbered in BFS order (symbols in order) from the initial state."""
    order = {a.initial: 0}
    queue = deque([a.initial])
    seq = [a.initial]
    while queue:
        q = queue.popleft()
        for t in a.rows[q]:
            if t not in order:
                order[t] = len(order)
                seq.append(t)
                queue.append(t)
    return (a.r, tuple(tuple(order[t] for t in a.rows[q]) for q in seq),
            tuple(a.termination[q] for q in seq))


def is_isomorphic(a: Dfa, b: Dfa) -> bool:
    """Isomorphism of the reachable parts (initial state mapped to initial state)."""
    return canonical_form(a) == canonical_form(b)

