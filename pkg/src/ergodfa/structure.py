"""Communicating classes, periodicity and the structural ergodicity test.

Communicating classes are the strongly connected components of the arc
digraph ``q -> q'`` (an arc exists when ``q'`` is a successor of ``q`` on some
symbol).  A class is closed when no arc leaves it.  The period of a closed
class is the gcd of ``level(u) + 1 - level(v)`` over its arcs, for BFS levels
taken from any root; every period is re-checked against the partition
definition before it is returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .automata import Nfa, tau1
from .errors import EmptyTransition, NotClosedClass

__all__ = [
    "ClassDecomposition",
    "strongly_connected_components",
    "communicating_classes",
    "period_of_class",
    "periodic_partition",
    "is_periodic_partition",
    "is_ergodic_structure",
    "closed_class_sizes",
]


@dataclass(frozen=True)
class ClassDecomposition:
    """Partition of the states into communicating classes.

    ``classes`` are sorted tuples ordered by smallest member.  ``closed[i]``
    flags closed classes and ``period[i]`` is their period (1 = aperiodic);
    it is ``None`` for classes that are not closed.
    """

    classes: tuple
    closed: tuple
    period: tuple
    recurrent: frozenset
    transient: frozenset

    @property
    def closed_classes(self) -> list[tuple[int, ...]]:
        return [c for c, f in zip(self.classes, self.closed) if f]

    @property
    def closed_periods(self) -> list[int]:
        return [p for p, f in zip(self.period, self.closed) if f]

    @property
    def unique_closed(self) -> bool:
        return sum(self.closed) == 1

    @property
    def is_ergodic(self) -> bool:
        return self.unique_closed and self.closed_periods[0] == 1

    def class_of(self, q: int) -> int:
        for i, c in enumerate(self.classes):
            if q in c:
                return i
        raise KeyError(q)

    def to_dict(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "closed": list(self.closed),
            "period": list(self.period),
            "recurrent": sorted(self.recurrent),
        }


def _require_total(a: Nfa) -> None:
    if a.has_empty_transition():
        raise EmptyTransition("every (state, symbol) pair needs at least one successor")


def strongly_connected_components(adjacency) -> list[list[int]]:
    """Iterative Tarjan over ``adjacency[v] -> successors``; no recursion limit.

    Components come out in reverse topological order of the condensation.
    """
    n = len(adjacency)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    out = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            succ = adjacency[v]
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _bfs_levels(adjacency, members) -> dict[int, int]:
    inside = set(members)
    root = min(members)
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v in inside and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def _gcd_period(adjacency, members) -> tuple[int, dict[int, int]]:
    level = _bfs_levels(adjacency, members)
    inside = set(members)
    g = 0
    for u in members:
        for v in adjacency[u]:
            if v in inside:
                g = gcd(g, level[u] + 1 - level[v])
    return abs(g), level


def periodic_partition(a: Nfa, cls, k: int) -> list[frozenset]:
    """Residue classes of BFS levels modulo ``k`` (a candidate k-periodic partition)."""
    level = _bfs_levels(a.adjacency, list(cls))
    parts = [set() for _ in range(k)]
    for q, lv in level.items():
        parts[lv % k].add(q)
    return [frozenset(p) for p in parts]


def is_periodic_partition(a: Nfa, parts) -> bool:
    """True iff every part is non-empty and one step maps part i onto part i+1."""
    k = len(parts)
    if any(not p for p in parts):
        return False
    return all(tau1(a, parts[i]) == parts[(i + 1) % k] for i in range(k))


def _closed_period(a: Nfa, members) -> int:
    k, _ = _gcd_period(a.adjacency, members)
    if k > 1 and not is_periodic_partition(a, periodic_partition(a, members, k)):
        raise AssertionError(f"period certificate failed for class {sorted(members)} with k={k}")
    return k


def communicating_classes(a: Nfa) -> ClassDecomposition:
    """Decompose ``a`` into communicating classes, flag closed ones, compute periods."""
    _require_total(a)
    adj = a.adjacency
    comps = sorted((tuple(sorted(c)) for c in strongly_connected_components(adj)),
                   key=lambda c: c[0])
    comp_id = [0] * a.n
    for i, c in enumerate(comps):
        for q in c:
            comp_id[q] = i
    closed, period = [], []
    recurrent = set()
    for i, c in enumerate(comps):
        is_closed = all(comp_id[t] == i for q in c for t in adj[q])
        closed.append(is_closed)
        if is_closed:
            period.append(_closed_period(a, c))
            recurrent.update(c)
        else:
            period.append(None)
    return ClassDecomposition(
        classes=tuple(comps),
        closed=tuple(closed),
        period=tuple(period),
        recurrent=frozenset(recurrent),
        transient=frozenset(range(a.n)) - recurrent,
    )


def period_of_class(a: Nfa, cls) -> int:
    """Largest k admitting a k-periodic partition of the closed class ``cls``."""
    _require_total(a)
    members = sorted(set(cls))
    if not members or any(not 0 <= q < a.n for q in members):
        raise NotClosedClass("class must be a non-empty set of valid states")
    inside = set(members)
    adj = a.adjacency
    if any(t not in inside for q in members for t in adj[q]):
        raise NotClosedClass(f"{members} has arcs leaving it")
    reverse = [[] for _ in range(a.n)]
    for q in members:
        for t in adj[q]:
            reverse[t].append(q)
    if (len(_bfs_levels(adj, members)) != len(members)
            or len(_bfs_levels(reverse, members)) != len(members)):
        raise NotClosedClass(f"{members} is not strongly connected")
    return _closed_period(a, members)


def is_ergodic_structure(a: Nfa) -> tuple[bool, ClassDecomposition]:
    """Unique closed class that is aperiodic; the decomposition is returned as evidence."""
    dec = communicating_classes(a)
    return dec.is_ergodic, dec


def closed_class_sizes(a: Nfa) -> list[int]:
    return [len(c) for c in communicating_classes(a).closed_classes]
