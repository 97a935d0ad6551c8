"""Slow, definition-level reference implementations used to cross-check.

Nothing here shares code with the fast paths it checks: reachability is a
boolean Warshall closure instead of Tarjan, periodicity is a search over
label assignments instead of a BFS-level gcd, and language questions are
answered by enumerating words.
"""

from __future__ import annotations

import itertools

import numpy as np

from .automata import Nfa, characteristic


def reachability(a: Nfa) -> np.ndarray:
    """``R[q, q']`` is True iff ``q'`` is reachable from ``q`` (reflexive)."""
    n = a.n
    R = np.eye(n, dtype=bool)
    for q, row in enumerate(a.transitions):
        for cell in row:
            for t in cell:
                R[q, t] = True
    for k in range(n):
        R |= np.outer(R[:, k], R[k, :])
    return R


def classes_definitional(a: Nfa) -> list[tuple[tuple[int, ...], bool]]:
    """``(class, closed)`` pairs from mutual reachability, sorted by smallest member."""
    R = reachability(a)
    mutual = R & R.T
    seen, out = set(), []
    for q in range(a.n):
        if q in seen:
            continue
        cls = tuple(int(v) for v in np.flatnonzero(mutual[q]))
        seen.update(cls)
        reach = set(np.flatnonzero(R[list(cls)].any(axis=0)).tolist())
        out.append((cls, reach == set(cls)))
    return out


def _one_step(a: Nfa, states) -> set:
    return {t for q in states for cell in a.transitions[q] for t in cell}


def k_periodic_partition(a: Nfa, cls, k: int):
    """Search label assignments ``cls -> Z_k`` for a k-periodic partition.

    Arcs force ``label(v) = label(u) + 1``; the search backtracks over every
    label of every state (first state pinned to 0 by cyclic symmetry) and
    checks the partition condition ``tau1(part_i) == part_(i+1)`` on every
    complete assignment.  Returns the parts or None.
    """
    members = sorted(cls)
    inside = set(members)
    arcs = {q: [t for t in _one_step(a, [q]) if t in inside] for q in members}
    label = {}

    def consistent(q):
        lq = label[q]
        for t in arcs[q]:
            if t in label and label[t] != (lq + 1) % k:
                return False
        for p in members:
            if p in label and q in arcs[p] and label[p] != (lq - 1) % k:
                return False
        return True

    def search(i):
        if i == len(members):
            parts = [{q for q in members if label[q] == j} for j in range(k)]
            if any(not p for p in parts):
                return None
            if all(_one_step(a, parts[j]) == parts[(j + 1) % k] for j in range(k)):
                return parts
            return None
        q = members[i]
        for lab in ([0] if i == 0 else range(k)):
            label[q] = lab
            if consistent(q):
                found = search(i + 1)
                if found is not None:
                    return found
            del label[q]
        return None

    return search(0)


def period_definitional(a: Nfa, cls) -> int:
    """Largest k > 1 with a k-periodic partition, or 1 if there is none."""
    for k in range(len(cls), 1, -1):
        if k_periodic_partition(a, cls, k) is not None:
            return k
    return 1


def ergodic_definitional(a: Nfa) -> bool:
    closed = [c for c, f in classes_definitional(a) if f]
    return len(closed) == 1 and period_definitional(a, closed[0]) == 1


def census_definitional(n: int, r: int) -> dict:
    """Exact counts by the definitional route: total, unique_closed, ergodic, events."""
    out = {"total": 0, "unique_closed": 0, "ergodic": 0, "periodic_events": {}}
    zeros = [0] * n
    for flat in itertools.product(range(n), repeat=n * r):
        a = Nfa([[{flat[q * r + s]} for s in range(r)] for q in range(n)], zeros)
        closed = [c for c, f in classes_definitional(a) if f]
        out["total"] += 1
        if len(closed) == 1:
            out["unique_closed"] += 1
            if period_definitional(a, closed[0]) == 1:
                out["ergodic"] += 1
        events = set()
        for c in closed:
            for k in range(2, len(c) + 1):
                if k_periodic_partition(a, c, k) is not None:
                    events.add((len(c), k))
        for e in events:
            out["periodic_events"][e] = out["periodic_events"].get(e, 0) + 1
    return out


def words(r: int, max_len: int):
    for length in range(max_len + 1):
        yield from itertools.product(range(r), repeat=length)


def same_language_upto(a: Nfa, b: Nfa, max_len: int) -> bool:
    return all(characteristic(a, x) == characteristic(b, x) for x in words(a.r, max_len))


def undistinguishable_upto(a: Nfa, q: int, q2: int, max_len: int) -> bool:
    """``A_q`` and ``A_q2`` agree on every word of length <= max_len.

    For a DFA with n states, ``max_len = n - 1`` decides undistinguishability
    exactly.
    """
    return same_language_upto(a.with_initial(q), a.with_initial(q2), max_len)


def stationary_linear(P: np.ndarray) -> np.ndarray:
    """Solve ``p P = p, sum(p) = 1`` by least squares (unique when ergodic)."""
    n = P.shape[0]
    A = np.vstack([P.T - np.eye(n), np.ones((1, n))])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    return np.linalg.lstsq(A, b, rcond=None)[0]
