"""The random-walk Markov chain of an automaton.

From state ``q`` the walk picks one of the transitions leaving ``q``
uniformly at random, so ``P(q, q')`` is the number of (symbol, successor)
pairs of ``q`` that lead to ``q'`` divided by the total number of such pairs.
For a DFA this is just ``#{s : delta(q, s) = q'} / r``.

Distributions are 1-D float arrays.  Matrices with more than
``SPARSE_THRESHOLD`` states are stored as scipy CSR matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .automata import Dfa, Nfa
from .errors import DimensionMismatch, EmptyTransition, InvalidInput, NotConverged
from .randgen import SplitMix64

SPARSE_THRESHOLD = 2048
ROW_SUM_TOL = 1e-12
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERS = 10**6


@dataclass(frozen=True)
class TransitionMatrix:
    entries: object  # ndarray or scipy.sparse.csr_matrix

    def __post_init__(self):
        e = self.entries
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise DimensionMismatch(f"transition matrix must be square, got {e.shape}")
        sums = np.asarray(e.sum(axis=1)).ravel()
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            raise InvalidInput("transition matrix is not row-stochastic")
        if (e.min() if sp.issparse(e) else e.min(initial=0.0)) < 0:
            raise InvalidInput("transition matrix has negative entries")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.entries)

    def dense(self) -> np.ndarray:
        return self.entries.toarray() if self.is_sparse else np.asarray(self.entries)


def transition_matrix(a: Nfa, sparse: bool | None = None) -> TransitionMatrix:
    if a.has_empty_transition():
        raise EmptyTransition("every state needs outgoing transitions")
    n = a.n
    if isinstance(a, Dfa):
        src = np.repeat(np.arange(n), a.r)
        dst = a.table.ravel()
        w = np.full(n * a.r, 1.0 / a.r)
    else:
        src, dst, w = [], [], []
        for q, row in enumerate(a.transitions):
            total = sum(len(cell) for cell in row)
            for cell in row:
                for t in cell:
                    src.append(q)
                    dst.append(t)
                    w.append(1.0 / total)
        src, dst, w = np.array(src), np.array(dst), np.array(w)
    if sparse is None:
        sparse = n > SPARSE_THRESHOLD
    if sparse:
        # duplicate (src, dst) pairs are summed by the COO -> CSR conversion
        m = sp.coo_matrix((w, (src, dst)), shape=(n, n)).tocsr()
    else:
        m = np.zeros((n, n))
        np.add.at(m, (src, dst), w)
    return TransitionMatrix(m)


def _as_distribution(p, n: int) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (n,):
        raise DimensionMismatch(f"distribution of shape {p.shape} does not match n={n}")
    if np.any(p < 0) or abs(p.sum() - 1.0) > ROW_SUM_TOL:
        raise InvalidInput("not a probability distribution")
    return p


def _product(p: np.ndarray, m: TransitionMatrix) -> np.ndarray:
    if m.is_sparse:
        q = m.entries.T @ p
    else:
        q = p @ m.entries
    return q / q.sum()


def step(p, m: TransitionMatrix) -> np.ndarray:
    """One step of the chain: ``p P``, renormalized to sum to 1."""
    return _product(_as_distribution(p, m.n), m)


def one_hot(n: int, q: int) -> np.ndarray:
    e = np.zeros(n)
    e[q] = 1.0
    return e


def default_start(n: int) -> np.ndarray:
    """Start vector proportional to ``1, 2, ..., n``.

    Deliberately not uniform: the uniform vector is already stationary for
    every doubly-stochastic chain, periodic ones included, which would hide
    the periodicity.
    """
    w = np.arange(1, n + 1, dtype=float)
    return w / w.sum()


def transient_mask(m: TransitionMatrix) -> np.ndarray:
    """Boolean mask of states outside every closed communicating class."""
    g = sp.csr_matrix(m.entries) if not m.is_sparse else m.entries
    ncomp, labels = connected_components(g, directed=True, connection="strong")
    coo = g.tocoo()
    leaving = np.zeros(ncomp, dtype=bool)
    cross = labels[coo.row] != labels[coo.col]
    leaving[labels[coo.row[cross & (coo.data > 0)]]] = True
    return leaving[labels]


def power_iteration(m: TransitionMatrix, start=None, tol: float = DEFAULT_TOL,
                    max_iters: int = DEFAULT_MAX_ITERS) -> tuple[np.ndarray, int]:
    """Iterate ``p <- p P`` until ``p`` has settled.

    Settled means one step moves ``p`` by at most ``tol`` in L1 and the mass
    still sitting on transient states is at most ``tol``.  The second test
    matters for chains whose transient part drains slowly: there the step
    size can drop below ``tol`` while noticeably more than ``tol`` of the
    mass has yet to leave.

    Returns ``(p, iterations)`` with ``||p P - p||_1 <= tol``.  Raises
    :class:`NotConverged` after ``max_iters`` steps, or earlier when the
    iterates revisit an earlier vector exactly (a periodic orbit).
    """
    p = default_start(m.n) if start is None else _as_distribution(start, m.n)
    transient = transient_mask(m)
    anchor, anchor_it, horizon = p, 0, 1
    delta = None
    for it in range(1, max_iters + 1):
        q = _product(p, m)
        delta = float(np.abs(q - p).sum())
        if delta <= tol and p[transient].sum() <= tol:
            return p, it
        p = q
        if np.array_equal(p, anchor):
            raise NotConverged(max_iters, last=p, delta=delta, cycle_length=it - anchor_it)
        if it == horizon:
            anchor, anchor_it, horizon = p, it, 2 * horizon
    raise NotConverged(max_iters, last=p, delta=delta)


def stationary(m: TransitionMatrix, tol: float = DEFAULT_TOL,
               max_iters: int = DEFAULT_MAX_ITERS, start=None) -> np.ndarray:
    """Stationary distribution by power iteration (see :func:`power_iteration`)."""
    return power_iteration(m, start, tol, max_iters)[0]


def residual(p, m: TransitionMatrix) -> float:
    """``||p P - p||_1`` without renormalization."""
    p = np.asarray(p, dtype=float)
    q = m.entries.T @ p if m.is_sparse else p @ m.entries
    return float(np.abs(q - p).sum())


def tv_distance(p, q) -> float:
    return 0.5 * float(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)).sum())


@dataclass(frozen=True)
class WalkResult:
    counts: np.ndarray
    final_state: int

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.counts.sum()


def simulate_walk(a: Dfa, seed: int, steps: int) -> WalkResult:
    """Random walk of ``steps`` transitions from the initial state.

    Symbols are drawn from a :class:`~ergodfa.randgen.SplitMix64` stream keyed
    by ``seed``; visit counts include the starting state, so they sum to
    ``steps + 1``.
    """
    if steps < 0:
        raise InvalidInput("steps must be non-negative")
    a = a.to_dfa()
    symbols = SplitMix64(seed).integers(a.r, steps).tolist()
    rows = a.rows
    q = a.initial
    visits = [q] * (steps + 1)
    for t, s in enumerate(symbols, 1):
        q = rows[q][s]
        visits[t] = q
    counts = np.bincount(np.asarray(visits, dtype=np.int64), minlength=a.n)
    return WalkResult(counts, q)
