"""Closed-class size constant, periodicity bounds and exact census for tiny n.

All combinatorial factors are evaluated with ``math.lgamma`` so that
arguments in the thousands do not overflow.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .automata import Dfa
from .errors import BudgetExceeded, DomainError, InvalidAlphabet, InvalidRange
from .structure import communicating_classes

CENSUS_BUDGET = 10**8

# Table of c(r) truncated to three digits, r = 2..7
GRUSHO_TABLE = {2: 0.796, 3: 0.940, 4: 0.980, 5: 0.993, 6: 0.997, 7: 0.999}


def grusho_constant(r: int) -> float:
    """Positive root of ``c = 1 - exp(-c r)``.

    This is the limiting fraction of states in the unique closed class of a
    random DFA over ``r`` symbols.
    """
    if r < 2:
        raise InvalidAlphabet(f"the positive root exists only for r >= 2, got r={r}")
    g = lambda c: c - 1.0 + math.exp(-c * r)
    # g(c) ~ c (1 - r) < 0 near 0 and g(1) = exp(-r) > 0
    return brentq(g, 1e-3, 1.0, xtol=1e-15, maxiter=200)


def truncate(x: float, digits: int = 3) -> float:
    f = 10**digits
    return math.floor(x * f) / f


def technical_lemma_value(x: float, s: float = 1.0) -> float:
    """``x**s / (1 - x)**((1 - x) / x)``, extended continuously to x = 0 and x = 1."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if s < 1:
        raise DomainError(f"s must be at least 1, got {s}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    return math.exp(s * math.log(x) - (1.0 - x) / x * math.log1p(-x))


def _log_binom(a: float, b: float) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def _check_emk(n, m, k, r):
    if not (2 <= k <= m <= n):
        raise InvalidRange(f"need 2 <= k <= m <= n, got n={n}, m={m}, k={k}")
    if r < 2:
        raise InvalidRange(f"need r >= 2, got r={r}")


def log_emk_bound(n: int, m: int, k: int, r: int) -> float:
    _check_emk(n, m, k, r)
    return (_log_binom(n, m) + _log_binom(m - 1, k - 1) + math.lgamma(m + 1)
            - k * math.lgamma(m / k) + m * r * math.log(m / (k * n)))


def emk_bound(n: int, m: int, k: int, r: int) -> float:
    """Union bound on the probability of a k-periodic closed class of size m.

    ``C(n, m) C(m-1, k-1) m! / Gamma(m/k)**k * (m / (k n))**(m r)``
    """
    try:
        return math.exp(log_emk_bound(n, m, k, r))
    except OverflowError:
        return math.inf


def log_simplified_bound(m: int, k: int, r: int) -> float:
    """Log of ``min(m**k, 2**m) * (1.2 / k**(r-1))**m`` (the bound without its constant)."""
    return min(k * math.log(m), m * math.log(2)) + m * (math.log(1.2) - (r - 1) * math.log(k))


def bound_ratio(n: int, m: int, k: int, r: int) -> float:
    """``emk_bound / simplified bound``; bounded uniformly when the lemma holds."""
    return math.exp(log_emk_bound(n, m, k, r) - log_simplified_bound(m, k, r))


def ratio_scan(n_values, r_values=(2, 3)) -> dict:
    """Largest :func:`bound_ratio` over all valid (m, k) for each (n, r)."""
    out = {}
    for r in r_values:
        for n in n_values:
            best = (-math.inf, None)
            for m in range(2, n + 1):
                for k in range(2, m + 1):
                    v = log_emk_bound(n, m, k, r) - log_simplified_bound(m, k, r)
                    if v > best[0]:
                        best = (v, (m, k))
            out[(n, r)] = (math.exp(best[0]), best[1])
    return out


@dataclass
class CensusResult:
    """Exact counts over all ``n**(n r)`` transition tables."""

    n: int
    r: int
    total: int = 0
    unique_closed: int = 0
    ergodic: int = 0
    # (m, k) -> number of tables with a k-periodic closed class of size m
    periodic_events: dict = field(default_factory=dict)

    def probability(self, m: int, k: int) -> float:
        return self.periodic_events.get((m, k), 0) / self.total

    @property
    def ergodic_ratio(self) -> float:
        return self.ergodic / self.total

    @property
    def unique_closed_ratio(self) -> float:
        return self.unique_closed / self.total

    def merge(self, other: "CensusResult") -> "CensusResult":
        events = dict(self.periodic_events)
        for key, v in other.periodic_events.items():
            events[key] = events.get(key, 0) + v
        return CensusResult(self.n, self.r, self.total + other.total,
                            self.unique_closed + other.unique_closed,
                            self.ergodic + other.ergodic, events)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "total": self.total,
            "unique_closed": self.unique_closed,
            "ergodic": self.ergodic,
            "periodic_events": {f"{m},{k}": c for (m, k), c in sorted(self.periodic_events.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CensusResult":
        events = {tuple(int(v) for v in key.split(",")): int(c)
                  for key, c in d["periodic_events"].items()}
        return cls(d["n"], d["r"], d["total"], d["unique_closed"], d["ergodic"], events)


def census_size(n: int, r: int) -> int:
    return n ** (n * r)


def _tables(n: int, r: int, start: int, stop: int):
    """Transition tables number ``start..stop-1`` in mixed-radix order."""
    it = itertools.product(range(n), repeat=n * r)
    for flat in itertools.islice(it, start, stop):
        yield [flat[q * r:(q + 1) * r] for q in range(n)]


def census_range(n: int, r: int, start: int, stop: int) -> CensusResult:
    res = CensusResult(n, r)
    events = res.periodic_events
    zeros = [0] * n
    for table in _tables(n, r, start, stop):
        dec = communicating_classes(Dfa.from_table(table, zeros))
        res.total += 1
        if dec.unique_closed:
            res.unique_closed += 1
            if dec.is_ergodic:
                res.ergodic += 1
        seen = set()
        for cls, p in zip(dec.closed_classes, dec.closed_periods):
            for k in range(2, p + 1):
                if p % k == 0:
                    seen.add((len(cls), k))
        for key in seen:
            events[key] = events.get(key, 0) + 1
    return res


def brute_force_census(n: int, r: int, workers: int = 1) -> CensusResult:
    """Exact structure counts over every transition function on n states.

    The initial state and termination bits do not affect class structure, so
    they are not enumerated.  With ``workers > 1`` the range is split into
    contiguous chunks; integer tallies make the result independent of the
    split.
    """
    if n < 1 or r < 1:
        raise InvalidRange("need n >= 1 and r >= 1")
    total = census_size(n, r)
    if total > CENSUS_BUDGET:
        raise BudgetExceeded(f"{total} tables exceed the budget of {CENSUS_BUDGET}")
    if workers <= 1 or total < 10_000:
        return census_range(n, r, 0, total)
    from concurrent.futures import ProcessPoolExecutor
    bounds = [total * i // workers for i in range(workers + 1)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(census_range, [n] * workers, [r] * workers,
                              bounds[:-1], bounds[1:]))
    out = CensusResult(n, r)
    for part in parts:
        out = out.merge(part)
    return out
