"""Acceptance gate: one PASS/FAIL line per criterion, printed even without ``-s``.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import itertools
import json
import math
import sys
import time

import numpy as np
import pytest

from ergodfa.automata import Dfa, tau_star
from ergodfa.bounds import (
    GRUSHO_TABLE, brute_force_census, emk_bound, grusho_constant, technical_lemma_value, truncate,
)
from ergodfa.errors import NotConverged
from ergodfa.experiments import (
    DEFAULT_MASTER_SEED, ExperimentConfig, report_json, run_bound_suite, run_campaign,
)
from ergodfa.markov import (
    one_hot, power_iteration, residual, simulate_walk, stationary, transition_matrix, tv_distance,
)
from ergodfa.minimize import (
    are_equivalent, distinguishing_word, is_isomorphic, minimize, myhill_nerode_classes,
    reachable_trim,
)
from ergodfa.randgen import SampleSpec, SplitMix64, derive_trial_seed, sample_dfa
from ergodfa.structure import communicating_classes

SEED = DEFAULT_MASTER_SEED


@pytest.fixture
def verdict(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} | {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def main_campaign():
    cfg = ExperimentConfig(n_values=[1000], r=2, trials=300, master_seed=SEED)
    t0 = time.perf_counter()
    rep = run_campaign(cfg, workers=1)
    return cfg, rep, time.perf_counter() - t0


@pytest.fixture(scope="module")
def random_minimizations():
    """200 seeded DFA with n in 1..50 and r in {2, 3}, with their minimizations."""
    t0 = time.perf_counter()
    rng = SplitMix64(SEED)
    ns = rng.integers(50, 200) + 1
    rs = rng.integers(2, 200) + 2
    out = []
    for i, (n, r) in enumerate(zip(ns.tolist(), rs.tolist())):
        a = sample_dfa(SampleSpec(n, r, SEED, i))
        out.append((a, minimize(a)))
    return out, time.perf_counter() - t0


def test_criterion_1_grusho_table(verdict):
    t0 = time.perf_counter()
    rows = {r: grusho_constant(r) for r in range(2, 8)}
    dt = time.perf_counter() - t0
    got = {r: truncate(c) for r, c in rows.items()}
    worst = max(abs(c - 1 + math.exp(-c * r)) for r, c in rows.items())
    ok = got == GRUSHO_TABLE and worst <= 1e-12 and dt < 1
    verdict(1, ok, f"truncated={list(got.values())} max residual={worst:.1e} time={dt:.3f}s")


def test_criterion_2_technical_lemma(verdict):
    t0 = time.perf_counter()
    xs = np.arange(1, 1000) / 1000
    sups = {}
    for s in (1, 1.5, 2, 5):
        vals = [technical_lemma_value(float(x), s) for x in xs]
        i = int(np.argmax(vals))
        sups[s] = (vals[i], float(xs[i]))
    dt = time.perf_counter() - t0
    sup = max(v for v, _ in sups.values())
    argmax = sups[1][1]
    ok = sup <= 1.2 and 0.75 <= argmax <= 0.85 and dt < 1
    verdict(2, ok, f"sup={sup:.4f} s=1 argmax={argmax} time={dt:.3f}s")


def test_criterion_3_exact_oracles(verdict):
    t0 = time.perf_counter()
    c2 = brute_force_census(2, 2)
    p22, b22 = c2.probability(2, 2), emk_bound(2, 2, 2, 2)
    c3 = brute_force_census(3, 2)
    trials = 100_000
    rep = run_campaign(ExperimentConfig(n_values=[3], trials=trials, master_seed=SEED,
                                        checks=["ergodicity"]), workers=1)
    dt = time.perf_counter() - t0
    p = c3.ergodic_ratio
    sigma = math.sqrt(p * (1 - p) / trials)
    mc = rep.summary_for(3).fraction_ergodic
    ok = (c2.total == 16 and c2.periodic_events.get((2, 2)) == 1 and p22 == 0.0625
          and abs(b22 - 0.125) < 1e-12 and p22 <= b22 and c3.total == 729
          and abs(mc - p) <= 3 * sigma and dt < 30)
    verdict(3, ok, f"P[E22]={p22} <= bound {b22:.4f}; n=3 census {c3.ergodic}/729={p:.5f}, "
                   f"MC={mc:.5f} ({abs(mc - p) / sigma:.2f} sigma) time={dt:.1f}s")


def test_criterion_4_main_campaign(verdict, main_campaign):
    _, rep, dt = main_campaign
    s = rep.summary_for(1000)
    ok = (s.failed == 0 and s.fraction_ergodic >= 0.99
          and abs(s.mean_class_fraction - 0.7968) <= 0.02
          and s.fraction_unique_closed >= 0.99 and dt < 300)
    verdict(4, ok, f"fraction_ergodic={s.fraction_ergodic:.4f} "
                   f"unique_closed={s.fraction_unique_closed:.4f} "
                   f"mean class fraction={s.mean_class_fraction:.4f} "
                   f"(c={s.grusho_c:.4f}) time={dt:.1f}s")


def test_criterion_5_minimization_preserves_ergodicity(verdict, main_campaign):
    _, rep, _ = main_campaign
    ergodic = [t for t in rep.trials if t.ergodic]
    kept = [t for t in ergodic if t.minimized_ergodic is True]
    ok = len(ergodic) > 0 and len(kept) == len(ergodic)
    verdict(5, ok, f"{len(kept)}/{len(ergodic)} ergodic inputs stay ergodic after minimization")


def _is_minimal(m: Dfa) -> bool:
    if len(tau_star(m, {m.initial})) != m.n:
        return False
    return all(distinguishing_word(m.with_initial(q), m.with_initial(q2)) is not None
               for q, q2 in itertools.combinations(range(m.n), 2))


def test_criterion_6_minimization_correctness(verdict, random_minimizations):
    samples, build_time = random_minimizations
    t0 = time.perf_counter()
    bad = []
    for i, (a, res) in enumerate(samples):
        m = res.dfa
        if not are_equivalent(a, m):
            bad.append((i, "language"))
        elif not _is_minimal(m):
            bad.append((i, "not minimal"))
        elif m.n != len(myhill_nerode_classes(reachable_trim(a)[0])):
            bad.append((i, "size"))
        elif not is_isomorphic(minimize(m).dfa, m):
            bad.append((i, "idempotence"))
    dt = build_time + time.perf_counter() - t0
    n = len(samples)
    ok = not bad and n == 200 and dt < 30
    verdict(6, ok, f"{n - len(bad)}/{n} pass equivalence, minimality, idempotence "
                   f"time={dt:.1f}s {bad[:3]}")


def test_criterion_7_merge_trace_lemmas(verdict, random_minimizations):
    steps = checked = 0
    bad = []
    for i, (_, res) in enumerate(random_minimizations[0]):
        snaps = res.trace.snapshots
        if not communicating_classes(snaps[0]).is_ergodic:
            continue
        checked += 1
        for j, (before, after, psi) in enumerate(zip(snaps, snaps[1:], res.trace.maps)):
            steps += 1
            d0, d1 = communicating_classes(before), communicating_classes(after)
            if len(tau_star(after, {after.initial})) != after.n:
                bad.append((i, j, "unreachable"))
            if not d1.unique_closed:
                bad.append((i, j, "closed classes"))
            if not d1.is_ergodic:
                bad.append((i, j, "periodic"))
            if not {psi(q) for q in d0.recurrent} <= set(d1.recurrent):
                bad.append((i, j, "recurrent image"))
    ok = not bad and checked > 0
    verdict(7, ok, f"{checked} ergodic trimmed inputs, {steps} elementary merges, "
                   f"{len(bad)} violations {bad[:3]}")


def test_criterion_8_markov(verdict):
    t0 = time.perf_counter()
    tol = 1e-10
    rng = SplitMix64(derive_trial_seed(SEED, 8))
    chains, trial = [], 0
    while len(chains) < 50:
        n = rng.integer(200) + 1
        a = sample_dfa(SampleSpec(n, 2, SEED + 8, trial))
        trial += 1
        dec = communicating_classes(a)
        if dec.is_ergodic:
            chains.append((a, dec))
    worst_res = worst_pair = worst_transient = worst_walk = 0.0
    for a, dec in chains:
        P = transition_matrix(a)
        p, _ = power_iteration(P, tol=tol)
        worst_res = max(worst_res, residual(p, P))
        worst_transient = max(worst_transient, float(p[list(dec.transient)].sum()))
        starts = sorted({(a.n * j) // 10 for j in range(10)} | set(range(min(10, a.n))))[:10]
        limits = [stationary(P, tol, start=one_hot(a.n, q)) for q in starts]
        for x, y in itertools.combinations(limits, 2):
            worst_pair = max(worst_pair, tv_distance(x, y))
        for lim in limits:
            worst_res = max(worst_res, residual(lim, P))
            worst_transient = max(worst_transient, float(lim[list(dec.transient)].sum()))
        walk = simulate_walk(a, derive_trial_seed(SEED, a.n), 10**6)
        worst_walk = max(worst_walk, tv_distance(walk.frequencies, p))
    try:
        stationary(transition_matrix(Dfa.from_table([[1], [0]], [0, 0])))
        periodic_ok = False
    except NotConverged:
        periodic_ok = True
    dt = time.perf_counter() - t0
    ok = (worst_res <= tol and worst_pair <= 1e-8 and worst_transient <= tol
          and worst_walk <= 0.02 and periodic_ok and dt < 120)
    verdict(8, ok, f"max residual={worst_res:.2e} max pairwise TV={worst_pair:.2e} "
                   f"max transient mass={worst_transient:.2e} max walk TV={worst_walk:.4f} "
                   f"2-cycle NotConverged={periodic_ok} time={dt:.1f}s")


def test_criterion_9_reproducibility(verdict, main_campaign):
    cfg, rep, _ = main_campaign
    reference = report_json(rep)
    eight = report_json(run_campaign(cfg, workers=8))
    small = ExperimentConfig(n_values=[3], trials=20_000, master_seed=SEED, checks=["ergodicity"])
    small_same = report_json(run_campaign(small, 1)) == report_json(run_campaign(small, 8))
    census_same = (json.dumps(brute_force_census(2, 7, workers=1).to_dict())
                   == json.dumps(brute_force_census(2, 7, workers=8).to_dict()))
    suite_same = json.dumps(run_bound_suite()) == json.dumps(run_bound_suite())
    ok = eight == reference and small_same and census_same and suite_same
    verdict(9, ok, f"campaign n=1000 identical={eight == reference} "
                   f"campaign n=3 identical={small_same} census identical={census_same} "
                   f"bound suite identical={suite_same}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
