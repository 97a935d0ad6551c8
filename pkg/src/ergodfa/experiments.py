"""Seeded Monte Carlo campaigns over random DFA and the analytic bound suite.

A campaign samples ``trials`` random DFA for every ``n`` in the config,
analyses each one independently and aggregates per ``n``.  Every trial is a
pure function of ``(n, r, master_seed, trial_index, checks)``, results are
collected in trial order, and sums use ``math.fsum``, so reports are
byte-identical whatever the number of worker processes.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import numpy as np

from .bounds import (
    GRUSHO_TABLE, brute_force_census, emk_bound, grusho_constant, ratio_scan,
    technical_lemma_value, truncate,
)
from .errors import CheckFailed, InvalidInput, NotConverged
from .markov import power_iteration, simulate_walk, transition_matrix, tv_distance
from .minimize import minimize
from .randgen import SampleSpec, derive_trial_seed, sample_dfa
from .structure import communicating_classes

DEFAULT_MASTER_SEED = 20141015
DEFAULT_N_VALUES = (50, 100, 200, 500, 1000)
CHECKS = ("ergodicity", "class_size", "minimization_preservation", "stationary", "walk")
DEFAULT_CHECKS = ("ergodicity", "class_size", "minimization_preservation")
WORKERS_ENV = "ERGODFA_WORKERS"

# Empirical ceiling for emk_bound / (min(m^k, 2^m) (1.2/k^(r-1))^m); observed
# maxima stay below 0.16 for n <= 1000, r in {2, 3}.
RATIO_CAP = 1.0


def load_schema(name: str) -> dict:
    return json.loads(resources.files("ergodfa").joinpath("schemas", name).read_text())


@dataclass
class ExperimentConfig:
    n_values: list
    r: int = 2
    trials: int = 300
    master_seed: int = DEFAULT_MASTER_SEED
    checks: list = field(default_factory=lambda: list(DEFAULT_CHECKS))
    output_path: str | None = None
    format: str = "json"
    per_trial: bool = True
    walk_steps: int = 100_000
    stationary_tol: float = 1e-10
    stationary_max_iters: int = 100_000

    def __post_init__(self):
        self.n_values = [int(n) for n in self.n_values]
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise InvalidInput(f"unknown checks {sorted(unknown)}")
        checks = set(self.checks)
        if "walk" in checks:
            checks.add("stationary")
        self.checks = [c for c in CHECKS if c in checks]
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise InvalidInput("n_values must be a non-empty list of positive integers")
        if self.trials < 1:
            raise InvalidInput("trials must be at least 1")
        if self.r < 2:
            raise InvalidInput("r must be at least 2")
        if self.format not in ("csv", "json"):
            raise InvalidInput(f"unknown format {self.format!r}")

    @classmethod
    def default(cls, **overrides) -> "ExperimentConfig":
        base = dict(n_values=list(DEFAULT_N_VALUES), r=2, trials=300,
                    master_seed=DEFAULT_MASTER_SEED)
        base.update(overrides)
        return cls(**base)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        import jsonschema
        try:
            jsonschema.validate(d, load_schema("config.schema.json"))
        except jsonschema.ValidationError as exc:
            raise InvalidInput(f"invalid campaign config: {exc.message}") from exc
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class TrialRecord:
    """Outcome of one sampled DFA.  Fields of disabled checks stay None."""

    n: int
    r: int
    trial: int
    seed: int
    num_closed: int | None = None
    unique_closed: bool | None = None
    ergodic: bool | None = None
    closed_size: int | None = None
    multi_closed: bool | None = None
    minimized_n: int | None = None
    minimized_ergodic: bool | None = None
    stationary_converged: bool | None = None
    stationary_iters: int | None = None
    walk_tv: float | None = None
    error: str | None = None


TRIAL_FIELDS = [f.name for f in fields(TrialRecord)]


@dataclass
class NSummary:
    n: int
    trials: int
    failed: int
    fraction_unique_closed: float | None
    fraction_ergodic: float | None
    mean_class_fraction: float | None
    std_class_fraction: float | None
    multi_closed: int | None
    grusho_c: float
    minimized_checked: int | None
    fraction_minimized_ergodic: float | None
    stationary_convergence_rate: float | None
    mean_walk_tv: float | None


@dataclass
class ExperimentReport:
    summary: list
    trials: list
    config: dict | None = field(default=None, compare=False)

    def summary_for(self, n: int) -> NSummary:
        return next(s for s in self.summary if s.n == n)

    def to_dict(self, per_trial: bool = True) -> dict:
        d = {"config": self.config, "summary": [asdict(s) for s in self.summary]}
        if per_trial:
            d["trials"] = [asdict(t) for t in self.trials]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls([NSummary(**s) for s in d["summary"]],
                   [TrialRecord(**t) for t in d.get("trials", [])], d.get("config"))


def run_trial(n: int, r: int, master_seed: int, trial: int, checks=DEFAULT_CHECKS,
              walk_steps: int = 100_000, stationary_tol: float = 1e-10,
              stationary_max_iters: int = 100_000) -> TrialRecord:
    spec = SampleSpec(n, r, master_seed, trial)
    rec = TrialRecord(n=n, r=r, trial=trial, seed=spec.key)
    try:
        a = sample_dfa(spec)
        dec = communicating_classes(a)
        closed = dec.closed_classes
        rec.num_closed = len(closed)
        rec.unique_closed = dec.unique_closed
        rec.ergodic = dec.is_ergodic
        rec.multi_closed = len(closed) > 1
        if "class_size" in checks:
            rec.closed_size = max(len(c) for c in closed)
        if "minimization_preservation" in checks:
            m = minimize(a, keep_trace=False).dfa
            rec.minimized_n = m.n
            rec.minimized_ergodic = communicating_classes(m).is_ergodic
        if "stationary" in checks:
            P = transition_matrix(a)
            try:
                p, rec.stationary_iters = power_iteration(P, None, stationary_tol,
                                                          stationary_max_iters)
                rec.stationary_converged = True
            except NotConverged:
                p = None
                rec.stationary_converged = False
            if "walk" in checks and p is not None:
                walk = simulate_walk(a, derive_trial_seed(spec.key, 0), walk_steps)
                rec.walk_tv = tv_distance(walk.frequencies, p)
    except Exception as exc:  # recorded per trial, the campaign carries on
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def _mean(xs):
    return math.fsum(xs) / len(xs) if xs else None


def _pstdev(xs):
    if not xs:
        return None
    mu = math.fsum(xs) / len(xs)
    return math.sqrt(math.fsum((x - mu) ** 2 for x in xs) / len(xs))


def _fraction(flags):
    flags = [f for f in flags if f is not None]
    return sum(1 for f in flags if f) / len(flags) if flags else None


def summarize(n: int, r: int, records) -> NSummary:
    """Aggregate the records of one ``n``; records must be in trial order."""
    ok = [t for t in records if t.error is None]
    sizes = [t.closed_size / n for t in ok if t.closed_size is not None]
    minimized = [t.minimized_ergodic for t in ok if t.ergodic and t.minimized_ergodic is not None]
    tvs = [t.walk_tv for t in ok if t.walk_tv is not None]
    has_min = any(t.minimized_ergodic is not None for t in ok)
    return NSummary(
        n=n,
        trials=len(records),
        failed=len(records) - len(ok),
        fraction_unique_closed=_fraction([t.unique_closed for t in ok]),
        fraction_ergodic=_fraction([t.ergodic for t in ok]),
        mean_class_fraction=_mean(sizes),
        std_class_fraction=_pstdev(sizes),
        multi_closed=sum(1 for t in ok if t.multi_closed) if ok else None,
        grusho_c=grusho_constant(r),
        minimized_checked=len(minimized) if has_min else None,
        fraction_minimized_ergodic=_fraction(minimized),
        stationary_convergence_rate=_fraction([t.stationary_converged for t in ok]),
        mean_walk_tv=_mean(tvs),
    )


def aggregate(records) -> list[NSummary]:
    """Per-``n`` summaries, ``n`` in order of first appearance."""
    by_n = {}
    for t in records:
        by_n.setdefault(t.n, []).append(t)
    return [summarize(n, recs[0].r, sorted(recs, key=lambda t: t.trial)) for n, recs in by_n.items()]


def worker_count(workers=None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, int(workers))


def _run_task(args):
    return run_trial(*args)


def run_campaign(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentReport:
    """Run every (n, trial) of ``cfg``; worker count never changes the result."""
    tasks = [(n, cfg.r, cfg.master_seed, t, tuple(cfg.checks), cfg.walk_steps,
              cfg.stationary_tol, cfg.stationary_max_iters)
             for n in cfg.n_values for t in range(cfg.trials)]
    workers = worker_count(workers)
    if workers == 1:
        records = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    return ExperimentReport(aggregate(records), records, cfg.to_dict())


def report_json(report: ExperimentReport, per_trial: bool = True) -> str:
    return json.dumps(report.to_dict(per_trial), indent=2, sort_keys=True) + "\n"


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def report_csv(report: ExperimentReport) -> str:
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRIAL_FIELDS)
    for t in report.trials:
        d = asdict(t)
        w.writerow([_csv_cell(d[k]) for k in TRIAL_FIELDS])
    return buf.getvalue()


def emit_report(report: ExperimentReport, fmt: str, path) -> None:
    """Write ``report`` as JSON (config, summary, trials) or CSV (one row per trial)."""
    if fmt == "json":
        per_trial = True if report.config is None else report.config.get("per_trial", True)
        text = report_json(report, per_trial)
    elif fmt == "csv":
        text = report_csv(report)
    else:
        raise InvalidInput(f"unknown format {fmt!r}")
    Path(path).write_text(text)


_FIELD_TYPES = {
    "n": int, "r": int, "trial": int, "seed": int, "num_closed": int, "closed_size": int,
    "minimized_n": int, "stationary_iters": int, "walk_tv": float, "error": str,
    "unique_closed": bool, "ergodic": bool, "multi_closed": bool,
    "minimized_ergodic": bool, "stationary_converged": bool,
}


def _parse_cell(name, text):
    if text == "":
        return None
    kind = _FIELD_TYPES[name]
    if kind is bool:
        return text == "true"
    return kind(text)


def load_report(path) -> ExperimentReport:
    """Inverse of :func:`emit_report`; CSV summaries are recomputed from the rows."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return ExperimentReport.from_dict(json.loads(text))
    rows = list(csv.DictReader(text.splitlines()))
    records = [TrialRecord(**{k: _parse_cell(k, row[k]) for k in TRIAL_FIELDS}) for row in rows]
    return ExperimentReport(aggregate(records), records)


# ---------------------------------------------------------------------------
# analytic bound suite

BOUND_CENSUS_CASES = ((1, 2), (2, 2), (3, 2), (2, 3))
LEMMA_S_VALUES = (1.0, 1.5, 2.0, 5.0)
RATIO_N_VALUES = (10, 50, 200, 1000)


def run_bound_suite(censuses=None) -> dict:
    """Check the analytic claims; raise :class:`CheckFailed` on the first violation.

    ``censuses`` replaces the exact census results (used to test the failure
    path); by default they are computed for :data:`BOUND_CENSUS_CASES`.
    """
    out = {}

    rows = []
    prev = 0.0
    for r in range(2, 11):
        c = grusho_constant(r)
        res = abs(c - 1.0 + math.exp(-c * r))
        if res > 1e-12:
            raise CheckFailed("grusho_residual", r, f"residual {res:.3g}")
        if not prev < c < 1.0:
            raise CheckFailed("grusho_monotone", r, f"c={c!r} after {prev!r}")
        prev = c
        if r in GRUSHO_TABLE and truncate(c) != GRUSHO_TABLE[r]:
            raise CheckFailed("grusho_table", r, f"{truncate(c)} != {GRUSHO_TABLE[r]}")
        rows.append({"r": r, "c": c, "truncated": truncate(c), "residual": res})
    out["grusho"] = rows

    xs = np.arange(1, 1000) / 1000.0
    lemma = []
    for s in LEMMA_S_VALUES:
        vals = [technical_lemma_value(float(x), s) for x in xs]
        i = int(np.argmax(vals))
        if vals[i] > 1.2:
            raise CheckFailed("technical_lemma", (float(xs[i]), s), f"value {vals[i]!r} > 1.2")
        lemma.append({"s": s, "sup": vals[i], "argmax": float(xs[i])})
    argmax1 = lemma[0]["argmax"]
    if not 0.75 <= argmax1 <= 0.85:
        raise CheckFailed("technical_lemma_argmax", argmax1, "outside [0.75, 0.85]")
    out["technical_lemma"] = lemma

    if censuses is None:
        censuses = [brute_force_census(n, r) for n, r in BOUND_CENSUS_CASES]
    dom = []
    for cen in censuses:
        for (m, k), count in sorted(cen.periodic_events.items()):
            p = count / cen.total
            b = emk_bound(cen.n, m, k, cen.r)
            if p > b:
                raise CheckFailed("emk_domination", (cen.n, m, k),
                                  f"census probability {p!r} exceeds bound {b!r} (r={cen.r})")
            dom.append({"n": cen.n, "r": cen.r, "m": m, "k": k, "probability": p, "bound": b})
    out["emk_census"] = dom

    scan = []
    for (n, r), (ratio, where) in sorted(ratio_scan(RATIO_N_VALUES).items()):
        if ratio > RATIO_CAP:
            raise CheckFailed("ratio_bounded", (n, r) + where, f"ratio {ratio!r} > {RATIO_CAP}")
        scan.append({"n": n, "r": r, "max_ratio": ratio, "m": where[0], "k": where[1]})
    out["ratio_scan"] = scan
    out["passed"] = True
    return out
