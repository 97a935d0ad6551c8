"""Command line entry point: ``ergodfa <command> ...``.

Worker processes are taken from ``--workers`` or the ``ERGODFA_WORKERS``
environment variable; they only affect speed, never output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .bounds import brute_force_census, emk_bound, grusho_constant, truncate
from .errors import CheckFailed, ErgodfaError, NotConverged
from .experiments import (
    ExperimentConfig, emit_report, report_csv, report_json, run_bound_suite, run_campaign,
    worker_count,
)
from .markov import simulate_walk, stationary, transition_matrix, tv_distance
from .minimize import minimize
from .randgen import SampleSpec, sample_dfa


def _dump(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _campaign_failures(report) -> list[str]:
    bad = []
    for t in report.trials:
        if t.error is not None:
            bad.append(f"n={t.n} trial={t.trial}: {t.error}")
        elif t.ergodic and t.minimized_ergodic is False:
            bad.append(f"n={t.n} trial={t.trial}: minimized DFA is not ergodic")
        elif t.ergodic and t.stationary_converged is False:
            bad.append(f"n={t.n} trial={t.trial}: power iteration did not converge")
    return bad


def cmd_campaign(args):
    cfg = ExperimentConfig.from_json(args.config)
    report = run_campaign(cfg, worker_count(args.workers))
    fmt = args.format or cfg.format
    out = args.out or cfg.output_path
    if out:
        emit_report(report, fmt, out)
    else:
        per_trial = cfg.per_trial
        sys.stdout.write(report_json(report, per_trial) if fmt == "json" else report_csv(report))
    bad = _campaign_failures(report)
    for line in bad:
        print(line, file=sys.stderr)
    return 1 if bad else 0


def cmd_bounds_suite(args):
    try:
        result = run_bound_suite()
    except CheckFailed as exc:
        print(str(exc), file=sys.stderr)
        return 1
    _dump(result, args.out)
    return 0


def cmd_census(args):
    res = brute_force_census(args.n, args.r, worker_count(args.workers))
    d = res.to_dict()
    d["ergodic_ratio"] = res.ergodic_ratio
    _dump(d, args.out)
    return 0


def cmd_grusho(args):
    c = grusho_constant(args.r)
    _dump({"r": args.r, "c": c, "truncated": truncate(c)})
    return 0


def cmd_emk(args):
    _dump({"n": args.n, "m": args.m, "k": args.k, "r": args.r,
           "bound": emk_bound(args.n, args.m, args.k, args.r)})
    return 0


def cmd_sample(args):
    a = sample_dfa(SampleSpec(args.n, args.r, args.seed, args.trial))
    if args.out:
        io.save(a, args.out)
    else:
        sys.stdout.write(io.to_json(a) + "\n")
    return 0


def cmd_minimize(args):
    a = io.load(args.inp).to_dfa()
    res = minimize(a, keep_trace=bool(args.trace))
    io.save(res.dfa, args.out)
    if args.trace:
        _dump(res.trace.to_dict(), args.trace)
    return 0


def cmd_walk(args):
    a = io.load(args.inp).to_dfa()
    walk = simulate_walk(a, args.seed, args.steps)
    out = {"steps": args.steps, "seed": args.seed, "final_state": walk.final_state,
           "frequencies": walk.frequencies.tolist()}
    try:
        p = stationary(transition_matrix(a), args.tol)
        out["stationary"] = p.tolist()
        out["tv"] = tv_distance(walk.frequencies, p)
    except NotConverged:
        out["stationary"] = None
        out["tv"] = None
    _dump(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ergodfa", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("campaign", help="run a Monte Carlo campaign from a JSON config")
    c.add_argument("--config", required=True)
    c.add_argument("--out")
    c.add_argument("--format", choices=["json", "csv"])
    c.add_argument("--workers", type=int)
    c.set_defaults(func=cmd_campaign)

    c = sub.add_parser("bounds-suite", help="check the analytic bounds")
    c.add_argument("--out")
    c.set_defaults(func=cmd_bounds_suite)

    def add_census(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--out")
        sp.add_argument("--workers", type=int)
        sp.set_defaults(func=cmd_census)

    add_census(sub.add_parser("census", help="exact structure census for tiny n"))

    b = sub.add_parser("bounds", help="individual analytic quantities")
    bsub = b.add_subparsers(dest="bounds_command", required=True)
    g = bsub.add_parser("grusho")
    g.add_argument("--r", type=int, required=True)
    g.set_defaults(func=cmd_grusho)
    e = bsub.add_parser("emk")
    for name in ("n", "m", "k", "r"):
        e.add_argument(f"--{name}", type=int, required=True)
    e.set_defaults(func=cmd_emk)
    add_census(bsub.add_parser("census"))

    s = sub.add_parser("sample", help="sample one random DFA")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--trial", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    m = sub.add_parser("minimize", help="minimize a DFA by elementary merges")
    m.add_argument("--in", dest="inp", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--trace")
    m.set_defaults(func=cmd_minimize)

    w = sub.add_parser("walk", help="simulate a random walk and compare with the stationary law")
    w.add_argument("--in", dest="inp", required=True)
    w.add_argument("--steps", type=int, required=True)
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--tol", type=float, default=1e-10)
    w.set_defaults(func=cmd_walk)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ErgodfaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
