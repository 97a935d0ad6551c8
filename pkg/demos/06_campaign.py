"""
A Monte Carlo campaign
======================

Sample many random DFA per size, record their structure, and check that
minimization never breaks ergodicity.  The report does not depend on the
number of worker processes.
"""

import json

from ergodfa.experiments import ExperimentConfig, report_csv, report_json, run_campaign

cfg = ExperimentConfig(n_values=[10, 50, 200], r=2, trials=100, master_seed=20141015,
                       checks=["ergodicity", "class_size", "minimization_preservation",
                               "stationary", "walk"], walk_steps=20_000)
rep = run_campaign(cfg, workers=2)

for s in rep.summary:
    print(f"n={s.n:>4}: ergodic {s.fraction_ergodic:.2f}, closed class holds "
          f"{s.mean_class_fraction:.3f} of the states (c={s.grusho_c:.3f}), "
          f"minimized still ergodic {s.fraction_minimized_ergodic:.2f}, "
          f"walk TV {s.mean_walk_tv:.3f}")

# Same campaign on one worker gives the same bytes
assert report_json(run_campaign(cfg, workers=1)) == report_json(rep)

print(report_csv(rep).splitlines()[0])
print(json.dumps(json.loads(report_json(rep, per_trial=False))["summary"][0], indent=1)[:300])
