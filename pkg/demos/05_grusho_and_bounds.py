"""
The closed-class constant and the periodicity bound
===================================================

The unique closed class of a large random DFA holds a fraction c(r) of the
states, where c solves c = 1 - exp(-c r).  Periodic closed classes are rare,
and an explicit union bound says how rare.  For tiny n we can check it
against exact counts.
"""

import numpy as np

from ergodfa import brute_force_census, emk_bound, grusho_constant, technical_lemma_value
from ergodfa.bounds import ratio_scan, truncate

for r in range(2, 8):
    print(f"r={r}: c={grusho_constant(r):.6f} (3 digits: {truncate(grusho_constant(r))})")

# The auxiliary inequality x^s / (1-x)^((1-x)/x) <= 1.2
xs = np.linspace(0.001, 0.999, 999)
vals = np.array([technical_lemma_value(x) for x in xs])
print(f"sup over the grid: {vals.max():.4f} at x={xs[vals.argmax()]:.3f}")

# Exact census over all transition tables with 3 states and 2 symbols
cen = brute_force_census(3, 2)
print(f"n=3: {cen.total} tables, {cen.unique_closed} with one closed class, {cen.ergodic} ergodic")
for (m, k), count in sorted(cen.periodic_events.items()):
    print(f"  size {m}, period {k}: probability {count / cen.total:.4f} <= bound {emk_bound(3, m, k, 2):.4f}")

# The bound divided by its simplified shape stays small
for (n, r), (ratio, where) in sorted(ratio_scan([10, 100, 500]).items()):
    print(f"n={n} r={r}: largest ratio {ratio:.3f} at (m, k)={where}")
