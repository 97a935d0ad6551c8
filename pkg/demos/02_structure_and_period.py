"""
Communicating classes and periodicity
=====================================

The random walk on an automaton only cares about its transition graph.  We
split the graph into communicating classes, find the closed ones and compute
their periods.
"""

from ergodfa import Dfa, communicating_classes, period_of_class
from ergodfa.structure import periodic_partition

# A 3-cycle: every symbol moves one step forward.  Period 3.
cycle = Dfa.from_table([[1, 1], [2, 2], [0, 0]], [0, 0, 0])
dec = communicating_classes(cycle)
print("classes:", dec.classes, "closed:", dec.closed, "period:", dec.period)
print("the three parts:", [sorted(p) for p in periodic_partition(cycle, (0, 1, 2), 3)])

# Give state 0 a self-loop on 'b' and the cycle becomes aperiodic
loop = Dfa.from_table([[1, 0], [2, 2], [0, 0]], [0, 0, 0])
print("with a self-loop the period is", period_of_class(loop, (0, 1, 2)))

# Two absorbing states: two closed classes, so the walk is not ergodic
sinks = Dfa.from_table([[1, 2], [1, 1], [2, 2]], [0, 0, 0])
dec = communicating_classes(sinks)
print("closed classes:", dec.closed_classes, "transient:", sorted(dec.transient),
      "ergodic:", dec.is_ergodic)

# A 2-cycle on two symbols with a 4-cycle hanging off it
mixed = Dfa.from_table([[1, 1], [0, 2], [3, 3], [4, 4], [5, 5], [2, 2]], [0] * 6)
for cls, closed, period in zip(*[communicating_classes(mixed).to_dict()[k]
                                  for k in ("classes", "closed", "period")]):
    print(f"class {cls}: closed={closed} period={period}")
