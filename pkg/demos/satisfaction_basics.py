"""
Satisfaction of an agent with several locations
===============================================

An agent owns a few points on [0, 1]. How happy she is with a facility at
``y`` depends on the distance from ``y`` to her points, rescaled so the best
possible spot scores 1 and the worst scores 0.
"""

from fractions import Fraction as F

import numpy as np

from satloc import AgentProfile, d1, d2, distance_extremes, satisfaction

# three points, two of them stacked at 1/6
agent = AgentProfile([F(1, 6), F(1, 6), F(5, 6)])

# total distance is smallest at the (left) median and largest at an end
print("d1 at 0, 1/6, 1:", [str(d1(y, agent)) for y in (F(0), F(1, 6), F(1))])
print("sum-distance extremes:", [str(v) for v in distance_extremes(agent, "sum")])

# for the max distance only the two outer points matter
print("d2 at 0:", d2(F(0), agent))

# sample the satisfaction curves on a grid; every value is an exact rational
ys = [F(k, 12) for k in range(13)]
table = np.array([[float(satisfaction(y, agent, s, v)) for y in ys]
                  for s in ("desirable", "obnoxious") for v in ("sum", "max")])
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print("rows: desirable/sum, desirable/max, obnoxious/sum, obnoxious/max")
print(table)

# desirable and obnoxious satisfactions are mirror images
assert np.allclose(table[0] + table[2], 1)
