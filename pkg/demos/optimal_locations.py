"""
Where should the facility go?
=============================

Social satisfaction (SS) adds up the agents' satisfactions and minimum
satisfaction (MS) takes the worst off. Both are piecewise linear in ``y``,
so the optimum sits on a short list of candidate points.
"""

from fractions import Fraction as F

from satloc import Instance
from satloc.opt import candidate_points, grid_oracle, solve

inst = Instance("desirable", "sum", [[0, F(1, 3)], [F(1, 2), F(2, 3), 1], [F(3, 4)]])

for objective in ("SS", "MS"):
    cands = candidate_points(inst, objective)
    best = solve(inst, objective)
    print(f"{objective}: {len(cands)} candidates, optimum at {best.location} with value {best.value}")
    # a fine grid search never beats the candidate list
    oracle = grid_oracle(inst, objective, 600)
    assert best.value >= oracle.value
    print(f"    grid search at 1/600 finds {oracle.value}")

# for an obnoxious facility SS is convex, so an endpoint wins
far = Instance("obnoxious", "sum", [[F(1, 6), F(1, 6), F(5, 6)], [F(5, 6)] * 3])
print("obnoxious optimum:", solve(far, "SS"))
