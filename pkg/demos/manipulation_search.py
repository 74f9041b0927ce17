"""
Can anyone gain by lying?
=========================

A lying agent reports a constant profile ``(v, ..., v)``: it has the same
median, midpoint and mean ``v``, so a handful of well-chosen ``v`` values
reach every output a mechanism can produce.
"""

import random
from fractions import Fraction as F

from satloc import Instance, MECHANISMS, check_gsp, check_sp
from satloc.ratios import on_label_config, random_instance
from satloc.truthfulness import replay

# averaging every reported point is easy to game
inst = Instance("desirable", "sum", [[F(1, 4), F(1, 4)], [1, 1]])
rep = check_sp("MEAN", inst)
w = rep.witness
print(f"MEAN: agent {w.coalition[0] + 1} reports {w.reports[0].locations}, facility moves to {w.outcome},")
print(f"      satisfaction {w.before[0]} -> {w.after[0]} (replays: {replay('MEAN', inst, w)})")

# the seven mechanisms resist single liars and small coalitions
rng = random.Random(0)
for mid in MECHANISMS:
    cfg = on_label_config(mid, n_max=4, omega_max=3, grid=12)
    tried = 0
    for _ in range(20):
        inst = random_instance(cfg, rng)
        assert check_sp(mid, inst, 12).holds
        r = check_gsp(mid, inst, 3, 12)
        assert r.holds and not r.inconclusive
        tried += r.candidates_tried
    print(f"{mid}: no profitable deviation in 20 instances ({tried} joint reports tried)")
