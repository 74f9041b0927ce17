"""
How close to optimal, on random instances?
==========================================

Random instances on a 1/60 grid, plus the registry's worst cases, checked
against each mechanism's guarantee with exact comparisons. Then a hill climb
tries to rediscover a worst case from scratch.
"""

from satloc import MECHANISMS, ratio_sweep
from satloc.ratios import adversarial_search, format_instance, on_label_config

for mid, desc in MECHANISMS.items():
    for objective in desc.objectives:
        for variant in desc.variants:
            rep = ratio_sweep(mid, objective, on_label_config(mid, variant), samples=200)
            print(f"{mid}/{objective}/{variant}: worst {rep.worst_ratio} (bound {rep.checked_bound})")

cfg = on_label_config("M5", grid=4, n_max=2, omega_max=2, seed=1)
found = adversarial_search("M5", "SS", cfg, restarts=20)
print(f"hill climb for M5 reached {found.worst_ratio} on {format_instance(found.worst_instance)}")
