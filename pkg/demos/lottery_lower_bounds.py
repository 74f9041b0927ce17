"""
No truthful lottery does much better
====================================

Two small families of obnoxious-facility profiles, linked by single-agent
lies. Any truthful randomized mechanism restricted to them is a feasible
point of a linear program; its optimum caps the fraction of the optimum
such a mechanism can guarantee.
"""

from fractions import Fraction as F

from satloc.bounds import (
    alpha_curve_thm10, gadget_thm7, gadget_thm10, lp_lower_bound, maximize_alpha_thm10, nearest_grid_epsilon,
    tail_mass_check,
)

print(lp_lower_bound(gadget_thm7(), 120).report())
print()

eps = nearest_grid_epsilon(256)
gadget = gadget_thm10(eps)
cert = lp_lower_bound(gadget, 256)
print(cert.report())
q, cap = tail_mass_check(gadget, cert)
print(f"tail mass {q:.4f} <= {cap:.4f}")
print()

# the closed-form curve for the two-midpoint family
for e in (F(0), F(1, 16), F(1, 8), eps, F(3, 16), F(1, 4)):
    print(f"eps = {str(e):>7}: {float(alpha_curve_thm10(e)):.6f}")
best_eps, best = maximize_alpha_thm10(10_000)
print(f"best on a 1/10000 grid: eps = {float(best_eps):.6f}, value {float(best):.6f}")

# the LP's coarse-grid answers are never beaten by refining the grid
print([round(lp_lower_bound(gadget_thm10(F(1, 8)), g).bound, 9) for g in (8, 16, 32, 64)])
