import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from satloc.bounds import (
    BEST_EPSILON, MAX_GADGET_BOUND, REPRODUCTION_FACTOR, SUM_GADGET_BOUND, Edge, Gadget, alpha_curve_thm10,
    build_gadget_lp, gadget_thm7, gadget_thm10, lp_lower_bound, maximize_alpha_thm10, nearest_grid_epsilon,
    tail_mass_check,
)
from satloc.core import MAX, OBNOXIOUS, SUM, DomainError, Instance, distance_extremes, midpoint
from satloc.mechanisms import mech5_proportional_lottery, mech7_midpoint_lottery
from satloc.opt import solve_ss

F = Fraction


def test_alpha_curve_values():
    assert alpha_curve_thm10(BEST_EPSILON) == pytest.approx(MAX_GADGET_BOUND, abs=1e-12)
    assert MAX_GADGET_BOUND == pytest.approx(1.0448, abs=1e-4)
    assert alpha_curve_thm10(F(0)) == 1
    assert alpha_curve_thm10(F(1, 4)) == 1
    with pytest.raises(DomainError):
        alpha_curve_thm10(F(1, 2))
    with pytest.raises(DomainError):
        alpha_curve_thm10(-0.1)


@given(st.fractions(min_value=0, max_value=F(1, 2)).filter(lambda e: e < F(1, 2)))
def test_alpha_curve_identity(eps):
    a = alpha_curve_thm10(eps)
    assert isinstance(a, Fraction)
    assert a * (2 * (1 - eps) * (1 - 2 * eps) + eps) == 2 * (1 - 2 * eps)


def test_alpha_maximiser():
    assert maximize_alpha_thm10(4)[1] == 1
    eps, a = maximize_alpha_thm10(10**4)
    assert abs(float(eps) - (0.5 - math.sqrt(2) / 4)) < 1e-4
    assert abs(float(a) - 1.04481) < 1e-4
    prev = F(0)
    for g in (4, 8, 16, 32, 64):
        cur = maximize_alpha_thm10(g)[1]
        assert cur >= prev
        prev = cur
    with pytest.raises(ValueError):
        maximize_alpha_thm10(3)
    assert nearest_grid_epsilon(256) == F(37, 256)


def test_sum_gadget_numbers():
    g = gadget_thm7()
    x, shrunk, mirror = g.profiles
    assert solve_ss(x).location == 0 and solve_ss(x).value == F(10, 7)
    assert g.opt == [F(10, 7), F(6, 5), F(10, 7)]
    assert distance_extremes(x.agents[0], SUM) == (F(2, 3), F(11, 6))
    assert distance_extremes(x.agents[1], SUM) == (0, F(5, 2))
    assert shrunk.agents[0].locations == (F(1, 6),) * 3
    assert (x.setting, x.variant) == (OBNOXIOUS, SUM)


def test_max_gadget_numbers():
    eps = F(1, 7)
    g = gadget_thm10(eps)
    c, left, right = g.profiles
    assert [midpoint(a) for a in c.agents] == [eps, 1 - eps]
    assert solve_ss(c).location == 0 and solve_ss(c).value == 1 / (1 - eps)
    assert solve_ss(left).location == 1 and solve_ss(left).value == 1 / (1 - eps)
    assert g.opt == [1 / (1 - eps)] * 3
    with pytest.raises(DomainError):
        gadget_thm10(F(1, 2))
    with pytest.raises(DomainError):
        gadget_thm10(0)


def test_edges_come_in_pairs():
    for g in (gadget_thm7(), gadget_thm10(F(1, 8))):
        pairs = {}
        for e in g.edges:
            pairs.setdefault(frozenset((e.source, e.target)), []).append(e)
        assert all(len(v) == 2 for v in pairs.values())
        for a, b in pairs.values():
            assert (a.source, a.target) == (b.target, b.source) and a.agent == b.agent


def test_edge_validation():
    g = gadget_thm7()
    with pytest.raises(ValueError):
        Gadget("bad", g.profiles[:2], ["x", "x'"], [Edge(0, 1, 1)])


def test_lp_shape():
    glp = build_gadget_lp(gadget_thm7(), 6)
    assert len(glp.lp.c) == 3 * 7 + 1
    assert len(glp.lp.A_ub) == 3 + 4 and len(glp.lp.A_eq) == 3
    assert all(len(r) == len(glp.lp.c) for r in glp.lp.A_ub + glp.lp.A_eq)
    uniform = [[F(1, 7)] * 7 for _ in range(3)]
    x = [v for row in uniform for v in row] + [0]
    assert not [v for v in glp.violations(x) if v.startswith("normalise")]


def test_certificates_reach_published_constants():
    c7 = lp_lower_bound(gadget_thm7(), 120)
    assert c7.bound >= REPRODUCTION_FACTOR * float(SUM_GADGET_BOUND)
    assert c7.bound == pytest.approx(17 / 16, abs=1e-9)
    c10 = lp_lower_bound(gadget_thm10(nearest_grid_epsilon(256)), 256)
    assert c10.bound >= REPRODUCTION_FACTOR * MAX_GADGET_BOUND
    assert c10.margin > 0
    assert "margin" in c10.report()


def test_exact_certificate():
    cert = lp_lower_bound(gadget_thm7(), 12, exact=True)
    assert cert.bound == SUM_GADGET_BOUND


def test_single_profile_gadget_is_trivial():
    inst = Instance(OBNOXIOUS, SUM, [[F(1, 6), F(1, 6), F(5, 6)], [F(5, 6)] * 3])
    cert = lp_lower_bound(Gadget("one", [inst], ["x"], []), 8)
    assert cert.bound == pytest.approx(1, abs=1e-9)


def test_finer_grids_never_raise_the_bound():
    # a coarse grid's lotteries stay feasible on any refinement, so t* can only grow
    for gadget in (gadget_thm7(), gadget_thm10(F(1, 8))):
        bounds = [lp_lower_bound(gadget, g).bound for g in (8, 16, 32, 64, 128)]
        assert all(b >= 1 - 1e-9 for b in bounds)
        assert all(fine <= coarse + 1e-9 for coarse, fine in zip(bounds, bounds[1:]))


def test_lottery_mechanisms_are_lp_feasible_at_three_quarters():
    g7 = gadget_thm7()
    glp = build_gadget_lp(g7, 6)
    x = glp.vector([mech5_proportional_lottery(p) for p in g7.profiles], F(3, 4))
    assert glp.violations(x) == []
    g10 = gadget_thm10(F(1, 8))
    glp = build_gadget_lp(g10, 8)
    x = glp.vector([mech7_midpoint_lottery(p) for p in g10.profiles], F(3, 4))
    assert glp.violations(x) == []
    # the guarantee is not free: a t above every feasible value breaks a performance row
    x = glp.vector([mech7_midpoint_lottery(p) for p in g10.profiles], F(2))
    assert any(v.startswith("performance") for v in glp.violations(x))


def test_tail_mass_respects_cap():
    for g in (64, 256):
        gadget = gadget_thm10(nearest_grid_epsilon(g))
        q, cap = tail_mass_check(gadget, lp_lower_bound(gadget, g))
        assert q <= cap + 1 / g
