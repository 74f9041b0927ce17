"""Exact optimal facility locations for social (SS) and minimum (MS) satisfaction.

Every agent's satisfaction is piecewise linear in the facility location with
breakpoints at her locations (sum variant) or her midpoint (max variant). SS
is therefore maximised at a breakpoint or an endpoint. MS is the lower
envelope of these functions; on each piece of the common refinement it is a
minimum of lines, so its maximum sits at a piece endpoint or where two lines
cross. Both candidate sets are finite and rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import MAX, ONE, ZERO, Instance, Point, _satisfaction, evaluate, midpoint

SS = "SS"
MS = "MS"
OBJECTIVES = (SS, MS)


def normalize_objective(objective: str) -> str:
    obj = objective.upper()
    if obj not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected SS or MS")
    return obj


@dataclass(frozen=True)
class OptResult:
    location: Fraction
    value: Fraction
    objective: str
    candidates_examined: int


def objective_value(y: Fraction, instance: Instance, objective: str) -> Fraction:
    values = [_satisfaction(y, a, instance.setting, instance.variant) for a in instance.agents]
    return sum(values, ZERO) if objective == SS else min(values)


def breakpoints(instance: Instance) -> list[Fraction]:
    points = {ZERO, ONE}
    for agent in instance.agents:
        if instance.variant == MAX:
            points.add(midpoint(agent))
        else:
            points.update(agent.locations)
    return sorted(points)


def _crossings(instance: Instance, pieces: list[Fraction]) -> set[Fraction]:
    found: set[Fraction] = set()
    s = [
        [_satisfaction(b, a, instance.setting, instance.variant) for b in pieces]
        for a in instance.agents
    ]
    for k in range(len(pieces) - 1):
        left, right = pieces[k], pieces[k + 1]
        for i, j in combinations(range(instance.n), 2):
            gap_left = s[i][k] - s[j][k]
            gap_right = s[i][k + 1] - s[j][k + 1]
            if gap_left * gap_right < 0:
                found.add(left + (right - left) * gap_left / (gap_left - gap_right))
    return found


def candidate_points(instance: Instance, objective: str) -> list[Fraction]:
    objective = normalize_objective(objective)
    pieces = breakpoints(instance)
    if objective == SS:
        return pieces
    return sorted(set(pieces) | _crossings(instance, pieces))


def _best(instance: Instance, objective: str, points: list[Fraction]) -> OptResult:
    best_y, best_v = None, None
    for y in points:
        v = objective_value(y, instance, objective)
        if best_v is None or v > best_v:
            best_y, best_v = y, v
    return OptResult(best_y, best_v, objective, len(points))


def solve(instance: Instance, objective: str) -> OptResult:
    objective = normalize_objective(objective)
    return _best(instance, objective, candidate_points(instance, objective))


def solve_ss(instance: Instance) -> OptResult:
    return solve(instance, SS)


def solve_ms(instance: Instance) -> OptResult:
    return solve(instance, MS)


def argmax_set(instance: Instance, objective: str) -> list[Fraction]:
    """All candidate points attaining the optimum (the optimum may also be attained between them)."""
    objective = normalize_objective(objective)
    points = candidate_points(instance, objective)
    values = [objective_value(y, instance, objective) for y in points]
    top = max(values)
    return [y for y, v in zip(points, values) if v == top]


def grid_oracle(instance: Instance, objective: str, grid_denominator: int) -> OptResult:
    """Brute force over ``k / grid_denominator``; independent of the candidate analysis."""
    if grid_denominator < 1:
        raise ValueError("grid_denominator must be >= 1")
    objective = normalize_objective(objective)
    best_y, best_v = None, None
    for k in range(grid_denominator + 1):
        y = Fraction(k, grid_denominator)
        v = evaluate(Point(y), instance).objective(objective)
        if best_v is None or v > best_v:
            best_y, best_v = y, v
    return OptResult(best_y, best_v, objective, grid_denominator + 1)
