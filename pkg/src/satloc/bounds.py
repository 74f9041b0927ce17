"""Lower bounds for randomized strategy-proof mechanisms (obnoxious facility, SS).

A *gadget* is a handful of profiles linked by single-agent misreports. Any
strategy-proof mechanism restricted to the gadget is a tuple of lotteries, one
per profile, satisfying the truthfulness inequalities along every edge. With
lotteries supported on ``{k/g}``, the best worst-case fraction ``t`` of the
optimum such a tuple can guarantee is a linear program; ``1/t*`` bounds the
approximation ratio of every such mechanism on the gadget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .core import MAX, OBNOXIOUS, SUM, DomainError, Instance, Outcome, _satisfaction, evaluate
from .opt import objective_value, solve_ss, SS
from .simplex import LinearProgram, simplex_solve

Real = Union[float, Fraction]

SUM_GADGET_BOUND = Fraction(17, 16)
MAX_GADGET_BOUND = 4 * math.sqrt(2) / (4 + math.sqrt(2))
BEST_EPSILON = 0.5 - math.sqrt(2) / 4
# fraction of the published constant an LP certificate must reach to count as reproduced
REPRODUCTION_FACTOR = 0.98


# -- the epsilon curve --------------------------------------------------------


def alpha_curve_thm10(epsilon: Real) -> Real:
    """Ratio forced on a two-agent max-variant gadget with midpoints ``(eps, 1 - eps)``.

    Exact for Fraction input, float otherwise.
    """
    if not 0 <= epsilon < Fraction(1, 2):
        raise DomainError(f"epsilon {epsilon} outside [0, 1/2)")
    return 2 * (1 - 2 * epsilon) / (2 * (1 - epsilon) * (1 - 2 * epsilon) + epsilon)


def maximize_alpha_thm10(grid_denominator: int) -> tuple[Fraction, Fraction]:
    if grid_denominator < 4:
        raise ValueError("grid_denominator must be >= 4")
    best = None
    for k in range((grid_denominator + 1) // 2):
        eps = Fraction(k, grid_denominator)
        if eps >= Fraction(1, 2):
            break
        a = alpha_curve_thm10(eps)
        if best is None or a > best[1]:
            best = (eps, a)
    return best


def nearest_grid_epsilon(grid_denominator: int) -> Fraction:
    return Fraction(round(BEST_EPSILON * grid_denominator), grid_denominator)


# -- gadgets --------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    source: int  # profile the deviator truly faces
    target: int  # profile produced by her misreport
    agent: int


@dataclass
class Gadget:
    name: str
    profiles: list[Instance]
    labels: list[str]
    edges: list[Edge]
    opt: list[Fraction] = field(default_factory=list)
    published_bound: Optional[float] = None

    def __post_init__(self):
        if not self.opt:
            self.opt = [solve_ss(p).value for p in self.profiles]
        for e in self.edges:
            a, b = self.profiles[e.source], self.profiles[e.target]
            others_equal = all(
                x == y for j, (x, y) in enumerate(zip(a.agents, b.agents)) if j != e.agent
            )
            if not others_equal:
                raise ValueError(f"edge {e} changes more than agent {e.agent}'s report")


def _both_ways(source: int, target: int, agent: int) -> list[Edge]:
    return [Edge(source, target, agent), Edge(target, source, agent)]


def gadget_thm7() -> Gadget:
    """Sum-variant gadget: agent 1 can shrink ``(1/6, 1/6, 5/6)`` to all-1/6, and
    the mirror image where agent 2 shrinks ``(1/6, 5/6, 5/6)`` to all-5/6."""
    a, b = Fraction(1, 6), Fraction(5, 6)
    x = Instance(OBNOXIOUS, SUM, [[a, a, b], [b, b, b]])
    shrunk = Instance(OBNOXIOUS, SUM, [[a, a, a], [b, b, b]])
    mirror = Instance(OBNOXIOUS, SUM, [[a, a, a], [a, b, b]])
    return Gadget(
        "thm7",
        [x, shrunk, mirror],
        ["x", "x'", "x''"],
        _both_ways(0, 1, 0) + _both_ways(2, 1, 1),
        published_bound=float(SUM_GADGET_BOUND),
    )


def gadget_thm10(epsilon: Real) -> Gadget:
    """Max-variant gadget on midpoints ``(eps, 1 - eps)``: agent 1 may report 0, and
    symmetrically agent 2 may report 1."""
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 2):
        raise DomainError(f"epsilon {eps} outside (0, 1/2)")
    c = Instance(OBNOXIOUS, MAX, [[eps], [1 - eps]])
    left = Instance(OBNOXIOUS, MAX, [[0], [1 - eps]])
    right = Instance(OBNOXIOUS, MAX, [[eps], [1]])
    return Gadget(
        "thm10",
        [c, left, right],
        ["c", "c'", "c''"],
        _both_ways(0, 1, 0) + _both_ways(0, 2, 1),
        published_bound=MAX_GADGET_BOUND,
    )


# -- the LP -------------------------------------------------------------------------


@dataclass
class GadgetLP:
    """Variables: one mass per (profile, grid point), then ``t``. Maximise ``t``."""

    gadget: Gadget
    grid: int
    lp: LinearProgram
    row_labels: list[str]

    @property
    def points(self) -> list[Fraction]:
        return [Fraction(k, self.grid) for k in range(self.grid + 1)]

    def var(self, profile: int, k: int) -> int:
        return profile * (self.grid + 1) + k

    @property
    def t_index(self) -> int:
        return len(self.gadget.profiles) * (self.grid + 1)

    def vector(self, lotteries: list[Outcome], t: Real) -> list:
        x = [Fraction(0)] * (self.t_index + 1)
        for p, outcome in enumerate(lotteries):
            for y, q in outcome.support():
                k = y * self.grid
                if k.denominator != 1:
                    raise ValueError(f"point {y} not on the 1/{self.grid} grid")
                x[self.var(p, int(k))] += q
        x[self.t_index] = t
        return x

    def violations(self, x: list, tol: Real = 0) -> list[str]:
        bad = []
        for label, row, b in zip(self.row_labels, self.lp.A_ub, self.lp.b_ub):
            if sum(a * v for a, v in zip(row, x)) > b + tol:
                bad.append(label)
        for p, (row, b) in enumerate(zip(self.lp.A_eq, self.lp.b_eq)):
            if abs(sum(a * v for a, v in zip(row, x)) - b) > tol:
                bad.append(f"normalise {self.gadget.labels[p]}")
        if any(v < -tol for v in x[:-1]):
            bad.append("nonnegativity")
        return bad


def build_gadget_lp(gadget: Gadget, grid_denominator: int) -> GadgetLP:
    if grid_denominator < 2:
        raise ValueError("grid_denominator must be >= 2")
    points = [Fraction(k, grid_denominator) for k in range(grid_denominator + 1)]
    width = grid_denominator + 1
    n_vars = len(gadget.profiles) * width + 1
    t = n_vars - 1
    A_ub, b_ub, labels = [], [], []
    for p, inst in enumerate(gadget.profiles):
        row = [Fraction(0)] * n_vars
        for k, y in enumerate(points):
            row[p * width + k] = -objective_value(y, inst, SS)
        row[t] = gadget.opt[p]
        A_ub.append(row), b_ub.append(Fraction(0)), labels.append(f"performance {gadget.labels[p]}")
    for e in gadget.edges:
        truth = gadget.profiles[e.source]
        profile = truth.agents[e.agent]
        row = [Fraction(0)] * n_vars
        for k, y in enumerate(points):
            s = _satisfaction(y, profile, truth.setting, truth.variant)
            row[e.target * width + k] += s
            row[e.source * width + k] -= s
        A_ub.append(row), b_ub.append(Fraction(0))
        labels.append(f"truthful agent {e.agent + 1}: {gadget.labels[e.source]} -> {gadget.labels[e.target]}")
    A_eq, b_eq = [], []
    for p in range(len(gadget.profiles)):
        row = [Fraction(0)] * n_vars
        for k in range(width):
            row[p * width + k] = Fraction(1)
        A_eq.append(row), b_eq.append(Fraction(1))
    c = [0] * n_vars
    c[t] = 1
    return GadgetLP(gadget, grid_denominator, LinearProgram(c, A_ub, b_ub, A_eq, b_eq), labels)


@dataclass
class BoundCertificate:
    gadget: str
    grid: int
    t_star: Real
    bound: Real
    iterations: int
    status: str
    published_bound: Optional[float]
    lotteries: list = field(default_factory=list, repr=False)

    @property
    def margin(self) -> Optional[float]:
        if self.published_bound is None:
            return None
        return float(self.bound) - self.published_bound

    def report(self) -> str:
        lines = [
            f"gadget:      {self.gadget}",
            f"grid:        1/{self.grid}",
            f"t*:          {float(self.t_star):.9f}",
            f"bound:       {float(self.bound):.9f}",
        ]
        if self.published_bound is not None:
            lines.append(f"published:   {self.published_bound:.9f}")
            lines.append(f"margin:      {self.margin:+.9f}")
        lines.append(f"iterations:  {self.iterations}")
        lines.append(f"status:      {self.status}")
        return "\n".join(lines)


def lp_lower_bound(gadget: Gadget, grid_denominator: int, exact: bool = False) -> BoundCertificate:
    glp = build_gadget_lp(gadget, grid_denominator)
    lp = glp.lp
    if not exact:
        lp = LinearProgram(
            [float(v) for v in lp.c],
            [[float(v) for v in r] for r in lp.A_ub], [float(v) for v in lp.b_ub],
            [[float(v) for v in r] for r in lp.A_eq], [float(v) for v in lp.b_eq],
        )
    res = simplex_solve(lp, exact=exact)
    t_star = res.value
    width = grid_denominator + 1
    lotteries = []
    for p in range(len(gadget.profiles)):
        masses = res.x[p * width:(p + 1) * width]
        lotteries.append([(Fraction(k, grid_denominator), q) for k, q in enumerate(masses) if q > (0 if exact else 1e-12)])
    return BoundCertificate(
        gadget.name, grid_denominator, t_star, 1 / t_star, res.iterations, res.status,
        gadget.published_bound, lotteries,
    )


def expected_distance(lottery: list, point: Real) -> float:
    return sum(q * abs(y - point) for y, q in lottery)


def tail_mass_check(gadget: Gadget, certificate: BoundCertificate) -> tuple[float, float]:
    """For a max-variant gadget solution, return ``(q, cap)`` where ``q`` is the mass the
    deviated profile puts at or beyond the other agent's point and ``cap = 1/(2(1-2 eps))``.

    Which side is used depends on which agent sits closer (in expectation) to the
    facility at the truthful profile; one of the two always does.
    """
    eps = gadget.profiles[0].agents[0].locations[0]
    truth, left, right = certificate.lotteries
    cap = 1 / (2 * (1 - 2 * float(eps)))
    if expected_distance(truth, eps) <= 0.5:
        q = sum(float(m) for y, m in left if y >= 1 - eps)
    else:
        q = sum(float(m) for y, m in right if y <= eps)
    return q, cap
