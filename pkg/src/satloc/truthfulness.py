"""Strategy-proofness and group strategy-proofness by exhaustive misreport search.

A deviating agent reports a constant profile ``(v, ..., v)`` of her true
length; such a profile has median = midpoint = mean = ``v``, so it realises
any target value of the statistic a mechanism reads. Target values cover a
uniform grid, the mechanisms' thresholds, every other agent's statistic and
the midpoints between consecutive thresholds, so every ordering of the
deviator's statistic against the pivotal values is tried.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Optional

from .core import AgentProfile, Instance, Outcome, expected_satisfaction
from .mechanisms import CLAMP_HIGH, CLAMP_LOW, MechanismDescriptor, get_mechanism

SP_HOLDS = "sp_holds"
VIOLATED = "violated"

THRESHOLDS = (Fraction(0), CLAMP_LOW, Fraction(1, 2), CLAMP_HIGH, Fraction(1))
DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class Misreport:
    coalition: tuple[int, ...]
    reports: tuple[AgentProfile, ...]
    outcome: Outcome
    before: tuple[Fraction, ...]
    after: tuple[Fraction, ...]


@dataclass(frozen=True)
class SPReport:
    verdict: str
    witness: Optional[Misreport]
    candidates_tried: int
    inconclusive: bool = False

    @property
    def holds(self) -> bool:
        return self.verdict == SP_HOLDS


def target_values(desc: MechanismDescriptor, instance: Instance, agent: int, grid_denominator: int) -> list[Fraction]:
    pivots = set(THRESHOLDS)
    pivots.update(desc.statistic(a) for j, a in enumerate(instance.agents) if j != agent)
    ordered = sorted(pivots)
    values = set(ordered)
    values.update((a + b) / 2 for a, b in zip(ordered, ordered[1:]))
    values.update(Fraction(k, grid_denominator) for k in range(grid_denominator + 1))
    return sorted(values)


def misreport_candidates(
    mechanism, instance: Instance, agent: int, grid_denominator: int
) -> list[AgentProfile]:
    """Constant reports of the agent's length, one per distinct mechanism-relevant key."""
    if not 0 <= agent < instance.n:
        raise IndexError(f"agent {agent} out of range for n={instance.n}")
    if grid_denominator < 2:
        raise ValueError("grid_denominator must be >= 2")
    desc = get_mechanism(mechanism)
    count = instance.agents[agent].count
    seen = set()
    out = []
    for v in target_values(desc, instance, agent, grid_denominator):
        profile = AgentProfile.constant(v, count)
        key = desc.key(profile)
        if key not in seen:
            seen.add(key)
            out.append(profile)
    return out


class _Evaluator:
    """Mechanism runs and deviator satisfactions, memoised.

    Mechanisms with an ``aggregate`` are evaluated straight from the reduced
    statistics, skipping instance construction.
    """

    def __init__(self, desc: MechanismDescriptor, instance: Instance):
        self.desc = desc
        self.instance = instance
        self.fast = desc.aggregate is not None
        self.keys = [desc.key(a) for a in instance.agents] if self.fast else None
        self.cache: dict = {}
        self.sat_cache: dict = {}

    def outcome(self, replacements: dict[int, AgentProfile]) -> Outcome:
        if not self.fast:
            memo = tuple(sorted(replacements.items()))
            hit = self.cache.get(memo)
            if hit is None:
                hit = self.cache[memo] = self.desc.rule(self.instance.with_agents(replacements))
            return hit
        keys = list(self.keys)
        for i, p in replacements.items():
            keys[i] = self.desc.key(p)
        return self.from_keys(keys)

    def from_keys(self, keys: list) -> Outcome:
        # aggregates are cheaper than hashing a tuple of Fractions
        return self.desc.aggregate(keys)

    def satisfaction(self, outcome: Outcome, agent: int) -> Fraction:
        memo = (outcome, agent)
        hit = self.sat_cache.get(memo)
        if hit is None:
            inst = self.instance
            hit = self.sat_cache[memo] = expected_satisfaction(
                outcome, inst.agents[agent], inst.setting, inst.variant
            )
        return hit


def check_sp(mechanism, instance: Instance, grid_denominator: int = 20) -> SPReport:
    """Search single-agent misreports for a strict exact improvement."""
    desc = get_mechanism(mechanism)
    ev = _Evaluator(desc, instance)
    truthful = desc.rule(instance)
    tried = 0
    for i in range(instance.n):
        before = ev.satisfaction(truthful, i)
        for report in misreport_candidates(desc, instance, i, grid_denominator):
            tried += 1
            outcome = ev.outcome({i: report})
            after = ev.satisfaction(outcome, i)
            if after > before:
                return SPReport(VIOLATED, Misreport((i,), (report,), outcome, (before,), (after,)), tried)
    return SPReport(SP_HOLDS, None, tried)


def _coalition_values(desc: MechanismDescriptor, instance: Instance, coalition, grid_denominator: int):
    """One target value per distinct reduced key, pooled over the coalition."""
    values: dict = {}
    for i in coalition:
        for p in misreport_candidates(desc, instance, i, grid_denominator):
            values.setdefault(desc.key(p), p.locations[0])
    return sorted(values.values())


def _joint_deviations(desc: MechanismDescriptor, instance: Instance, coalition, grid_denominator: int):
    """Yield tuples of target values, one per coalition member."""
    if desc.anonymous and desc.aggregate is not None and len(coalition) > 1:
        # the output only sees the multiset of statistics, so which member
        # sends which value is irrelevant
        values = _coalition_values(desc, instance, coalition, grid_denominator)
        yield from combinations_with_replacement(values, len(coalition))
        return
    per_agent = [
        [p.locations[0] for p in misreport_candidates(desc, instance, i, grid_denominator)] for i in coalition
    ]
    yield from product(*per_agent)


def check_gsp(
    mechanism,
    instance: Instance,
    max_coalition_size: int,
    grid_denominator: int = 20,
    budget: int = DEFAULT_BUDGET,
) -> SPReport:
    """Search coalitions of size <= ``max_coalition_size`` for a deviation that makes
    every member strictly better off. Stops with ``inconclusive`` once ``budget``
    joint deviations have been tried without finding one."""
    max_coalition_size = min(max_coalition_size, instance.n)
    desc = get_mechanism(mechanism)
    ev = _Evaluator(desc, instance)
    truthful = desc.rule(instance)
    before_all = [ev.satisfaction(truthful, i) for i in range(instance.n)]
    tried = 0
    for size in range(1, max_coalition_size + 1):
        for coalition in combinations(range(instance.n), size):
            before = tuple(before_all[i] for i in coalition)
            blocked: dict = {}
            for values in _joint_deviations(desc, instance, coalition, grid_denominator):
                if tried >= budget:
                    return SPReport(SP_HOLDS, None, tried, inconclusive=True)
                tried += 1
                if ev.fast:
                    keys = list(ev.keys)
                    for i, v in zip(coalition, values):
                        keys[i] = desc.reduce(v)
                    outcome = ev.from_keys(keys)
                else:
                    outcome = ev.outcome(
                        {i: AgentProfile.constant(v, instance.agents[i].count) for i, v in zip(coalition, values)}
                    )
                gain = blocked.get(outcome)
                if gain is None:
                    after = tuple(ev.satisfaction(outcome, i) for i in coalition)
                    gain = blocked[outcome] = all(a > b for a, b in zip(after, before))
                if gain:
                    reports = tuple(
                        AgentProfile.constant(v, instance.agents[i].count) for i, v in zip(coalition, values)
                    )
                    after = tuple(ev.satisfaction(outcome, i) for i in coalition)
                    return SPReport(VIOLATED, Misreport(coalition, reports, outcome, before, after), tried)
    return SPReport(SP_HOLDS, None, tried)


def replay(mechanism, instance: Instance, witness: Misreport) -> bool:
    """Re-run a witness from scratch; True iff every deviator strictly gains."""
    desc = get_mechanism(mechanism)
    truthful = desc.rule(instance)
    deviated = desc.rule(instance.with_agents(dict(zip(witness.coalition, witness.reports))))
    for i in witness.coalition:
        p = instance.agents[i]
        if expected_satisfaction(deviated, p, instance.setting, instance.variant) <= expected_satisfaction(
            truthful, p, instance.setting, instance.variant
        ):
            return False
    return True
