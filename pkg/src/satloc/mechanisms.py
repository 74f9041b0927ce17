"""The seven strategy-proof mechanisms, plus strawmen for negative tests.

Every mechanism is a pure map ``Instance -> Outcome``. Lotteries stay symbolic;
nothing is ever sampled. Each agent influences the output only through one
statistic of her report (median, midpoint, or which endpoint she prefers),
which the descriptors expose so the truthfulness checker can enumerate
deviations by statistic value.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Optional

from .core import (
    DESIRABLE,
    HALF,
    MAX,
    OBNOXIOUS,
    ONE,
    SUM,
    ZERO,
    AgentProfile,
    Instance,
    Outcome,
    Point,
    left_median,
    location_sum,
    lottery,
    midpoint,
)
from .opt import MS, SS

CLAMP_LOW = Fraction(1, 5)
CLAMP_HIGH = Fraction(4, 5)


class UnknownMechanism(KeyError):
    pass


@dataclass(frozen=True)
class PartitionStats:
    n1: int  # sum of locations >= sum of (1 - location): prefers the facility at 0
    n2: int
    s1: int  # midpoint in [0, 1/2]
    s2: int


def prefers_zero(profile: AgentProfile) -> bool:
    total = location_sum(profile)
    return total >= profile.count - total


def partition_stats(instance: Instance) -> PartitionStats:
    n1 = sum(prefers_zero(a) for a in instance.agents)
    s1 = sum(midpoint(a) <= HALF for a in instance.agents)
    return PartitionStats(n1, instance.n - n1, s1, instance.n - s1)


def _upper_middle(n: int) -> int:
    """0-based index of the ceil(n/2)-th order statistic."""
    return (n + 1) // 2 - 1


# Each mechanism reads one statistic per agent. The ``_from_*`` helpers map the
# list of per-agent statistics to the outcome; the public ``mechN_*`` functions
# are the same rules on full instances.


def _from_medians(medians: list) -> Outcome:
    return Point(left_median(medians))


def _from_half(_: list) -> Outcome:
    return Point(HALF)


def _from_midpoints_clamped(mids: list) -> Outcome:
    m = sorted(mids)[_upper_middle(len(mids))]
    return Point(min(max(m, CLAMP_LOW), CLAMP_HIGH))


def _from_sides_majority(zero_side: list) -> Outcome:
    n1 = sum(zero_side)
    return Point(ZERO if n1 >= len(zero_side) - n1 else ONE)


def _from_sides_lottery(zero_side: list) -> Outcome:
    n = len(zero_side)
    n1 = sum(zero_side)
    return lottery([(ZERO, Fraction(n1, n)), (ONE, Fraction(n - n1, n))])


def _from_halves_majority(left_half: list) -> Outcome:
    s1 = sum(left_half)
    return Point(ONE if s1 >= len(left_half) - s1 else ZERO)


def _from_halves_lottery(left_half: list) -> Outcome:
    n = len(left_half)
    s1 = sum(left_half)
    return lottery([(ONE, Fraction(s1, n)), (ZERO, Fraction(n - s1, n))])


def mech1_median_of_medians(instance: Instance) -> Outcome:
    return _from_medians([left_median(a) for a in instance.agents])


def mech2_half(instance: Instance) -> Outcome:
    return Point(HALF)


def mech3_clamped_median_midpoint(instance: Instance) -> Outcome:
    return _from_midpoints_clamped([midpoint(a) for a in instance.agents])


def mech4_majority_endpoint(instance: Instance) -> Outcome:
    return _from_sides_majority([prefers_zero(a) for a in instance.agents])


def mech5_proportional_lottery(instance: Instance) -> Outcome:
    return _from_sides_lottery([prefers_zero(a) for a in instance.agents])


def mech6_midpoint_majority(instance: Instance) -> Outcome:
    return _from_halves_majority([midpoint(a) <= HALF for a in instance.agents])


def mech7_midpoint_lottery(instance: Instance) -> Outcome:
    return _from_halves_lottery([midpoint(a) <= HALF for a in instance.agents])


def mean_of_all_locations(instance: Instance) -> Outcome:
    """Not strategy-proof: extreme reports drag the mean. Used as a negative control."""
    locs = [x for a in instance.agents for x in a.locations]
    return Point(sum(locs, ZERO) / len(locs))


def _mean(profile: AgentProfile) -> Fraction:
    return location_sum(profile) / profile.count


@dataclass(frozen=True)
class MechanismDescriptor:
    id: str
    name: str
    rule: Callable[[Instance], Outcome]
    setting: str
    variants: tuple[str, ...]
    objectives: tuple[str, ...]
    proven_ratio: Optional[Fraction]
    kind: str  # "deterministic" | "randomized"
    group_sp: bool
    # location-valued summary of a report the output depends on, for a fixed
    # number of locations; ``reduce`` coarsens it to what actually matters
    statistic: Callable[[AgentProfile], Fraction]
    reduce: Callable[[Fraction], Hashable] = lambda v: v
    # outcome from the list of reduced statistics, one per agent in order;
    # None when the rule is not a function of them alone
    aggregate: Optional[Callable[[list], Outcome]] = None
    # output depends only on the multiset of reduced statistics
    anonymous: bool = True

    def on_label(self, instance: Instance, objective: Optional[str] = None) -> bool:
        ok = instance.setting == self.setting and instance.variant in self.variants
        if objective is not None:
            ok = ok and objective.upper() in self.objectives
        return ok

    def key(self, profile: AgentProfile) -> Hashable:
        return self.reduce(self.statistic(profile))


MECHANISMS: dict[str, MechanismDescriptor] = {
    d.id: d
    for d in [
        MechanismDescriptor(
            "M1", "median of agent medians", mech1_median_of_medians,
            DESIRABLE, (SUM,), (SS,), Fraction(2), "deterministic", True, left_median,
            aggregate=_from_medians,
        ),
        MechanismDescriptor(
            "M2", "constant 1/2", mech2_half,
            DESIRABLE, (SUM, MAX), (MS,), Fraction(2), "deterministic", True, midpoint,
            reduce=lambda v: None, aggregate=_from_half,
        ),
        MechanismDescriptor(
            "M3", "clamped median midpoint", mech3_clamped_median_midpoint,
            DESIRABLE, (MAX,), (SS,), Fraction(5, 4), "deterministic", True, midpoint,
            aggregate=_from_midpoints_clamped,
        ),
        MechanismDescriptor(
            "M4", "majority endpoint", mech4_majority_endpoint,
            OBNOXIOUS, (SUM,), (SS,), Fraction(2), "deterministic", True, _mean,
            reduce=lambda v: v >= HALF, aggregate=_from_sides_majority,
        ),
        MechanismDescriptor(
            "M5", "proportional endpoint lottery", mech5_proportional_lottery,
            OBNOXIOUS, (SUM,), (SS,), Fraction(4, 3), "randomized", True, _mean,
            reduce=lambda v: v >= HALF, aggregate=_from_sides_lottery,
        ),
        MechanismDescriptor(
            "M6", "midpoint majority endpoint", mech6_midpoint_majority,
            OBNOXIOUS, (MAX,), (SS,), Fraction(2), "deterministic", True, midpoint,
            reduce=lambda v: v <= HALF, aggregate=_from_halves_majority,
        ),
        MechanismDescriptor(
            "M7", "midpoint proportional lottery", mech7_midpoint_lottery,
            OBNOXIOUS, (MAX,), (SS,), Fraction(4, 3), "randomized", True, midpoint,
            reduce=lambda v: v <= HALF, aggregate=_from_halves_lottery,
        ),
    ]
}

STRAWMEN: dict[str, MechanismDescriptor] = {
    "MEAN": MechanismDescriptor(
        "MEAN", "mean of all locations", mean_of_all_locations,
        DESIRABLE, (SUM, MAX), (SS, MS), None, "deterministic", False, _mean,
        anonymous=False,
    ),
}


def get_mechanism(mechanism: "str | MechanismDescriptor") -> MechanismDescriptor:
    if isinstance(mechanism, MechanismDescriptor):
        return mechanism
    key = mechanism.upper()
    if key in MECHANISMS:
        return MECHANISMS[key]
    if key in STRAWMEN:
        return STRAWMEN[key]
    raise UnknownMechanism(f"unknown mechanism {mechanism!r}; known: {', '.join([*MECHANISMS, *STRAWMEN])}")


def run_mechanism(mechanism: "str | MechanismDescriptor", instance: Instance) -> Outcome:
    """Run a mechanism; off-label runs (wrong setting or variant) are flagged, not refused."""
    desc = get_mechanism(mechanism)
    return desc.rule(instance).flagged(not desc.on_label(instance))
