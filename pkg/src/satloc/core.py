"""Instances, distances and satisfactions for single-facility location on [0, 1].

Every quantity is an exact :class:`fractions.Fraction`. An agent owns a sorted
multiset of locations; her satisfaction with a facility at ``y`` is the
distance to ``y`` normalised between the best and worst distance she could
possibly face, flipped for the desirable setting.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, str, Fraction]

DESIRABLE = "desirable"
OBNOXIOUS = "obnoxious"
SETTINGS = (DESIRABLE, OBNOXIOUS)

SUM = "sum"
MAX = "max"
VARIANTS = (SUM, MAX)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class DomainError(ValueError):
    """A location or parameter lies outside its admissible range."""


def as_fraction(value: Number) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


def _check_unit(y: Fraction, what: str = "location") -> None:
    if not ZERO <= y <= ONE:
        raise DomainError(f"{what} {y} is outside [0, 1]")


@dataclass(frozen=True)
class AgentProfile:
    """Sorted locations of one agent. Duplicates are allowed."""

    locations: tuple[Fraction, ...]

    def __init__(self, locations: Iterable[Number]):
        locs = tuple(sorted(as_fraction(v) for v in locations))
        if not locs:
            raise DomainError("an agent needs at least one location")
        for v in locs:
            _check_unit(v)
        object.__setattr__(self, "locations", locs)

    @classmethod
    def constant(cls, value: Number, count: int) -> "AgentProfile":
        return cls([value] * count)

    @property
    def count(self) -> int:
        return len(self.locations)

    @property
    def first(self) -> Fraction:
        return self.locations[0]

    @property
    def last(self) -> Fraction:
        return self.locations[-1]

    def __iter__(self):
        return iter(self.locations)

    def __len__(self) -> int:
        return len(self.locations)

    def __repr__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.locations) + ")"


@dataclass(frozen=True)
class Instance:
    setting: str
    variant: str
    agents: tuple[AgentProfile, ...]

    def __init__(self, setting: str, variant: str, agents: Iterable[Union[AgentProfile, Iterable[Number]]]):
        if setting not in SETTINGS:
            raise DomainError(f"unknown setting {setting!r}")
        if variant not in VARIANTS:
            raise DomainError(f"unknown variant {variant!r}")
        profiles = tuple(a if isinstance(a, AgentProfile) else AgentProfile(a) for a in agents)
        if not profiles:
            raise DomainError("an instance needs at least one agent")
        object.__setattr__(self, "setting", setting)
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "agents", profiles)

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def total_locations(self) -> int:
        return sum(a.count for a in self.agents)

    def with_agents(self, replacements: dict[int, AgentProfile]) -> "Instance":
        """Copy with some agents' reports replaced (``x'_G, x_{-G}``)."""
        agents = list(self.agents)
        for i, profile in replacements.items():
            agents[i] = profile
        return Instance(self.setting, self.variant, agents)

    def with_setting(self, setting: str, variant: str | None = None) -> "Instance":
        return Instance(setting, variant or self.variant, self.agents)

    def is_degenerate(self, i: int) -> bool:
        delta, big_delta = distance_extremes(self.agents[i], self.variant)
        return delta == big_delta


# -- outcomes ---------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    y: Fraction
    off_label: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "y", as_fraction(self.y))
        _check_unit(self.y, "facility")

    def support(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return ((self.y, ONE),)

    def flagged(self, off_label: bool) -> "Point":
        return Point(self.y, off_label)

    def __str__(self) -> str:
        return f"Point({self.y})"


@dataclass(frozen=True)
class Lottery:
    """Finite distribution over facility points, sorted by point, no zero masses."""

    outcomes: tuple[tuple[Fraction, Fraction], ...]
    off_label: bool = field(default=False, compare=False)

    def __post_init__(self):
        merged: dict[Fraction, Fraction] = {}
        for point, prob in self.outcomes:
            point, prob = as_fraction(point), as_fraction(prob)
            _check_unit(point, "facility")
            if prob < 0:
                raise DomainError(f"negative probability {prob}")
            merged[point] = merged.get(point, ZERO) + prob
        if sum(merged.values()) != ONE:
            raise DomainError(f"probabilities sum to {sum(merged.values())}, not 1")
        canon = tuple(sorted((p, q) for p, q in merged.items() if q))
        object.__setattr__(self, "outcomes", canon)

    def support(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self.outcomes

    def flagged(self, off_label: bool) -> "Lottery":
        return Lottery(self.outcomes, off_label)

    def __str__(self) -> str:
        return "Lottery{" + ", ".join(f"{p}: {q}" for p, q in self.outcomes) + "}"


Outcome = Union[Point, Lottery]


def lottery(pairs: Iterable[tuple[Number, Number]]) -> Outcome:
    """Canonical outcome: a :class:`Point` when all mass sits on one location."""
    lot = Lottery(tuple(pairs))
    if len(lot.outcomes) == 1:
        return Point(lot.outcomes[0][0])
    return lot


# -- distances --------------------------------------------------------------


def d1(y: Number, profile: AgentProfile) -> Fraction:
    y = as_fraction(y)
    _check_unit(y, "facility")
    return sum((abs(y - x) for x in profile.locations), ZERO)


def d2(y: Number, profile: AgentProfile) -> Fraction:
    y = as_fraction(y)
    _check_unit(y, "facility")
    return max(abs(y - profile.first), abs(y - profile.last))


def distance(y: Number, profile: AgentProfile, variant: str) -> Fraction:
    return d1(y, profile) if variant == SUM else d2(y, profile)


def midpoint(profile: AgentProfile) -> Fraction:
    return (profile.first + profile.last) / 2


def left_median(values: Union[AgentProfile, Sequence[Fraction]]) -> Fraction:
    """Element ``ceil(k/2)`` (1-indexed) of the sorted values."""
    vals = values.locations if isinstance(values, AgentProfile) else sorted(values)
    return vals[(len(vals) + 1) // 2 - 1]


def location_sum(profile: AgentProfile) -> Fraction:
    return sum(profile.locations, ZERO)


@functools.lru_cache(maxsize=1 << 16)
def distance_extremes(profile: AgentProfile, variant: str) -> tuple[Fraction, Fraction]:
    """``(min_z d(z), max_z d(z))`` over z in [0, 1]."""
    if variant == SUM:
        low = d1(left_median(profile), profile)
        total = location_sum(profile)
        high = max(total, profile.count - total)
        return low, high
    if variant == MAX:
        spread = (profile.last - profile.first) / 2
        c = midpoint(profile)
        return spread, max(c, ONE - c) + spread
    raise DomainError(f"unknown variant {variant!r}")


@functools.lru_cache(maxsize=1 << 18)
def _satisfaction(y: Fraction, profile: AgentProfile, setting: str, variant: str) -> Fraction:
    low, high = distance_extremes(profile, variant)
    if low == high:
        # equal numbers of 0s and 1s under d1: the agent is indifferent everywhere
        return ONE
    if variant == MAX:
        c = midpoint(profile)
        far = abs(y - c) / max(c, ONE - c)
    else:
        far = (d1(y, profile) - low) / (high - low)
    return far if setting == OBNOXIOUS else ONE - far


def satisfaction(y: Number, profile: AgentProfile, setting: str, variant: str) -> Fraction:
    y = as_fraction(y)
    _check_unit(y, "facility")
    if setting not in SETTINGS:
        raise DomainError(f"unknown setting {setting!r}")
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    return _satisfaction(y, profile, setting, variant)


def expected_satisfaction(outcome: Outcome, profile: AgentProfile, setting: str, variant: str) -> Fraction:
    return sum((q * _satisfaction(p, profile, setting, variant) for p, q in outcome.support()), ZERO)


@dataclass(frozen=True)
class SatisfactionProfile:
    values: tuple[Fraction, ...]
    ss: Fraction
    ms: Fraction

    def objective(self, name: str) -> Fraction:
        return self.ss if name.upper() == "SS" else self.ms


def evaluate(outcome: Outcome, instance: Instance) -> SatisfactionProfile:
    values = tuple(
        expected_satisfaction(outcome, a, instance.setting, instance.variant) for a in instance.agents
    )
    return SatisfactionProfile(values, sum(values, ZERO), min(values))


def social_satisfaction(y: Number, instance: Instance) -> Fraction:
    return evaluate(Point(as_fraction(y)), instance).ss


def minimum_satisfaction(y: Number, instance: Instance) -> Fraction:
    return evaluate(Point(as_fraction(y)), instance).ms
