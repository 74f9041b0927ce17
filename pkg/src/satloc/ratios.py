"""Mechanism-versus-optimum ratios: tight instances, random sweeps, hill climbing."""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

from .core import DESIRABLE, MAX, OBNOXIOUS, SUM, AgentProfile, Instance, evaluate
from .mechanisms import get_mechanism, run_mechanism
from .opt import MS, SS, normalize_objective, solve


@total_ordering
class _Unbounded:
    """Ratio sentinel for a mechanism value of 0 against a positive optimum."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("unbounded")

    def __repr__(self):
        return "UNBOUNDED"

    __str__ = lambda self: "unbounded"  # noqa: E731

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()
Ratio = Union[Fraction, _Unbounded]


def ratio(mechanism, instance: Instance, objective: str) -> Ratio:
    objective = normalize_objective(objective)
    best = solve(instance, objective).value
    got = evaluate(run_mechanism(mechanism, instance), instance).objective(objective)
    if got == 0:
        return UNBOUNDED if best > 0 else Fraction(1)
    return best / got


# -- instance text form -----------------------------------------------------


def format_instance(instance: Instance) -> str:
    """Canonical one-line form, e.g. ``obnoxious|sum|0 1;0 1/2``."""
    agents = ";".join(" ".join(str(v) for v in a.locations) for a in instance.agents)
    return f"{instance.setting}|{instance.variant}|{agents}"


def parse_instance_text(text: str) -> Instance:
    setting, variant, agents = text.strip().split("|")
    return Instance(setting, variant, [[Fraction(v) for v in a.split()] for a in agents.split(";")])


# -- tight instances ----------------------------------------------------------


@dataclass(frozen=True)
class TightCase:
    instance: Instance
    mechanism_id: str
    objective: str
    expected_ratio: Ratio
    anchor: str


def _inst(setting, variant, *agents) -> Instance:
    return Instance(setting, variant, [[Fraction(v) for v in a] for a in agents])


def tight_registry() -> list[TightCase]:
    h = "1/2"
    return [
        TightCase(_inst(DESIRABLE, SUM, (0, h), (h, 1)), "M1", SS, Fraction(2),
                  "median of medians lands on an extreme of two mirrored halves"),
        TightCase(_inst(DESIRABLE, SUM, (0, h), (0, 1), (h, 1)), "M1", MS, UNBOUNDED,
                  "median of medians leaves the right-half agent at satisfaction 0"),
        TightCase(_inst(DESIRABLE, SUM, (0, h), (0, 0)), "M2", MS, Fraction(2),
                  "facility at 1/2 against agents clustered at the left end (sum)"),
        TightCase(_inst(DESIRABLE, MAX, (0,), (0,), (0,)), "M2", MS, Fraction(2),
                  "facility at 1/2 against all agents at 0 (max)"),
        TightCase(_inst(DESIRABLE, MAX, (0,), (h,)), "M3", SS, Fraction(5, 4),
                  "clamp at 1/5 with the other midpoint at 1/2"),
        TightCase(_inst(OBNOXIOUS, SUM, (0, 1), (0, h)), "M4", SS, Fraction(2),
                  "indifferent agent breaks the majority tie toward 0"),
        TightCase(_inst(OBNOXIOUS, SUM, (0, 1), (0, h)), "M5", SS, Fraction(4, 3),
                  "even split lottery with one indifferent agent"),
        TightCase(_inst(OBNOXIOUS, SUM, (0, 0), (1, 1)), "M4", MS, UNBOUNDED,
                  "endpoint mechanism zeroes the agent sitting on it"),
        TightCase(_inst(OBNOXIOUS, MAX, (0, 1), (1, 1)), "M6", SS, Fraction(2),
                  "midpoint tie at 1/2 sends the facility onto the other agent"),
        TightCase(_inst(OBNOXIOUS, MAX, (0, 1), (1, 1)), "M7", SS, Fraction(4, 3),
                  "even midpoint lottery with one agent indifferent between ends"),
    ]


# -- random instances and sweeps ---------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    n_max: int = 5
    omega_max: int = 4
    grid: int = 60
    setting: str = DESIRABLE
    variant: str = SUM
    seed: int = 42

    def __post_init__(self):
        if self.n_max < 1 or self.omega_max < 1 or self.grid < 1:
            raise ValueError("n_max, omega_max and grid must all be >= 1")


def random_instance(config: GeneratorConfig, rng: random.Random) -> Instance:
    n = rng.randint(1, config.n_max)
    agents = []
    for _ in range(n):
        omega = rng.randint(1, config.omega_max)
        agents.append(AgentProfile(Fraction(rng.randint(0, config.grid), config.grid) for _ in range(omega)))
    return Instance(config.setting, config.variant, agents)


def on_label_config(mechanism, variant: Optional[str] = None, **kwargs) -> GeneratorConfig:
    desc = get_mechanism(mechanism)
    return GeneratorConfig(setting=desc.setting, variant=variant or desc.variants[0], **kwargs)


@dataclass
class SweepReport:
    mechanism_id: str
    objective: str
    samples: int
    worst_ratio: Ratio
    worst_instance: Optional[Instance]
    seed: int
    checked_bound: Optional[Fraction] = None
    ratios: list = field(default_factory=list, repr=False)

    def csv_row(self) -> list[str]:
        if self.worst_ratio is UNBOUNDED:
            num, den = "1", "0"
        else:
            num, den = str(self.worst_ratio.numerator), str(self.worst_ratio.denominator)
        inst = format_instance(self.worst_instance) if self.worst_instance is not None else ""
        return [self.mechanism_id, self.objective, str(self.samples), num, den, inst, str(self.seed)]


CSV_HEADER = ["mechanism", "objective", "samples", "worst_ratio_num", "worst_ratio_den", "instance", "seed"]


class BoundViolation(AssertionError):
    def __init__(self, mechanism_id: str, objective: str, bound, got, instance: Instance):
        super().__init__(
            f"{mechanism_id}/{objective}: ratio {got} exceeds proven bound {bound} on {format_instance(instance)}"
        )
        self.mechanism_id = mechanism_id
        self.objective = objective
        self.bound = bound
        self.ratio = got
        self.instance = instance


def _ratio_task(args):
    mech, inst, objective = args
    return ratio(mech, inst, objective)


def default_jobs() -> int:
    return int(os.environ.get("SATLOC_JOBS", "1"))


def ratio_sweep(
    mechanism,
    objective: str,
    config: GeneratorConfig,
    samples: int = 500,
    jobs: Optional[int] = None,
    allow_off_label: bool = False,
) -> SweepReport:
    """Ratios over ``samples`` seeded random instances plus matching tight cases.

    On-label ratios are checked against the proven bound by exact comparison; an
    exceedance raises :class:`BoundViolation`.
    """
    desc = get_mechanism(mechanism)
    objective = normalize_objective(objective)
    on_label = desc.setting == config.setting and config.variant in desc.variants and objective in desc.objectives
    if not on_label and not allow_off_label:
        raise ValueError(f"{desc.id}/{objective} on {config.setting}/{config.variant} is off-label")
    rng = random.Random(config.seed)
    instances = [random_instance(config, rng) for _ in range(samples)]
    instances += [
        c.instance for c in tight_registry()
        if c.mechanism_id == desc.id and c.objective == objective
        and c.instance.setting == config.setting and c.instance.variant == config.variant
    ]
    jobs = default_jobs() if jobs is None else jobs
    tasks = [(desc.id if desc.id in _registry_ids() else desc, inst, objective) for inst in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_ratio_task, tasks, chunksize=32))
    else:
        values = [_ratio_task(t) for t in tasks]
    worst, worst_inst = None, None
    for inst, r in zip(instances, values):
        if worst is None or r > worst:
            worst, worst_inst = r, inst
    bound = desc.proven_ratio if on_label else None
    if bound is not None:
        for inst, r in zip(instances, values):
            if r > bound:
                raise BoundViolation(desc.id, objective, bound, r, inst)
    return SweepReport(desc.id, objective, samples, worst, worst_inst, config.seed, bound, values)


def _registry_ids():
    from .mechanisms import MECHANISMS, STRAWMEN

    return set(MECHANISMS) | set(STRAWMEN)


def _neighbours(instance: Instance, grid: int):
    step = Fraction(1, grid)
    for i, agent in enumerate(instance.agents):
        for j, x in enumerate(agent.locations):
            for moved in (x - step, x + step):
                if 0 <= moved <= 1:
                    locs = list(agent.locations)
                    locs[j] = moved
                    yield instance.with_agents({i: AgentProfile(locs)})


def adversarial_search(
    mechanism,
    objective: str,
    config: GeneratorConfig,
    restarts: int = 10,
    iterations: int = 200,
) -> SweepReport:
    """First-improvement hill climbing over grid instances. Reports, never asserts."""
    desc = get_mechanism(mechanism)
    objective = normalize_objective(objective)
    rng = random.Random(config.seed)
    worst, worst_inst = None, None
    for _ in range(restarts):
        current = random_instance(config, rng)
        value = ratio(desc, current, objective)
        for _ in range(iterations):
            if value is UNBOUNDED:
                break
            moves = list(_neighbours(current, config.grid))
            rng.shuffle(moves)
            for cand in moves:
                r = ratio(desc, cand, objective)
                if r > value:
                    current, value = cand, r
                    break
            else:
                break
        if worst is None or value > worst:
            worst, worst_inst = value, current
    return SweepReport(desc.id, objective, restarts, worst, worst_inst, config.seed)
