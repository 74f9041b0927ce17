"""Exact facility location with multi-location agents and normalised satisfaction."""
from .core import (
    DESIRABLE,
    MAX,
    OBNOXIOUS,
    SUM,
    AgentProfile,
    DomainError,
    Instance,
    Lottery,
    Point,
    SatisfactionProfile,
    d1,
    d2,
    distance_extremes,
    evaluate,
    left_median,
    lottery,
    midpoint,
    satisfaction,
)
from .mechanisms import MECHANISMS, get_mechanism, run_mechanism
from .opt import MS, SS, OptResult, grid_oracle, solve, solve_ms, solve_ss
from .ratios import UNBOUNDED, GeneratorConfig, ratio, ratio_sweep, tight_registry
from .truthfulness import check_gsp, check_sp

__version__ = "0.1.0"
