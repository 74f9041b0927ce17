from fractions import Fraction

from hypothesis import strategies as st

from satloc.core import AgentProfile, Instance, SETTINGS, VARIANTS


def grid_values(denominator):
    return st.integers(0, denominator).map(lambda k: Fraction(k, denominator))


def profiles(denominator=60, max_size=4):
    return st.lists(grid_values(denominator), min_size=1, max_size=max_size).map(AgentProfile)


def instances(denominator=60, max_agents=5, max_size=4, setting=None, variant=None):
    return st.builds(
        Instance,
        st.sampled_from(SETTINGS) if setting is None else st.just(setting),
        st.sampled_from(VARIANTS) if variant is None else st.just(variant),
        st.lists(profiles(denominator, max_size), min_size=1, max_size=max_agents),
    )


def F(text):
    return Fraction(text)
