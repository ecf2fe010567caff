from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def rationals(max_abs=5, max_den=6):
    return st.fractions(
        min_value=Fraction(-max_abs), max_value=Fraction(max_abs), max_denominator=max_den
    )


def coeff_lists(max_size=5):
    return st.lists(rationals(), min_size=0, max_size=max_size)
