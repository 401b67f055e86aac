import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from affspringer.springer import SpectralParameters, default_spectral
from affspringer.weyl import AffineWeylElement, elements_up_to_length, enumerate_F

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def elements(n: int, max_length: int = 5):
    pool = sorted(elements_up_to_length(n, max_length))
    return st.sampled_from(pool)


def spectral(n: int):
    vals = st.fractions(min_value=-50, max_value=50, max_denominator=7)
    return st.lists(vals, min_size=n, max_size=n, unique=True).map(
        lambda v: SpectralParameters(tuple(v)))


def weights(length: int, lo: int = -5, hi: int = 5):
    """Weakly decreasing integer vectors."""
    return st.lists(st.integers(lo, hi), min_size=length, max_size=length).map(
        lambda v: tuple(sorted(v, reverse=True)))


@pytest.fixture(scope="session")
def box3():
    return enumerate_F(3)


@pytest.fixture(scope="session")
def box4():
    return enumerate_F(4)


@pytest.fixture
def s3():
    return default_spectral(3)


def ident(n: int) -> AffineWeylElement:
    return AffineWeylElement.identity(n)


def frac(p, q=1) -> Fraction:
    return Fraction(p, q)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
