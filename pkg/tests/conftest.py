import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def chisq_tail_oracle(k, q):
    """Upper chi-square tail by direct integration of the density with mpmath."""
    import mpmath as mp

    mp.mp.dps = 30
    k = mp.mpf(k)
    dens = lambda t: t ** (k / 2 - 1) * mp.e ** (-t / 2) / (2 ** (k / 2) * mp.gamma(k / 2))
    return float(mp.quad(dens, [q, q + 50, mp.inf]))


# lines collected by test_acceptance.py and echoed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
