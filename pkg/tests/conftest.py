import random
from fractions import Fraction

import pytest

from logcave.qfield import Ordering, cmp_phi, cmp_phi_sq_scaled
from logcave.seqops import Parity

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA.append((marker.args[0], marker.args[1], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, outcome in sorted(_CRITERIA):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {text}")


def random_ratio(rng, lo, hi, max_den=12):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(int(lo * den) + 1, int(hi * den)), den)


def random_region_point(rng, n, parity, near_boundary=False):
    """Half-vector built from coordinate ratios r_j = x_j / x_{j-1}.

    Membership is r_j > phi^2 r_{j+1} for j < n plus r_n > 2 (even) or
    r_n > phi (odd); the generator draws ratios satisfying exactly that.
    """
    parity = Parity(parity)
    while True:
        if near_boundary:
            last = (2 if parity is Parity.EVEN else Fraction(1618034, 1000000)) + Fraction(1, rng.randint(50, 1000))
        else:
            last = random_ratio(rng, 2 if parity is Parity.EVEN else 1.6, 6)
        if parity is Parity.ODD and cmp_phi(last) is not Ordering.GREATER:
            continue
        ratios = [last]
        for _ in range(n):
            if near_boundary:
                m = Fraction(2618034, 1000000) + Fraction(1, rng.randint(50, 1000))
            else:
                m = random_ratio(rng, 2.6, 5)
            if cmp_phi_sq_scaled(m, 1) is not Ordering.GREATER:
                m = Fraction(27, 10)
            ratios.append(ratios[-1] * m)
        ratios.reverse()
        coords, x = [], Fraction(1)
        for r in ratios:
            x *= r
            coords.append(x)
        return tuple(coords)


@pytest.fixture
def rng():
    return random.Random(20240601)
