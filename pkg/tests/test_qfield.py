import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from logcave.qfield import (
    PHI,
    PHI_SQ,
    Ordering,
    Q5Number,
    below_inverse_phi,
    cmp_phi,
    cmp_phi_scaled,
    cmp_phi_sq_scaled,
    sign_q5,
    sign_q5_int,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda f: abs(f.numerator) < 10**12)


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (1, 0, 1),
        (0, 0, 0),
        (-2, 1, 1),  # 5 > 4
        (-3, 1, -1),  # 5 < 9
        (9, -4, 1),  # 81 - 80 = 1
        (-9, 4, -1),
        (161, -72, 1),  # 25921 - 25920 = 1
        (0, -1, -1),
        (-1, 0, -1),
    ],
)
def test_sign_q5_examples(p, q, expected):
    assert sign_q5(Q5Number(p, q)) == expected
    assert sign_q5_int(p, q) == expected


def test_constants():
    # phi^2 = phi + 1
    assert PHI * PHI == PHI_SQ
    assert PHI_SQ - PHI == Q5Number(1, 0)


@pytest.mark.parametrize(
    "r, expected",
    [(2, Ordering.GREATER), (1, Ordering.LESS), (Fraction(8, 5), Ordering.LESS), (Fraction(13, 8), Ordering.GREATER)],
)
def test_cmp_phi(r, expected):
    assert cmp_phi(r) is expected


@pytest.mark.parametrize(
    "lhs, rhs, expected",
    [(225, 50, Ordering.GREATER), (49, 21, Ordering.LESS), (0, 0, Ordering.EQUAL)],
)
def test_cmp_phi_sq_scaled(lhs, rhs, expected):
    assert cmp_phi_sq_scaled(lhs, rhs) is expected


def test_cmp_phi_sq_scaled_rejects_negative_rhs():
    with pytest.raises(ValueError):
        cmp_phi_sq_scaled(1, -1)


def test_cmp_phi_scaled():
    assert cmp_phi_scaled(20, 10) is Ordering.GREATER  # 20 > 16.18
    assert cmp_phi_scaled(6, 4) is Ordering.LESS  # 6 < 6.47


def test_below_inverse_phi():
    assert below_inverse_phi(Fraction(3, 5))
    assert not below_inverse_phi(Fraction(5, 8))  # 0.625 > 0.618
    assert below_inverse_phi(Fraction(21, 34))  # 0.6176


def test_floats_refused():
    with pytest.raises(TypeError):
        cmp_phi(1.5)


@given(rationals, rationals)
def test_sign_is_odd(p, q):
    assert sign_q5(Q5Number(p, q)) == -sign_q5(Q5Number(-p, -q))


@given(st.fractions(min_value=Fraction(1, 10**6), max_value=100, max_denominator=10**6))
def test_cmp_phi_agrees_with_squared_form(r):
    assert (cmp_phi(r) is Ordering.GREATER) == (cmp_phi_sq_scaled(r * r, 1) is Ordering.GREATER)


@given(rationals, rationals)
def test_cmp_phi_monotone(r1, r2):
    lo, hi = sorted((r1, r2))
    if cmp_phi(lo) is Ordering.GREATER:
        assert cmp_phi(hi) is Ordering.GREATER


def _float_sign(p, q):
    with mpmath.workprec(200):
        v = mpmath.mpf(p.numerator) / p.denominator + mpmath.mpf(q.numerator) / q.denominator * mpmath.sqrt(5)
        if abs(v) <= mpmath.mpf(10) ** -20:
            return None
        return 1 if v > 0 else -1


def test_against_200_bit_float_oracle():
    rng = random.Random(7)
    checked = 0
    for _ in range(2000):
        p = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**5))
        q = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**5))
        expected = _float_sign(p, q)
        if expected is not None:
            assert sign_q5(Q5Number(p, q)) == expected
            checked += 1
    assert checked > 1900
