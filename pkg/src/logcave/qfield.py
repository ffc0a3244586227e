"""Exact arithmetic decisions in the quadratic field Q(sqrt(5)).

Every comparison against the golden ratio ``phi = (1 + sqrt(5)) / 2`` goes
through :func:`sign_q5`, which never touches floating point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a canonical Fraction.

    Floats are refused so that no rounded value can leak into a decision.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)) or isinstance(value, _RationalABC):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Q5Number:
    """The number ``p + q*sqrt(5)`` with rational ``p`` and ``q``."""

    p: Fraction
    q: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "q", as_rational(self.q))

    def __neg__(self) -> Q5Number:
        return Q5Number(-self.p, -self.q)

    def __add__(self, other: Q5Number) -> Q5Number:
        return Q5Number(self.p + other.p, self.q + other.q)

    def __sub__(self, other: Q5Number) -> Q5Number:
        return Q5Number(self.p - other.p, self.q - other.q)

    def __mul__(self, other: Q5Number | RationalLike) -> Q5Number:
        if isinstance(other, Q5Number):
            return Q5Number(self.p * other.p + 5 * self.q * other.q, self.p * other.q + self.q * other.p)
        r = as_rational(other)
        return Q5Number(self.p * r, self.q * r)

    __rmul__ = __mul__

    def sign(self) -> int:
        return sign_q5(self)

    def __float__(self) -> float:
        # display only
        return float(self.p) + float(self.q) * 5 ** 0.5


PHI = Q5Number(Fraction(1, 2), Fraction(1, 2))
PHI_SQ = Q5Number(Fraction(3, 2), Fraction(1, 2))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_q5(v: Q5Number) -> int:
    """Sign of ``v.p + v.q*sqrt(5)`` as -1, 0 or +1."""
    sp, sq = _sign(v.p), _sign(v.q)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: the term with the larger square wins
    d = v.p * v.p - 5 * v.q * v.q
    return sp if d > 0 else sq


def sign_q5_int(p: int, q: int) -> int:
    """Integer version of :func:`sign_q5`; avoids Fraction overhead."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp if p * p > 5 * q * q else sq


def cmp_phi(r: RationalLike) -> Ordering:
    """Compare a rational with phi. EQUAL cannot occur for rational input."""
    r = as_rational(r)
    return Ordering(sign_q5(Q5Number(2 * r - 1, -1)))


def cmp_phi_sq_scaled(lhs: RationalLike, rhs: RationalLike) -> Ordering:
    """Compare ``lhs`` against ``phi**2 * rhs``.

    ``phi**2 * rhs = (3*rhs + sqrt(5)*rhs) / 2``, so the sign of
    ``(2*lhs - 3*rhs) - sqrt(5)*rhs`` decides.
    """
    lhs, rhs = as_rational(lhs), as_rational(rhs)
    if rhs < 0:
        raise ValueError(f"rhs must be nonnegative, got {rhs}")
    return Ordering(sign_q5(Q5Number(2 * lhs - 3 * rhs, -rhs)))


def cmp_phi_scaled(lhs: RationalLike, rhs: RationalLike) -> Ordering:
    """Compare ``lhs`` against ``phi * rhs`` for ``rhs >= 0``."""
    lhs, rhs = as_rational(lhs), as_rational(rhs)
    if rhs < 0:
        raise ValueError(f"rhs must be nonnegative, got {rhs}")
    return Ordering(sign_q5(Q5Number(2 * lhs - rhs, -rhs)))


def below_inverse_phi(c: RationalLike) -> bool:
    """True iff ``c < 2/(1+sqrt(5))``, i.e. ``c*(1+sqrt(5)) - 2 < 0``."""
    c = as_rational(c)
    return sign_q5(Q5Number(c - 2, c)) < 0
