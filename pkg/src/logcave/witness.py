"""Explicit members of the trapping region.

Given a positive 1-logconcave half ``b_0..b_n``, a contraction
``0 < C < 2/(1+sqrt(5))`` and a large enough ``a``, the point

    s_j = C**T(j) * a**(j+1) * b_j,     T(j) = j*(j+1)

lies in the region.  ``a`` must exceed ``2*C**(T(n-1)-T(n))`` for even
parity and ``phi*C**(T(n-1)-T(n))`` for odd parity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .qfield import as_rational, below_inverse_phi, cmp_phi_scaled, Ordering
from .region import RegionPoint, in_region
from .seqops import Parity, SymmetricSeq, is_logconcave

DEFAULT_C = Fraction(3, 5)


def triangular_T(k: int) -> int:
    """Twice the k-th triangular number, ``k*(k+1)``.

    Built from ``T(k+1) = 2T(k) - T(k-1) + 2`` with ``T(0)=0, T(1)=2`` and
    checked against the closed form.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    prev, cur = 0, 2
    if k == 0:
        value = prev
    else:
        for _ in range(k - 1):
            prev, cur = cur, 2 * cur - prev + 2
        value = cur
    if value != k * (k + 1):
        raise AssertionError(f"triangular recurrence disagrees with closed form at k={k}")
    return value


def triangular_table(n: int) -> list[int]:
    return [triangular_T(k) for k in range(n + 1)]


def default_base(n: int, parity: Parity | str) -> SymmetricSeq:
    """Binomial half-row: ``C(2n+3, 1..n+1)`` even, ``C(2n+2, 1..n+1)`` odd."""
    if n < 1:
        raise ValueError("n must be at least 1")
    parity = Parity(parity)
    row = 2 * n + 3 if parity is Parity.EVEN else 2 * n + 2
    return SymmetricSeq(tuple(comb(row, i) for i in range(1, n + 2)), parity)


def a_bound_scale(n: int, c: Fraction) -> Fraction:
    """``C**(T(n-1) - T(n))``; the exponent is ``-2n`` so this is exact."""
    if not as_rational(c) > 0:
        raise ValueError(f"C must be positive, got {c}")
    return as_rational(c) ** (triangular_T(n - 1) - triangular_T(n))


def default_a(n: int, c: Fraction = DEFAULT_C) -> Fraction:
    # 3 > 2 > phi, so this clears both parity bounds without an irrational test
    return 3 * a_bound_scale(n, c)


@dataclass(frozen=True)
class WitnessParams:
    n: int
    parity: Parity
    C: Fraction
    a: Fraction
    base: SymmetricSeq

    def __post_init__(self) -> None:
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(self, "C", as_rational(self.C))
        object.__setattr__(self, "a", as_rational(self.a))
        self.validate()

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not self.C > 0 or not below_inverse_phi(self.C):
            raise ValueError(f"C = {self.C} must satisfy 0 < C < 2/(1+sqrt(5))")
        base = self.base
        if base.n != self.n:
            raise ValueError(f"base has n = {base.n}, expected {self.n}")
        if base.parity is not self.parity:
            raise ValueError("base parity does not match")
        if any(b <= 0 for b in base.half):
            raise ValueError("base entries must be positive")
        if not is_logconcave(base.expand()):
            raise ValueError("base sequence is not 1-logconcave")
        scale = a_bound_scale(self.n, self.C)
        if self.parity is Parity.EVEN:
            ok = self.a > 2 * scale
            bound = f"2*{scale}"
        else:
            ok = cmp_phi_scaled(self.a, scale) is Ordering.GREATER
            bound = f"phi*{scale}"
        if not ok:
            raise ValueError(f"a = {self.a} must exceed {bound}")

    @classmethod
    def defaults(cls, n: int, parity: Parity | str, C=None, a=None, base=None) -> WitnessParams:
        c = DEFAULT_C if C is None else as_rational(C)
        return cls(
            n=n,
            parity=Parity(parity),
            C=c,
            a=default_a(n, c) if a is None else as_rational(a),
            base=default_base(n, parity) if base is None else base,
        )

    def with_a(self, a) -> WitnessParams:
        return WitnessParams(self.n, self.parity, self.C, as_rational(a), self.base)


class WitnessError(RuntimeError):
    """A constructed witness failed the region test."""


def build_witness(params: WitnessParams) -> SymmetricSeq:
    c, a = params.C, params.a
    half = []
    a_pow = Fraction(1)
    for j, b in enumerate(params.base.half):
        a_pow *= a
        half.append(c ** triangular_T(j) * a_pow * b)
    s = SymmetricSeq(tuple(half), params.parity)
    if not in_region(RegionPoint(s.half, s.parity)):
        raise WitnessError(f"witness {s.half} is not in the region; parameters {params}")
    return s
