"""Membership in the trapping region and side-of-boundary tests.

A half-vector ``x_0 < x_1 < .. < x_n`` lies in the region when each
coordinate sits strictly above its own boundary surface:

* ``j = 0``:       ``x_0 > phi * sqrt(x_1)``
* ``0 < j < n``:   ``x_j > phi * sqrt(x_{j-1} * x_{j+1})``
* ``j = n``, even: ``x_n > 2 * x_{n-1}``
* ``j = n``, odd:  ``x_n > phi * x_{n-1}``

All square roots are removed by squaring positive quantities, so every
decision is a sign in Q(sqrt(5)).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .qfield import Ordering, cmp_phi, cmp_phi_scaled, cmp_phi_sq_scaled, as_rational
from .seqops import Parity, SymmetricSeq, is_strictly_logconcave


class Side(str, enum.Enum):
    ABOVE = "Above"
    ON = "On"
    BELOW = "Below"


_SIDE = {Ordering.GREATER: Side.ABOVE, Ordering.EQUAL: Side.ON, Ordering.LESS: Side.BELOW}


@dataclass(frozen=True)
class RegionPoint:
    coords: tuple
    parity: Parity

    def __post_init__(self) -> None:
        coords = tuple(as_rational(c) for c in self.coords)
        if not coords:
            raise ValueError("a region point needs at least one coordinate")
        if any(c <= 0 for c in coords):
            raise ValueError("region coordinates must be strictly positive")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "parity", Parity(self.parity))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @classmethod
    def from_symmetric(cls, s: SymmetricSeq) -> RegionPoint:
        return cls(s.half, s.parity)

    def expand(self) -> tuple:
        return SymmetricSeq(self.coords, self.parity).expand()


def side_of(p: RegionPoint, j: int) -> Side:
    """Side of the j-th boundary surface on which ``p`` lies, in coordinate j."""
    n = p.n
    if n < 1:
        raise ValueError("side_of needs n >= 1; n = 0 is decided by in_region")
    if not 0 <= j <= n:
        raise ValueError(f"surface index {j} outside [0, {n}]")
    x = p.coords
    if j == 0:
        return _SIDE[cmp_phi_sq_scaled(x[0] * x[0], x[1])]
    if j < n:
        return _SIDE[cmp_phi_sq_scaled(x[j] * x[j], x[j - 1] * x[j + 1])]
    if p.parity is Parity.EVEN:
        d = x[n] - 2 * x[n - 1]
        return Side.ABOVE if d > 0 else Side.BELOW if d < 0 else Side.ON
    return _SIDE[cmp_phi_scaled(x[n], x[n - 1])]


@dataclass
class RegionReport:
    in_region: bool
    per_surface: list = field(default_factory=list)
    failed_conditions: list = field(default_factory=list)


def region_report(p: RegionPoint) -> RegionReport:
    """Evaluate every membership condition and record the ones that fail."""
    x = p.coords
    if p.n == 0:
        if p.parity is Parity.ODD:
            side = _SIDE[cmp_phi(x[0])]
            name = "x0>=phi"
        else:
            d = x[0] - 2
            side = Side.ABOVE if d > 0 else Side.BELOW if d < 0 else Side.ON
            name = "x0>=2"
        ok = side is not Side.BELOW
        return RegionReport(ok, [side], [] if ok else [name])

    failed = []
    if not x[0] > 1:
        failed.append("x0>1")
    if any(x[i + 1] <= x[i] for i in range(p.n)):
        failed.append("increasing")
    if not is_strictly_logconcave(p.expand()):
        failed.append("strictly-logconcave")
    sides = [side_of(p, j) for j in range(p.n + 1)]
    failed.extend(f"H{j}" for j, s in enumerate(sides) if s is not Side.ABOVE)
    return RegionReport(not failed, sides, failed)


def in_region(p: RegionPoint) -> bool:
    x = p.coords
    if p.n == 0:
        if p.parity is Parity.ODD:
            return cmp_phi(x[0]) is not Ordering.LESS
        return x[0] >= 2
    if not x[0] > 1:
        return False
    if any(x[i + 1] <= x[i] for i in range(p.n)):
        return False
    if not is_strictly_logconcave(p.expand()):
        return False
    return all(side_of(p, j) is Side.ABOVE for j in range(p.n + 1))


def in_region_half(half, parity: Parity | str) -> bool:
    return in_region(RegionPoint(tuple(half), Parity(parity)))
