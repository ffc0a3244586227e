"""Finite sequences, the operator L and the classification loop.

A finite sequence is a tuple of :class:`~fractions.Fraction`; entries outside
the tuple are taken to be zero.  The operator L maps ``c`` to
``c[i]**2 - c[i-1]*c[i+1]`` over the same support.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .qfield import RationalLike, as_rational

FiniteSequence = tuple  # tuple[Fraction, ...]

DEFAULT_MAX_ITER = 30
DEFAULT_BIT_BUDGET = 1_000_000


def default_bit_budget() -> int:
    raw = os.environ.get("LOGCAVE_BIT_BUDGET")
    if raw is None or raw == "":
        return DEFAULT_BIT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"LOGCAVE_BIT_BUDGET must be positive, got {raw!r}")
    return value


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


class Verdict(str, enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


REASON_MAX_ITER = "max-iterations"
REASON_BIT_BUDGET = "bit-budget"


def as_sequence(values: Iterable[RationalLike]) -> FiniteSequence:
    seq = tuple(as_rational(v) for v in values)
    if not seq:
        raise ValueError("a sequence needs at least one entry")
    return seq


@dataclass(frozen=True)
class SymmetricSeq:
    """Half-form ``x_0..x_n`` of ``{1, x_0, .., x_n, [x_n], .., x_0, 1}``.

    Even parity repeats the middle entry, odd parity does not.
    """

    half: tuple
    parity: Parity

    def __post_init__(self) -> None:
        half = tuple(as_rational(v) for v in self.half)
        if not half:
            raise ValueError("half-form needs at least one entry")
        object.__setattr__(self, "half", half)
        object.__setattr__(self, "parity", Parity(self.parity))

    @property
    def n(self) -> int:
        return len(self.half) - 1

    def expand(self) -> FiniteSequence:
        h = self.half
        tail = h[::-1] if self.parity is Parity.EVEN else h[-2::-1]
        return (Fraction(1),) + h + tail + (Fraction(1),)

    def __len__(self) -> int:
        return 2 * self.n + (4 if self.parity is Parity.EVEN else 3)


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    iterate: int
    reason: str | None = None
    # the iterate that triggered the verdict, for replay
    witness: FiniteSequence | None = field(default=None, compare=False, repr=False)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


def apply_L(s: Sequence[Fraction]) -> FiniteSequence:
    n = len(s)
    if n == 0:
        raise ValueError("empty sequence")
    if n == 1:
        return (s[0] * s[0],)
    out = [s[0] * s[0]]
    for i in range(1, n - 1):
        out.append(s[i] * s[i] - s[i - 1] * s[i + 1])
    out.append(s[-1] * s[-1])
    return tuple(out)


def iterate_L(s: Sequence[Fraction], k: int) -> list[FiniteSequence]:
    """Return ``[s, L(s), .., L^k(s)]``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = [tuple(s)]
    for _ in range(k):
        out.append(apply_L(out[-1]))
    return out


def is_logconcave(s: Sequence[Fraction]) -> bool:
    if any(c < 0 for c in s):
        return False
    return all(s[i] * s[i] >= s[i - 1] * s[i + 1] for i in range(1, len(s) - 1))


def is_strictly_logconcave(s: Sequence[Fraction]) -> bool:
    # positivity makes the two zero-padded boundary conditions strict as well
    if any(c <= 0 for c in s):
        return False
    return all(s[i] * s[i] > s[i - 1] * s[i + 1] for i in range(1, len(s) - 1))


def normalize(s: Sequence[Fraction]) -> tuple[SymmetricSeq | None, Fraction]:
    """Scale ``s`` to start at 1 and read off the symmetric half-form.

    Returns ``(None, scale)`` when the scaled sequence is not a palindrome.
    """
    if len(s) < 3:
        raise ValueError("normalize needs at least three entries")
    if any(c <= 0 for c in s):
        raise ValueError("normalize needs strictly positive entries")
    scale = s[0]
    if any(s[i] != s[-1 - i] for i in range(len(s) // 2)):
        return None, scale
    scaled = [c / scale for c in s]
    if len(s) % 2:
        n = (len(s) - 3) // 2
        return SymmetricSeq(tuple(scaled[1 : n + 2]), Parity.ODD), scale
    n = (len(s) - 4) // 2
    return SymmetricSeq(tuple(scaled[1 : n + 2]), Parity.EVEN), scale


def bit_size(s: Sequence[Fraction]) -> int:
    return sum(c.numerator.bit_length() + c.denominator.bit_length() for c in s)


def projective(s: Sequence[Fraction]) -> FiniteSequence:
    """``s`` divided by the absolute value of its first nonzero entry.

    The k-th iterate of ``lam * s`` is ``lam**(2**k)`` times that of ``s``,
    so classification works on this representative.
    """
    for c in s:
        if c:
            lead = abs(c)
            return tuple(x / lead for x in s)
    return tuple(s)


def projective_bit_size(s: Sequence[Fraction]) -> int:
    return bit_size(projective(s))


def classify(
    s: Sequence[RationalLike],
    max_iter: int = DEFAULT_MAX_ITER,
    bit_budget: int | None = None,
) -> Certificate:
    """Iterate L until region capture, a logconcavity failure, or a budget runs out.

    At iterate ``k`` the checks run in this order: 1-logconcavity (refuted
    when it fails, which is exactly when iterate ``k`` or ``k+1`` has a
    negative entry), region capture (certified), bit budget, iteration cap
    (both unknown).  The budget is charged on the iterate divided by the
    absolute value of its first nonzero entry, which makes every verdict
    invariant under positive scaling of ``s``.
    """
    from .region import RegionPoint, in_region

    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    if bit_budget is None:
        bit_budget = default_bit_budget()
    # iterates are carried up to a positive scale; no test depends on it
    cur = projective(as_sequence(s))
    k = 0
    while True:
        if not is_logconcave(cur):
            return Certificate(Verdict.REFUTED, k, witness=cur)
        if len(cur) >= 3 and all(c > 0 for c in cur):
            sym, _ = normalize(cur)
            if sym is not None and in_region(RegionPoint(sym.half, sym.parity)):
                return Certificate(Verdict.CERTIFIED, k, witness=cur)
        if bit_size(cur) > bit_budget:
            return Certificate(Verdict.UNKNOWN, k, REASON_BIT_BUDGET)
        if k >= max_iter:
            return Certificate(Verdict.UNKNOWN, k, REASON_MAX_ITER)
        cur = projective(apply_L(cur))
        k += 1


_KERNEL_VERDICTS = {
    0: (Verdict.CERTIFIED, None),
    1: (Verdict.REFUTED, None),
    2: (Verdict.UNKNOWN, REASON_MAX_ITER),
    3: (Verdict.UNKNOWN, REASON_BIT_BUDGET),
}


def classify_fast(
    s: Sequence[RationalLike],
    max_iter: int = DEFAULT_MAX_ITER,
    bit_budget: int | None = None,
) -> Certificate:
    """Same verdicts as :func:`classify`, computed by the integer kernels."""
    from . import kernels

    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    if bit_budget is None:
        bit_budget = default_bit_budget()
    nums, _ = kernels.to_scaled(as_sequence(s))
    code, k = kernels.classify_scaled(nums, max_iter, bit_budget)
    verdict, reason = _KERNEL_VERDICTS[code]
    return Certificate(verdict, k, reason)
