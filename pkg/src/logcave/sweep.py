"""Grid classification and boundary-surface sampling for plots.

Grid cells are exact rationals and are classified with the integer kernels;
a deterministic 1% sample is re-run through the Fraction reference path.
Surface sampling is floating point and only ever feeds plot files.
"""
from __future__ import annotations

import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import mpmath

from . import kernels
from .qfield import as_rational
from .seqops import (
    DEFAULT_MAX_ITER,
    Parity,
    SymmetricSeq,
    Verdict,
    classify,
    default_bit_budget,
    _KERNEL_VERDICTS,
)

MAX_CELLS = 10**8
AUDIT_STRIDE = 100

PGM_LEVELS = {Verdict.CERTIFIED: 255, Verdict.REFUTED: 0, Verdict.UNKNOWN: 128}

# Figure windows for n = 1; the axes carry no numbers, so these only need to
# bracket the binomial points (5, 10) and (4, 6) with some margin.
DEFAULT_WINDOWS = {
    Parity.EVEN: ((Fraction(0), Fraction(20)), (Fraction(0), Fraction(40))),
    Parity.ODD: ((Fraction(0), Fraction(15)), (Fraction(0), Fraction(25))),
}


@dataclass(frozen=True)
class GridSpec:
    parity: Parity
    n: int
    ranges: tuple  # ((lo, hi), ...) one per axis, n + 1 axes
    steps: tuple
    max_iter: int = DEFAULT_MAX_ITER
    bit_budget: int = field(default_factory=default_bit_budget)

    def __post_init__(self) -> None:
        object.__setattr__(self, "parity", Parity(self.parity))
        ranges = tuple((as_rational(lo), as_rational(hi)) for lo, hi in self.ranges)
        steps = tuple(as_rational(s) for s in self.steps)
        object.__setattr__(self, "ranges", ranges)
        object.__setattr__(self, "steps", steps)
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if len(ranges) != self.n + 1 or len(steps) != self.n + 1:
            raise ValueError(f"need {self.n + 1} ranges and steps for n = {self.n}")
        for (lo, hi), st in zip(ranges, steps):
            if not lo < hi:
                raise ValueError(f"empty range [{lo}, {hi}]")
            if st <= 0:
                raise ValueError(f"step must be positive, got {st}")
        if self.max_iter < 0:
            raise ValueError("max_iter must be nonnegative")
        if self.cell_count() > MAX_CELLS:
            raise ValueError(f"grid has {self.cell_count()} cells, limit is {MAX_CELLS}")

    @classmethod
    def figure(cls, parity: Parity | str, step=Fraction(1, 2), **kw) -> GridSpec:
        parity = Parity(parity)
        return cls(parity, 1, DEFAULT_WINDOWS[parity], (step, step), **kw)

    def axis(self, i: int) -> list[Fraction]:
        (lo, hi), st = self.ranges[i], self.steps[i]
        return [lo + k * st for k in range(math.floor((hi - lo) / st) + 1)]

    def axes(self) -> list[list[Fraction]]:
        return [self.axis(i) for i in range(self.n + 1)]

    def cell_count(self) -> int:
        return math.prod(math.floor((hi - lo) / st) + 1 for (lo, hi), st in zip(self.ranges, self.steps))

    def cells(self) -> Iterable[tuple]:
        # row-major: the first axis varies slowest
        return itertools.product(*self.axes())


@dataclass(frozen=True)
class CellResult:
    coords: tuple
    verdict: Verdict
    iterate: int
    reason: str | None = None


class AuditError(RuntimeError):
    pass


def _classify_chunk(parity: str, cells: list, max_iter: int, bit_budget: int) -> list:
    p = Parity(parity)
    out = []
    for coords in cells:
        nums, _ = kernels.to_scaled(SymmetricSeq(coords, p).expand())
        out.append(kernels.classify_scaled(nums, max_iter, bit_budget))
    return out


def _chunks(seq: list, size: int) -> list[list]:
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def classify_grid(spec: GridSpec, workers: int = 1, audit: bool = True, chunk_size: int = 256) -> list[CellResult]:
    """Classify every grid cell; output order is row-major for any worker count."""
    cells = list(spec.cells())
    chunks = _chunks(cells, chunk_size)
    args = (spec.parity.value, spec.max_iter, spec.bit_budget)
    if workers <= 1 or len(chunks) <= 1:
        raw = [_classify_chunk(args[0], ch, args[1], args[2]) for ch in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(
                pool.map(
                    _classify_chunk,
                    itertools.repeat(args[0]),
                    chunks,
                    itertools.repeat(args[1]),
                    itertools.repeat(args[2]),
                )
            )
    results = []
    for coords, (code, k) in zip(cells, itertools.chain.from_iterable(raw)):
        verdict, reason = _KERNEL_VERDICTS[code]
        results.append(CellResult(coords, verdict, k, reason))
    if audit:
        audit_results(spec, results)
    return results


def audit_results(spec: GridSpec, results: Sequence[CellResult], stride: int = AUDIT_STRIDE) -> int:
    """Re-check every ``stride``-th cell with the Fraction reference path."""
    checked = 0
    for r in results[::stride]:
        cert = classify(SymmetricSeq(r.coords, spec.parity).expand(), spec.max_iter, spec.bit_budget)
        if (cert.verdict, cert.iterate, cert.reason) != (r.verdict, r.iterate, r.reason):
            raise AuditError(f"cell {r.coords}: kernel {r.verdict}/{r.iterate}, reference {cert.verdict}/{cert.iterate}")
        checked += 1
    return checked


def write_csv(results: Sequence[CellResult], n: int, out: TextIO) -> None:
    header = [f"x{i}" for i in range(n + 1)] + ["verdict", "iterate"]
    out.write(",".join(header) + "\n")
    for r in results:
        out.write(",".join([*(str(c) for c in r.coords), r.verdict.value, str(r.iterate)]) + "\n")


def write_pgm(spec: GridSpec, results: Sequence[CellResult], out: TextIO) -> None:
    """Plain PGM, one pixel per cell; the second axis increases upward."""
    if spec.n > 1:
        raise ValueError("PGM output needs a grid with at most two axes")
    width = len(spec.axis(0))
    height = len(spec.axis(1)) if spec.n == 1 else 1
    levels = [PGM_LEVELS[r.verdict] for r in results]
    out.write(f"P2\n{width} {height}\n255\n")
    for row in range(height - 1, -1, -1):
        out.write(" ".join(str(levels[col * height + row]) for col in range(width)) + "\n")


def csv_text(results: Sequence[CellResult], n: int) -> str:
    buf = io.StringIO()
    write_csv(results, n, buf)
    return buf.getvalue()


# -- boundary surfaces ------------------------------------------------------


def free_d_indices(j: int, n: int) -> list[int]:
    """Indices of the exponent increments that parametrize surface ``j``."""
    if n < 1 or not 0 <= j <= n:
        raise ValueError(f"surface {j} does not exist for n = {n}")
    if j == 0:
        return list(range(2, n + 1))
    if j == n:
        return list(range(1, n))
    return [i for i in range(1, n + 1) if i != j + 1]


def _check_chain(x, ds: dict) -> None:
    if x < 1:
        raise ValueError(f"x must be at least 1, got {x}")
    chain = [ds[i] for i in sorted(ds)]
    if any(not 0 < d < 1 for d in chain):
        raise ValueError(f"increments must lie in (0, 1): {chain}")
    if any(a <= b for a, b in zip(chain, chain[1:])):
        raise ValueError(f"increments must be strictly decreasing: {chain}")


def _mpf(v) -> mpmath.mpf:
    v = as_rational(v)
    return mpmath.mpf(v.numerator) / v.denominator


def surface_point(j: int, parity: Parity | str, n: int, x, ds: dict, dps: int = 30) -> list:
    """Coordinates of surface ``j`` at parameters ``x`` and ``ds`` (index -> d)."""
    parity = Parity(parity)
    free = free_d_indices(j, n)
    if sorted(ds) != free:
        raise ValueError(f"surface {j} with n = {n} takes increments {free}, got {sorted(ds)}")
    _check_chain(x, ds)
    with mpmath.workdps(dps):
        xm = _mpf(x)
        d = {i: _mpf(v) for i, v in ds.items()}
        phi = (1 + mpmath.sqrt(5)) / 2
        if j == 0:
            coords = [phi * xm]
            e = mpmath.mpf(2)
            coords.append(xm**e)
            for i in range(2, n + 1):
                e += d[i]
                coords.append(xm**e)
            return coords
        # exponents 1, 1+d1, ..; surface j doubles d_j in slot j+1
        inc = dict(d)
        if j < n:
            inc[j + 1] = d[j]
        else:
            inc[n] = mpmath.mpf(0)
        coords, e = [], mpmath.mpf(1)
        for i in range(n + 1):
            if i > 0:
                e += inc[i]
            coords.append(xm**e)
        if j < n:
            coords[j] *= phi
        else:
            coords[n] *= 2 if parity is Parity.EVEN else phi
        return coords


@dataclass(frozen=True)
class SurfaceSampleSpec:
    j: int
    parity: Parity
    n: int
    x_range: tuple
    x_steps: int
    d_ranges: dict = field(default_factory=dict)  # index -> (lo, hi)
    d_steps: int = 5
    precision: int = 6

    def __post_init__(self) -> None:
        object.__setattr__(self, "parity", Parity(self.parity))
        lo, hi = (as_rational(v) for v in self.x_range)
        object.__setattr__(self, "x_range", (lo, hi))
        free = free_d_indices(self.j, self.n)
        ranges = {}
        for i in free:
            dlo, dhi = self.d_ranges.get(i, (Fraction(1, 20), Fraction(19, 20)))
            dlo, dhi = as_rational(dlo), as_rational(dhi)
            if not 0 < dlo <= dhi < 1:
                raise ValueError(f"range for d{i} must lie inside (0, 1)")
            ranges[i] = (dlo, dhi)
        extra = set(self.d_ranges) - set(free)
        if extra:
            raise ValueError(f"surface {self.j} has no increments {sorted(extra)}")
        object.__setattr__(self, "d_ranges", ranges)
        if lo < 1 or hi < lo:
            raise ValueError("x range must satisfy 1 <= lo <= hi")
        if self.x_steps < 1 or self.d_steps < 1 or self.precision < 0:
            raise ValueError("step counts must be positive and precision nonnegative")

    def free(self) -> list[int]:
        return sorted(self.d_ranges)


def _lattice(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def sample_surface(spec: SurfaceSampleSpec) -> list[tuple[dict, list]]:
    """Evaluate the surface on the sample lattice.

    Lattice combinations whose increments are not strictly decreasing are
    skipped; a request that admits no valid combination raises.
    """
    free = spec.free()
    xs = _lattice(*spec.x_range, spec.x_steps)
    dgrids = [_lattice(*spec.d_ranges[i], spec.d_steps) for i in free]
    rows = []
    for dvals in itertools.product(*dgrids):
        if any(a <= b for a, b in zip(dvals, dvals[1:])):
            continue
        ds = dict(zip(free, dvals))
        for x in xs:
            coords = surface_point(spec.j, spec.parity, spec.n, x, ds, dps=spec.precision + 15)
            rows.append(({"x": x, **{f"d{i}": v for i, v in ds.items()}}, coords))
    if not rows:
        raise ValueError("no increment combination on this lattice satisfies the ordering constraints")
    return rows


def fixed(value, digits: int) -> str:
    """Fixed-point decimal rendering with round-half-even at ``digits`` places."""
    if isinstance(value, Fraction):
        scaled = round(value * 10**digits)
    else:
        with mpmath.workdps(digits + 30):
            scaled = int(mpmath.nint(value * mpmath.mpf(10) ** digits))
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + body
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def write_surface_csv(spec: SurfaceSampleSpec, rows, out: TextIO) -> None:
    names = ["x"] + [f"d{i}" for i in spec.free()]
    header = [f"param:{k}" for k in names] + [f"coord:{i}" for i in range(spec.n + 1)]
    out.write(",".join(header) + "\n")
    p = spec.precision
    for params, coords in rows:
        fields = [fixed(params[k], p) for k in names] + [fixed(c, p) for c in coords]
        out.write(",".join(fields) + "\n")
