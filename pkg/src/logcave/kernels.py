"""Backend selection for the hot kernels.

The compiled module is used when it was built; set ``LOGCAVE_PURE_PYTHON=1``
to force the pure-Python kernels.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _pykernels

CERTIFIED = _pykernels.CERTIFIED
REFUTED = _pykernels.REFUTED
UNKNOWN_MAX_ITER = _pykernels.UNKNOWN_MAX_ITER
UNKNOWN_BIT_BUDGET = _pykernels.UNKNOWN_BIT_BUDGET


def _load_compiled():
    if os.environ.get("LOGCAVE_PURE_PYTHON") == "1":
        return None
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


compiled = _load_compiled()
_impl = compiled if compiled is not None else _pykernels
BACKEND = "cython" if compiled is not None else "python"

apply_l_int = _impl.apply_l_int
in_region_int = _impl.in_region_int
reduced_bits = _impl.reduced_bits
classify_scaled = _impl.classify_scaled


def backend_module(name: str):
    if name == "python":
        return _pykernels
    if name == "cython":
        if compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return compiled
    raise ValueError(f"unknown backend {name!r}")


def to_scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Write rationals over their least common denominator."""
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    return [v.numerator * (den // v.denominator) for v in values], den
