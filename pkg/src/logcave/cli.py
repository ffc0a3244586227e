"""Command-line front end: ``logcave {classify,iterate,region,witness,sweep,surface}``."""
from __future__ import annotations

import argparse
import io
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import kernels
from .qfield import as_rational
from .region import RegionPoint, region_report
from .seqops import (
    DEFAULT_MAX_ITER,
    Parity,
    SymmetricSeq,
    Verdict,
    classify,
    default_bit_budget,
    iterate_L,
    normalize,
)
from .sweep import (
    DEFAULT_WINDOWS,
    GridSpec,
    SurfaceSampleSpec,
    classify_grid,
    sample_surface,
    write_csv,
    write_pgm,
    write_surface_csv,
)
from .witness import WitnessParams, build_witness

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

_NUMERAL = re.compile(r"[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)\Z")
_TOKEN = re.compile(r"[^,\s]+")


class SequenceParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_rational(token: str, position: int = 0) -> Fraction:
    if not _NUMERAL.match(token):
        raise SequenceParseError(f"malformed numeral {token!r}", position)
    if "/" in token and int(token.split("/")[1]) == 0:
        raise SequenceParseError(f"zero denominator in {token!r}", position)
    return Fraction(token)


def parse_values(text: str) -> tuple:
    values = []
    for m in _TOKEN.finditer(text):
        values.append(parse_rational(m.group(), m.start()))
    if not values:
        raise SequenceParseError("empty sequence", 0)
    return tuple(values)


def parse_sequence(text: str, half: Parity | str | None = None) -> tuple:
    """Parse ``"1,7,21,35,35,21,7,1"``, ``"1, 8/5, 1"`` or ``"--even 7,21,35"``.

    With ``half`` set (or a leading ``--even``/``--odd``), the numbers are the
    half-form ``x_0..x_n`` and the full symmetric sequence is returned.
    """
    stripped = text.strip()
    for flag in ("--even", "--odd"):
        if stripped.startswith(flag) and (len(stripped) == len(flag) or stripped[len(flag)].isspace()):
            if half is not None:
                raise SequenceParseError("half-form given twice", 0)
            half = flag[2:]
            offset = text.index(flag) + len(flag)
            try:
                values = parse_values(text[offset:])
            except SequenceParseError as exc:
                raise SequenceParseError(str(exc).rsplit(" at position", 1)[0], exc.position + offset) from None
            return SymmetricSeq(values, Parity(half)).expand()
    values = parse_values(text)
    if half is not None:
        return SymmetricSeq(values, Parity(half)).expand()
    return values


def render(s: Sequence[Fraction]) -> str:
    return ",".join(str(c) for c in s)


def qstr(x: Fraction) -> str:
    """Exact JSON form of a rational: always ``"num/den"``."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- argument handling ------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text.strip())
    except SequenceParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range_arg(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return tuple(_rational_arg(p) for p in parts)


def _d_range_arg(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected INDEX:LO:HI, got {text!r}")
    return int(parts[0]), (_rational_arg(parts[1]), _rational_arg(parts[2]))


def _add_sequence_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("sequence", nargs="?", help="comma/space separated rationals, or - for stdin")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--even", metavar="X0,...,XN", help="half-form of an even-length symmetric sequence")
    g.add_argument("--odd", metavar="X0,...,XN", help="half-form of an odd-length symmetric sequence")


def _add_budget(p: argparse.ArgumentParser, max_iter: int = DEFAULT_MAX_ITER) -> None:
    p.add_argument("--max-iter", type=_nonneg_int, default=max_iter)
    p.add_argument("--bit-budget", type=_positive_int, default=None, help="default: $LOGCAVE_BIT_BUDGET or 1000000")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logcave", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="certify or refute infinite logconcavity")
    _add_sequence_input(p)
    _add_budget(p)
    p.add_argument("--strict", action="store_true", help="exit 3 on an unknown verdict")

    p = sub.add_parser("iterate", parents=[common], help="print exact iterates of L")
    _add_sequence_input(p)
    p.add_argument("--steps", "-k", type=_nonneg_int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("region", parents=[common], help="test membership in the trapping region")
    _add_sequence_input(p)

    p = sub.add_parser("witness", parents=[common], help="construct an explicit region member")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--C", dest="c", type=_rational_arg, default=None, help="default 3/5")
    p.add_argument("--a", type=_rational_arg, default=None, help="default 3*C^(T(n-1)-T(n))")
    p.add_argument("--base", default=None, help="half-form of a positive 1-logconcave base; default binomial")

    p = sub.add_parser("sweep", parents=[common], help="classify a grid of half-vectors")
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--n", type=_nonneg_int, default=1)
    p.add_argument("--range", dest="ranges", type=_range_arg, action="append", help="LO:HI per axis, in axis order")
    p.add_argument("--step", dest="steps", type=_rational_arg, action="append", help="one step for all axes, or one per axis")
    _add_budget(p)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")
    p.add_argument("--no-audit", action="store_true", help="skip the 1%% reference re-check")

    p = sub.add_parser("surface", parents=[common], help="sample a boundary surface for plotting")
    p.add_argument("--j", type=_nonneg_int, required=True)
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--x-range", type=_range_arg, default=(Fraction(1), Fraction(10)))
    p.add_argument("--x-steps", type=_positive_int, default=10)
    p.add_argument("--d-range", dest="d_ranges", type=_d_range_arg, action="append", default=[], help="INDEX:LO:HI")
    p.add_argument("--d-steps", type=_positive_int, default=5)
    p.add_argument("--precision", type=_nonneg_int, default=6)
    return parser


class UsageError(Exception):
    pass


def _read_input(args) -> tuple:
    if args.even is not None:
        return parse_sequence(args.even, Parity.EVEN)
    if args.odd is not None:
        return parse_sequence(args.odd, Parity.ODD)
    if args.sequence is None:
        raise UsageError("no sequence given")
    text = sys.stdin.read() if args.sequence == "-" else args.sequence
    return parse_sequence(text)


def _normalized_json(s: tuple):
    if len(s) < 3 or any(c <= 0 for c in s):
        return None
    sym, scale = normalize(s)
    if sym is None:
        return None
    return {"parity": sym.parity.value, "half": [qstr(c) for c in sym.half], "scale": qstr(scale)}


def cmd_classify(args) -> tuple[str, int]:
    s = _read_input(args)
    budget = args.bit_budget if args.bit_budget is not None else default_bit_budget()
    cert = classify(s, args.max_iter, budget)
    out = {"verdict": cert.verdict.value, "iterate": cert.iterate}
    if cert.reason is not None:
        out["reason"] = cert.reason
    out["input_normalized"] = _normalized_json(s)
    status = EXIT_UNKNOWN if args.strict and cert.verdict is Verdict.UNKNOWN else EXIT_OK
    return _dump(out), status


def cmd_iterate(args) -> tuple[str, int]:
    its = iterate_L(_read_input(args), args.steps)
    if args.format == "json":
        return _dump({"iterates": [[qstr(c) for c in it] for it in its]}), EXIT_OK
    return "".join(f"{k}\t{render(it)}\n" for k, it in enumerate(its)), EXIT_OK


def _region_point(args) -> RegionPoint:
    if args.even is not None or args.odd is not None:
        half = parse_values(args.even if args.even is not None else args.odd)
        parity = Parity.EVEN if args.even is not None else Parity.ODD
        if any(c <= 0 for c in half):
            raise UsageError("region coordinates must be positive")
        return RegionPoint(half, parity)
    s = _read_input(args)
    if len(s) < 3 or any(c <= 0 for c in s):
        raise UsageError("region needs a strictly positive sequence of length at least 3")
    sym, _ = normalize(s)
    if sym is None:
        raise UsageError("region needs a symmetric sequence")
    return RegionPoint(sym.half, sym.parity)


def cmd_region(args) -> tuple[str, int]:
    p = _region_point(args)
    rep = region_report(p)
    out = {
        "parity": p.parity.value,
        "coords": [qstr(c) for c in p.coords],
        "in_region": rep.in_region,
        "per_surface": [s.value for s in rep.per_surface],
        "failed_conditions": rep.failed_conditions,
    }
    return _dump(out), EXIT_OK


def cmd_witness(args) -> tuple[str, int]:
    base = None
    if args.base is not None:
        base = SymmetricSeq(parse_values(args.base), Parity(args.parity))
    try:
        params = WitnessParams.defaults(args.n, args.parity, C=args.c, a=args.a, base=base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = build_witness(params)
    nums, _ = kernels.to_scaled(w.expand())
    out = {
        "n": params.n,
        "parity": params.parity.value,
        "C": qstr(params.C),
        "a": qstr(params.a),
        "base": [qstr(b) for b in params.base.half],
        "half": [qstr(c) for c in w.half],
        "in_region": True,
        "kernel_in_region": kernels.in_region_int(nums),
    }
    return _dump(out), EXIT_OK


def cmd_sweep(args) -> tuple[str, int]:
    parity = Parity(args.parity)
    axes = args.n + 1
    ranges = args.ranges
    if ranges is None:
        if args.n != 1:
            raise UsageError("--range is required unless --n 1")
        ranges = list(DEFAULT_WINDOWS[parity])
    steps = args.steps or [Fraction(1, 2)]
    if len(steps) == 1:
        steps = steps * axes
    budget = args.bit_budget if args.bit_budget is not None else default_bit_budget()
    try:
        spec = GridSpec(parity, args.n, tuple(ranges), tuple(steps), args.max_iter, budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "pgm" and args.n > 1:
        raise UsageError("pgm output needs --n 0 or --n 1")
    results = classify_grid(spec, workers=args.workers, audit=not args.no_audit)
    buf = io.StringIO()
    if args.format == "csv":
        write_csv(results, spec.n, buf)
    else:
        write_pgm(spec, results, buf)
    return buf.getvalue(), EXIT_OK


def cmd_surface(args) -> tuple[str, int]:
    try:
        spec = SurfaceSampleSpec(
            j=args.j,
            parity=Parity(args.parity),
            n=args.n,
            x_range=args.x_range,
            x_steps=args.x_steps,
            d_ranges=dict(args.d_ranges),
            d_steps=args.d_steps,
            precision=args.precision,
        )
        rows = sample_surface(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    buf = io.StringIO()
    write_surface_csv(spec, rows, buf)
    return buf.getvalue(), EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "iterate": cmd_iterate,
    "region": cmd_region,
    "witness": cmd_witness,
    "sweep": cmd_sweep,
    "surface": cmd_surface,
}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        text, status = COMMANDS[args.command](args)
    except (UsageError, SequenceParseError) as exc:
        sys.stderr.write(f"{parser.prog} {args.command}: error: {exc}\n")
        return EXIT_USAGE
    if args.out is None:
        stdout.write(text)
        return status
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        sys.stderr.write(f"{parser.prog}: cannot write {args.out}: {exc.strerror}\n")
        return EXIT_IO
    return status


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
