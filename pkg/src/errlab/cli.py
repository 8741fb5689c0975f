"""Command-line surface: sieving, verification suites, table emission and the
resolvent applied to user data.

Exit codes: 0 all identities pass, 1 an identity failed, 2 usage or parse
error (including non-integrable input), 3 precision target unattainable.
Exact mode is the default everywhere; numeric mode is opt-in.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .decomposition import (FROZEN_GROWTH_MAX, build_fracpart_series, decompose,
                            growth_max_ratio, trivial_character_relations,
                            twisted_case, untwisted_case)
from .errors import (CapacityError, DivergentAtZeroError, DomainError, FormatError,
                     LogCaseError, PrecisionError, UncertifiableSeriesError)
from .exactnum import ConstLinear, GaussianRational, as_gaussian, parse_rational
from .piecewise import PiecewiseLaurent, Side
from .report import VerificationReport
from .sequences import (MAX_SIEVE, ArithSequence, CharacterSpec, convolve_id,
                        kronecker_character, mobius_sieve, numeric_constants,
                        read_character_csv, read_sequence_csv, summatory,
                        summatory_via_floor_identity, twist, write_character_csv,
                        write_sequence_csv)
from .volterra import (build_error_term, homogeneous_residual, make_case,
                       remainder_integral_residual, residual, resolvent_apply,
                       resolvent_function, solution_family)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


@dataclass
class RunConfig:
    command: str
    seq: str = "mu"
    discriminant: Optional[int] = None
    chi_file: Optional[str] = None
    b_file: Optional[str] = None
    X: Fraction = Fraction(100)
    x_explicit: bool = False
    grid_denominator: int = 3
    A_list: List[GaussianRational] = field(default_factory=lambda: [GaussianRational(0)])
    output: Optional[str] = None
    mode: str = "exact"
    precision_target: float = 1e-6
    sieve_n: int = 100
    emit: str = "sequence"
    input_path: Optional[str] = None


def _parse_args(argv) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="errlab",
        description="Exact verification and tabulation of Volterra-equation "
                    "identities for arithmetic error terms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_grid=True):
        p.add_argument("--seq", default="mu",
                       help="mu | mu_chi | file:PATH (default mu)")
        p.add_argument("--D", type=int, default=None,
                       help="fundamental discriminant for --seq mu_chi")
        p.add_argument("--chi-file", default=None,
                       help="CSV character table residue,value (alternative to --D)")
        if with_grid:
            p.add_argument("--X", default=None, help="domain end, rational (default 100)")
            p.add_argument("--denom", type=int, default=3,
                           help="grid denominator, points k/denom (default 3)")
        p.add_argument("--mode", choices=["exact", "numeric"], default="exact")
        p.add_argument("--precision", type=float, default=1e-6,
                       help="numeric-mode target for the series constants")
        p.add_argument("-o", "--output", default=None, help="output CSV path (default stdout)")

    pv = sub.add_parser("verify", help="run the identity suites over a grid")
    common(pv)
    pv.add_argument("--A", action="append", default=None,
                    help="free constant of the solution family, e.g. 0, -2, 3/2+1/2*i; repeatable")
    pv.add_argument("--b-file", default=None,
                    help="CSV n,value overriding the convolution (fault injection)")

    pt = sub.add_parser("table", help="emit x, E, E_AR, E_AN over a grid")
    common(pt)

    ps = sub.add_parser("solve", help="apply the resolvent to a piecewise dump")
    common(ps)
    ps.add_argument("--input", required=True, help="piecewise dump file for the right-hand side")
    ps.add_argument("--A", action="append", default=None,
                    help="free constant added as A*x (single value)")

    pg = sub.add_parser("sieve", help="emit a sequence (or character table) as CSV")
    common(pg, with_grid=False)
    pg.add_argument("--N", type=int, default=100, help="sieve range (default 100)")
    pg.add_argument("--emit", choices=["sequence", "character"], default="sequence")

    ns = parser.parse_args(argv)
    cfg = RunConfig(command=ns.command)
    cfg.seq = ns.seq
    cfg.discriminant = ns.D
    cfg.chi_file = ns.chi_file
    cfg.mode = ns.mode
    cfg.precision_target = ns.precision
    cfg.output = ns.output
    if hasattr(ns, "X"):
        if ns.X is not None:
            cfg.X = parse_rational(ns.X)
            cfg.x_explicit = True
        cfg.grid_denominator = ns.denom
    if getattr(ns, "A", None):
        cfg.A_list = [GaussianRational.from_text(s) for s in ns.A]
    if hasattr(ns, "b_file"):
        cfg.b_file = ns.b_file
    if hasattr(ns, "N"):
        cfg.sieve_n = ns.N
    if hasattr(ns, "emit"):
        cfg.emit = ns.emit
    if hasattr(ns, "input"):
        cfg.input_path = ns.input
    if cfg.grid_denominator < 1:
        raise FormatError("grid denominator must be >= 1")
    if cfg.precision_target <= 0:
        raise FormatError("precision target must be positive")
    if cfg.X <= 0:
        raise FormatError("X must be positive")
    return cfg


def _character_for(cfg: RunConfig) -> Optional[CharacterSpec]:
    if cfg.chi_file:
        return read_character_csv(cfg.chi_file)
    if cfg.discriminant is not None:
        return kronecker_character(cfg.discriminant)
    return None


def _load_sequences(cfg: RunConfig, n: int):
    """Resolve --seq into (a, b_override, chi, kind)."""
    b_override = None
    chi = None
    if cfg.seq == "mu":
        a = mobius_sieve(n)
        kind = "mu"
    elif cfg.seq == "mu_chi":
        chi = _character_for(cfg)
        if chi is None:
            raise FormatError("--seq mu_chi requires --D or --chi-file")
        a = twist(mobius_sieve(n), chi)
        kind = "mu_chi"
    elif cfg.seq.startswith("file:"):
        a, b_override = read_sequence_csv(cfg.seq[5:])
        kind = "file"
    else:
        raise FormatError(f"unknown sequence selector {cfg.seq!r}")
    if cfg.b_file:
        b_override, extra = read_sequence_csv(cfg.b_file)
        if extra is not None:
            raise FormatError("--b-file must use the n,value layout")
    return a, b_override, chi, kind


def _grid(X: Fraction, denom: int, start: int = 1):
    top = math.floor(X * denom)
    return [Fraction(k, denom) for k in range(start, top + 1)]


def _open_out(cfg: RunConfig):
    if cfg.output:
        return open(cfg.output, "w", newline="")
    return None


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _run_verify(cfg: RunConfig) -> VerificationReport:
    n_needed = math.floor(cfg.X)
    a, b_override, chi, kind = _load_sequences(cfg, n_needed)
    if not cfg.x_explicit and cfg.X > a.N:
        cfg.X = Fraction(a.N)
    report = VerificationReport()
    grid = _grid(cfg.X, cfg.grid_denominator)

    case0 = make_case(a, cfg.X, 0, b=b_override)
    E = build_error_term(case0)
    h = build_fracpart_series(case0)

    for A in cfg.A_list:
        F = solution_family(make_case(a, cfg.X, A, b=b_override))
        tag = f"volterra[A={A.to_text()}]"
        for x in grid:
            report.add(tag, x, residual(F, E, x))

    for x in grid:
        report.add("remainder_integral", x,
                   remainder_integral_residual(case0, x, E=E, h=h))

    for A in (GaussianRational(0), GaussianRational(1), GaussianRational(0, 1)):
        tag = f"homogeneous[A={A.to_text()}]"
        for x in grid:
            report.add(tag, x, homogeneous_residual(A, x))

    resolvent = resolvent_function(E, 0)
    for x in grid:
        report.add("resolvent", x, residual(resolvent, E, x))
    c_ref = (resolvent.eval_at(grid[0], Side.RIGHT)
             - h.eval_at(grid[0], Side.RIGHT) * grid[0]) / grid[0]
    for x in grid:
        c_x = (resolvent.eval_at(x, Side.RIGHT) - h.eval_at(x, Side.RIGHT) * x) / x
        report.add("uniqueness_surrogate", x, c_x - c_ref)

    for x in grid:
        report.add("floor_summatory", x,
                   ConstLinear(summatory_via_floor_identity(a, x) - summatory(case0.b, x)))

    for n in range(1, math.floor(cfg.X) + 1):
        jump = h.eval_at(n, Side.RIGHT) - h.eval_at(n, Side.LEFT)
        expect = ConstLinear(as_gaussian(case0.b.value(n)) / n)
        report.add(f"jump[{n}]", n, jump - expect)
        r_right = E.eval_at(n, Side.RIGHT) - h.eval_at(n, Side.RIGHT) * n
        r_left = E.eval_at(n, Side.LEFT) - h.eval_at(n, Side.LEFT) * n
        report.add(f"remainder_continuity[{n}]", n, r_right - r_left)

    if kind == "mu":
        dc = untwisted_case(cfg.X, a=a, b=b_override)
        for x in _grid(cfg.X, cfg.grid_denominator, start=cfg.grid_denominator):
            report.add("decomposition", x, decompose(dc, x)[2])
        trivX = min(cfg.X, Fraction(100))
        report.extend(trivial_character_relations(trivX, cfg.grid_denominator))
    elif kind == "mu_chi":
        dc = twisted_case(chi, cfg.X, b=b_override)
        report.add("decomposition", 0, decompose(dc, 0)[2])
        for x in grid:
            report.add("decomposition", x, decompose(dc, x)[2])

    if cfg.mode == "numeric":
        key = None
        if kind == "mu":
            key = "mu"
        elif kind == "mu_chi" and cfg.discriminant == -3:
            key = "mu_chi_-3"
        if key is not None:
            got = growth_max_ratio(chi)
            diff = got - FROZEN_GROWTH_MAX[key]
            report.add(f"growth[{key}]", 0, diff, exact_zero=(diff == 0.0))

    return report


def cmd_verify(cfg: RunConfig) -> int:
    report = _run_verify(cfg)
    out = _open_out(cfg)
    try:
        report.write_csv(out if out else sys.stdout)
    finally:
        if out:
            out.close()
    fail = report.first_failure()
    if fail is None:
        print(f"PASS: {len(report)} identities verified", file=sys.stderr)
        return EXIT_PASS
    print(f"FAIL: {fail.identity} at x={fail.x} "
          f"(residual {fail.residual})", file=sys.stderr)
    return EXIT_FAIL


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def _constants_for_table(cfg: RunConfig, chi) -> tuple:
    budget = max(math.ceil(1.0 / cfg.precision_target), math.floor(cfg.X))
    if budget > MAX_SIEVE:
        raise PrecisionError(
            f"precision {cfg.precision_target:g} needs a sieve of {budget}, "
            f"beyond the budget {MAX_SIEVE}")
    base = mobius_sieve(budget)
    seq = twist(base, chi) if chi is not None else base
    return numeric_constants(seq, chi, cfg.precision_target)


def cmd_table(cfg: RunConfig) -> int:
    n_needed = math.floor(cfg.X)
    if cfg.seq == "mu":
        dc = untwisted_case(cfg.X)
        chi = None
    elif cfg.seq == "mu_chi":
        chi = _character_for(cfg)
        if chi is None:
            raise FormatError("--seq mu_chi requires --D or --chi-file")
        dc = twisted_case(chi, cfg.X)
    else:
        raise FormatError("table supports --seq mu and mu_chi (the split is "
                          "defined for those cases)")
    numeric = cfg.mode == "numeric"
    if numeric:
        a2, a1, (b2, b1) = _constants_for_table(cfg, chi)

    out = _open_out(cfg)
    fh = out if out else sys.stdout
    try:
        if numeric:
            fh.write(f"# a2 = {a2.real!r} +/- {b2!r}\n")
            fh.write(f"# a1 = {0.0 if a1 is None else a1.real!r} +/- {b1!r}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "E", "E_AR", "E_AN"])
        for k in range(0, math.floor(cfg.X * cfg.grid_denominator) + 1):
            x = Fraction(k, cfg.grid_denominator)
            side = Side.RIGHT if (x.denominator == 1 and dc.kind == "untwisted") else (
                Side.MIDPOINT if (x.denominator == 1 and x > 0) else Side.POINT)
            e = dc.error.eval_at(x, side)
            e_ar = dc.arithmetic_series.eval_at(x, side) * x
            e_an = dc.analytic_part.eval_at(x, side)
            if numeric:
                row = [float(x)] + [v.numeric(a2, a1 or 0.0).real for v in (e, e_ar, e_an)]
                writer.writerow([repr(v) for v in row])
            else:
                writer.writerow([str(x), e.to_text(), e_ar.to_text(), e_an.to_text()])
    finally:
        if out:
            out.close()
    return EXIT_PASS


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def cmd_solve(cfg: RunConfig) -> int:
    if len(cfg.A_list) > 1:
        raise FormatError("solve takes a single --A value")
    A = cfg.A_list[0]
    with open(cfg.input_path) as fh:
        E = PiecewiseLaurent.loads(fh.read())
    end = min(cfg.X, E.X) if cfg.x_explicit else E.X
    F = resolvent_function(E, A)
    numeric = cfg.mode == "numeric"
    if numeric:
        a2 = a1 = 0.0  # user data has no attached series constants

    out = _open_out(cfg)
    fh = out if out else sys.stdout
    ok = True
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "F", "residual", "exact_zero"])
        for k in range(1, math.floor(end * cfg.grid_denominator) + 1):
            x = Fraction(k, cfg.grid_denominator)
            val = F.eval_at(x, Side.RIGHT)
            res = residual(F, E, x)
            zero = res.is_zero()
            ok = ok and zero
            if numeric:
                writer.writerow([repr(float(x)), repr(val.numeric(a2, a1).real),
                                 repr(res.numeric(a2, a1).real), "true" if zero else "false"])
            else:
                writer.writerow([str(x), val.to_text(), res.to_text(),
                                 "true" if zero else "false"])
    finally:
        if out:
            out.close()
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# sieve
# ---------------------------------------------------------------------------

def cmd_sieve(cfg: RunConfig) -> int:
    a, _, chi, kind = _load_sequences(cfg, cfg.sieve_n)
    if cfg.emit == "character":
        if chi is None:
            raise FormatError("--emit character requires --seq mu_chi with --D or --chi-file")
        if cfg.output:
            write_character_csv(cfg.output, chi)
        else:
            sys.stdout.write("residue,value\n")
            for r, v in enumerate(chi.table):
                sys.stdout.write(f"{r},{v}\n")
        return EXIT_PASS
    if kind == "file":
        a = ArithSequence(a.name, [a.value(n) for n in range(1, min(a.N, cfg.sieve_n) + 1)])
    if cfg.output:
        write_sequence_csv(cfg.output, a)
    else:
        sys.stdout.write("n,value\n")
        for n in range(1, a.N + 1):
            sys.stdout.write(f"{n},{as_gaussian(a.value(n)).to_text()}\n")
    return EXIT_PASS


# ---------------------------------------------------------------------------

_DISPATCH = {
    "verify": cmd_verify,
    "table": cmd_table,
    "solve": cmd_solve,
    "sieve": cmd_sieve,
}


def main(argv=None) -> int:
    try:
        cfg = _parse_args(argv)
        return _DISPATCH[cfg.command](cfg)
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (FormatError, LogCaseError, DivergentAtZeroError, DomainError,
            UncertifiableSeriesError, CapacityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
