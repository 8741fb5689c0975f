"""Error terms, solution families and residuals of the integral equation

    F(x) - integral_0^x F(t)/t dt = Er(x),

where Er(x) = sum_{n<=x} b(n) - (A2/2) x^2 for b(n) = sum_{d|n} a(d) (n/d)
and A2 = sum a(n)/n^2 carried symbolically.  The general solution is
F(x) = (h(x) + A) x with the fractional-part series

    h(x) = -sum_{n>=1} (a(n)/n) {x/n} = -(A2) x + sum_{n<=x} (a(n)/n) floor(x/n),

which is piecewise linear with slope -A2 and jumps b(N)/N at integers.  The
resolvent form F(x) = E(x) + x * integral_0^x E(t)/t^2 dt + A x inverts the
equation for any admissible right-hand side.

Everything here is exact; residuals are ConstLinear values whose zero test is
a decidable coefficient comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .exactnum import ConstLinear, GaussianRational, as_gaussian
from .piecewise import PiecewiseLaurent, Side, combine, constant_function, shift_exponent
from .sequences import ArithSequence, convolve_id

__all__ = [
    "VolterraCase",
    "make_case",
    "build_error_term",
    "build_fracpart_series",
    "solution_family",
    "residual",
    "remainder_integral_residual",
    "homogeneous_residual",
    "resolvent_function",
    "resolvent_apply",
]


@dataclass(frozen=True)
class VolterraCase:
    """A sequence, its convolution against Id, a domain end and the free
    constant of the solution family."""

    a: ArithSequence
    b: ArithSequence
    X: Fraction
    A: GaussianRational


def make_case(a: ArithSequence, X, A=0, b: Optional[ArithSequence] = None) -> VolterraCase:
    """Assemble a case; b defaults to convolve_id(a) and a supplied b is
    spot-checked against the convolution on small indices."""
    X = Fraction(X)
    if X <= 0:
        raise ValueError("domain end must be positive")
    if X > a.N:
        raise DomainError(f"domain end {X} exceeds the sieve range {a.N}")
    if b is None:
        b = convolve_id(a)
    else:
        if b.N < math.floor(X):
            raise DomainError(f"supplied b covers only 1..{b.N} < {math.floor(X)}")
        for n in range(1, min(8, b.N) + 1):
            expect = _divisor_sum(a, n)
            if as_gaussian(b.value(n)) != expect:
                raise ValueError(f"supplied b({n}) does not match the convolution")
    return VolterraCase(a, b, X, as_gaussian(A))


def _divisor_sum(a: ArithSequence, n: int) -> GaussianRational:
    total = GaussianRational(0)
    for d in range(1, n + 1):
        if n % d == 0:
            total = total + as_gaussian(a.value(d)) * (n // d)
    return total


def _kmax(X: Fraction) -> int:
    return math.floor(X)


def build_error_term(case: VolterraCase) -> PiecewiseLaurent:
    """Er as a piecewise function: constant sum_{n<=k} b(n) on (k, k+1) plus
    the -(A2/2) t^2 main term, right-continuous at integers."""
    kmax = _kmax(case.X)
    a2coeff = ConstLinear.a2(Fraction(-1, 2))
    pieces = []
    for k in range(kmax + 1):
        pieces.append({0: ConstLinear(case.b.prefix_sum(k)), 2: a2coeff})
    return PiecewiseLaurent(case.X, pieces)


def build_fracpart_series(case: VolterraCase) -> PiecewiseLaurent:
    """The series -sum (a(n)/n) {t/n} in closed piecewise form.

    On (k, k+1) the floors are frozen, giving slope -A2 and the constant
    sum_{n<=k} (a(n)/n) floor(k/n); the constant advances by b(k)/k at k,
    with b recomputed from a so the piece data depends on a alone.
    """
    kmax = _kmax(case.X)
    b_true = convolve_id(case.a, upto=kmax)
    slope = ConstLinear.a2(-1)
    pieces = []
    const = GaussianRational(0)
    for k in range(kmax + 1):
        if k:
            const = const + as_gaussian(b_true.value(k)) / k
        pieces.append({1: slope, 0: ConstLinear(const)})
    return PiecewiseLaurent(case.X, pieces)


def solution_family(case: VolterraCase) -> PiecewiseLaurent:
    """F(x) = (h(x) + A) x for the case's free constant A; F(0) = 0."""
    h = build_fracpart_series(case)
    ones = constant_function(case.X, 1, npieces=h.npieces)
    return shift_exponent(combine(h, ones, 1, case.A), 1)


def residual(F: PiecewiseLaurent, E: PiecewiseLaurent, x,
             side: Side = Side.RIGHT) -> ConstLinear:
    """F(x) - integral_0^x F(t)/t dt - E(x), exact.

    Zero exactly when the integral equation holds at x.  Breakpoint values
    default to right limits, matching the right-continuous error term; pass
    Side.MIDPOINT for midpoint-normalized data.
    """
    x = Fraction(x)
    return F.eval_at(x, side) - F.integrate(x, "1/t") - E.eval_at(x, side)


def remainder_integral_residual(case: VolterraCase, x,
                                E: Optional[PiecewiseLaurent] = None,
                                h: Optional[PiecewiseLaurent] = None) -> ConstLinear:
    """Residual of the identity Er(x) - x h(x) = -integral_0^x h(t) dt.

    Returns (Er(x) - x h(x)) + integral_0^x h, which is exactly zero for
    every positive x; x = 0 returns zero by the convention Er(0) = 0.
    Prebuilt E and h may be passed to amortize construction over a grid.
    """
    x = Fraction(x)
    if x < 0:
        raise DomainError("requires x >= 0")
    if x == 0:
        return ConstLinear.zero()
    if E is None:
        E = build_error_term(case)
    if h is None:
        h = build_fracpart_series(case)
    r = E.eval_at(x, Side.RIGHT) - h.eval_at(x, Side.RIGHT) * x
    return r + h.integrate(x, "1")


def homogeneous_residual(A, x) -> ConstLinear:
    """Residual of G(x) = A x in G(x) - integral_0^x G(t)/t dt = 0.

    Always exactly zero; exercised as a regression guard on the kernel
    integration path.
    """
    x = Fraction(x)
    if x < 0:
        raise DomainError("requires x >= 0")
    A = as_gaussian(A)
    if x == 0:
        return ConstLinear.zero()
    end = max(x, Fraction(1))
    G = PiecewiseLaurent(end, [{1: ConstLinear(A)} for _ in range(math.floor(end) + 1)])
    return G.eval_at(x, Side.RIGHT) - G.integrate(x, "1/t")


def resolvent_function(E: PiecewiseLaurent, A=0) -> PiecewiseLaurent:
    """F(x) = E(x) + x * integral_0^x E(t)/t^2 dt + A x as a piecewise function.

    Requires the weighted integrand E(t)/t^2 to be integrable at 0+, which is
    the admissibility condition for the inversion formula.
    """
    A = as_gaussian(A)
    cums, blocker = E._prefix(-2)
    if blocker is not None:
        raise blocker[1]
    pieces = []
    for k, piece in enumerate(E.pieces):
        out = dict(piece)
        linear = ConstLinear(A) + cums[k]
        for e, c in piece.items():
            m = e - 2
            # t * (antiderivative of c t^m): the exponent lands back on e
            out[e] = out.get(e, ConstLinear.zero()) + c / (m + 1)
            if k:
                linear = linear - c * (Fraction(k) ** (m + 1)) / (m + 1)
        out[1] = out.get(1, ConstLinear.zero()) + linear
        pieces.append(out)
    return PiecewiseLaurent(E.X, pieces)


def resolvent_apply(E: PiecewiseLaurent, x, A=0) -> ConstLinear:
    """Value E(x) + x * integral_0^x E(t)/t^2 dt + A x, exact."""
    x = Fraction(x)
    A = as_gaussian(A)
    return E.eval_at(x, Side.RIGHT) + E.integrate(x, "1/t^2") * x + ConstLinear(A) * x
