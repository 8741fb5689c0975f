"""Exact piecewise Laurent polynomials on [0, X] with integer breakpoints.

A function is stored per unit interval (k, k+1) as a sparse map from
exponents in {-2, .., 3} to ConstLinear coefficients.  All functions in scope
jump only at integers, so arbitrary rational evaluation points and exact
power-rule integration against the weights 1, 1/t and 1/t^2 suffice.  A t^-1
term in a weighted integrand has no power-rule antiderivative and is raised
as an error: the operators under study never produce one on valid inputs, so
it only flags malformed data.
"""

from __future__ import annotations

import math
import re
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import DivergentAtZeroError, DomainError, FormatError, LogCaseError
from .exactnum import ConstLinear, as_gaussian

__all__ = [
    "EXP_MIN",
    "EXP_MAX",
    "Side",
    "PiecewiseLaurent",
    "eval_at",
    "integrate",
    "combine",
    "shift_exponent",
    "constant_function",
    "monomial",
]

EXP_MIN = -2
EXP_MAX = 3

_WEIGHT_SHIFT = {"1": 0, 1: 0, "1/t": -1, "1/t^2": -2}


class Side(Enum):
    """Convention for evaluating at a breakpoint."""

    LEFT = "left_limit"
    RIGHT = "right_limit"
    POINT = "point"
    MIDPOINT = "midpoint"


def _min_pieces(x: Fraction) -> int:
    # enough unit intervals to cover (0, X]
    return math.ceil(x)


def _full_pieces(x: Fraction) -> int:
    # one more piece at an integer domain end, so right limits exist at every
    # breakpoint of [0, X]; equals _min_pieces for non-integer X
    return math.floor(x) + 1


class PiecewiseLaurent:
    """f(t) = sum_e c_{k,e} t^e on (k, k+1), coefficients ConstLinear."""

    __slots__ = ("X", "pieces", "weighted_integrand", "_int_cache")

    def __init__(self, X, pieces, weighted_integrand: bool = False):
        X = Fraction(X)
        if X <= 0:
            raise ValueError("domain end must be positive")
        cleaned: List[Dict[int, ConstLinear]] = []
        for k, piece in enumerate(pieces):
            cur: Dict[int, ConstLinear] = {}
            for e, c in piece.items():
                if not EXP_MIN <= e <= EXP_MAX:
                    raise ValueError(f"exponent {e} outside [{EXP_MIN}, {EXP_MAX}]")
                if not isinstance(c, ConstLinear):
                    c = ConstLinear.scalar(c)
                if not c.is_zero():
                    cur[e] = c
            if k == 0 and not weighted_integrand and any(e < 0 for e in cur):
                raise ValueError("negative exponents on (0, 1) require the "
                                 "weighted-integrand flag")
            cleaned.append(cur)
        if len(cleaned) < _min_pieces(X):
            raise ValueError(f"need {_min_pieces(X)} pieces to cover [0, {X}]")
        self.X = X
        self.pieces = cleaned
        self.weighted_integrand = weighted_integrand
        self._int_cache = {}

    @property
    def npieces(self) -> int:
        return len(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLaurent):
            return NotImplemented
        return self.X == other.X and self.pieces == other.pieces

    def __repr__(self):
        return f"PiecewiseLaurent(X={self.X}, npieces={self.npieces})"

    # -- evaluation ---------------------------------------------------------

    def _piece_value(self, k: int, x: Fraction) -> ConstLinear:
        total = ConstLinear.zero()
        for e, c in self.pieces[k].items():
            if e == 0:
                total = total + c
            else:
                if x == 0 and e < 0:
                    raise DomainError("negative exponent evaluated at 0")
                total = total + c * (x ** e)
        return total

    def eval_at(self, x, side: Side = Side.POINT) -> ConstLinear:
        """Exact value at rational x using the requested breakpoint convention.

        The stored pieces are the right-continuous representatives, so POINT
        agrees with RIGHT at interior breakpoints and extends continuously at
        an uncovered domain end.
        """
        x = Fraction(x)
        if x < 0 or x > self.X:
            raise DomainError(f"evaluation point {x} outside [0, {self.X}]")
        if x.denominator != 1:
            return self._piece_value(math.floor(x), x)
        k = int(x)
        if k == 0:
            if side in (Side.LEFT, Side.MIDPOINT):
                raise DomainError("no left limit at 0")
            return self._piece_value(0, x)
        if side is Side.LEFT:
            return self._piece_value(k - 1, x)
        if side is Side.RIGHT:
            if k >= self.npieces:
                raise DomainError(f"no right limit at the domain end {x}")
            return self._piece_value(k, x)
        if side is Side.MIDPOINT:
            left = self._piece_value(k - 1, x)
            right = self.eval_at(x, Side.RIGHT)
            return (left + right) / 2
        # POINT: the piece whose left-closed interval [k, k+1) contains x,
        # falling back to the last piece at an uncovered domain end.
        return self._piece_value(min(k, self.npieces - 1), x)

    # -- integration --------------------------------------------------------

    def _prefix(self, shift: int):
        """Cumulative exact integrals of f * t^shift at breakpoints.

        Returns (cums, blocker) where cums[j] is the integral over (0, j) and
        blocker = (piece index, exception) for the first non-integrable piece,
        after which cums stops.
        """
        if shift in self._int_cache:
            return self._int_cache[shift]
        cums = [ConstLinear.zero()]
        blocker = None
        run = ConstLinear.zero()
        for k, piece in enumerate(self.pieces):
            contrib = ConstLinear.zero()
            for e, c in sorted(piece.items()):
                m = e + shift
                if m == -1:
                    blocker = (k, LogCaseError(k))
                    break
                if k == 0 and m < -1:
                    blocker = (k, DivergentAtZeroError(m))
                    break
                # antiderivative c/(m+1) * t^(m+1) over (k, k+1)
                denom = m + 1
                hi = Fraction(k + 1) ** denom
                lo = Fraction(k) ** denom if k else Fraction(0)
                contrib = contrib + c * (Fraction(hi - lo) / denom)
            if blocker:
                break
            run = run + contrib
            cums.append(run)
        self._int_cache[shift] = (cums, blocker)
        return cums, blocker

    def integrate(self, x, weight="1") -> ConstLinear:
        """Exact integral of f(t) * w(t) over (0, x), w in {1, 1/t, 1/t^2}.

        Improper at 0+: the weighted integrand must have exponents >= 0 on the
        first interval.  A t^-1 term on any interval meeting (0, x) raises
        LogCaseError; lower exponents on the first interval raise
        DivergentAtZeroError.
        """
        if weight not in _WEIGHT_SHIFT:
            raise ValueError(f"weight must be one of 1, 1/t, 1/t^2, not {weight!r}")
        shift = _WEIGHT_SHIFT[weight]
        x = Fraction(x)
        if x < 0 or x > self.X:
            raise DomainError(f"integration endpoint {x} outside [0, {self.X}]")
        if x == 0:
            return ConstLinear.zero()
        cums, blocker = self._prefix(shift)
        k = math.floor(x)
        partial = x > k
        # full pieces (0, k) and, when x is interior, the piece (k, x)
        needed = k if not partial else k + 1
        if blocker is not None and blocker[0] < needed:
            raise blocker[1]
        total = cums[k]
        if partial:
            for e, c in sorted(self.pieces[k].items()):
                m = e + shift
                denom = m + 1
                total = total + c * ((x ** denom - Fraction(k) ** denom) / denom)
        return total

    # -- text dump ----------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"X: {self.X}"]
        for k, piece in enumerate(self.pieces):
            entries = "; ".join(f"e{e}={piece[e].to_text()}" for e in sorted(piece))
            lines.append(f"{k}: {entries}" if entries else f"{k}:")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PiecewiseLaurent":
        x_end: Optional[Fraction] = None
        pieces: List[Dict[int, ConstLinear]] = []
        entry_re = re.compile(r"^e(-?\d+)=(.*)$")
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head, _, rest = line.partition(":")
            head = head.strip()
            if head == "X":
                x_end = Fraction(rest.strip())
                continue
            try:
                k = int(head)
            except ValueError as exc:
                raise FormatError(f"line {lineno}: expected a piece index") from exc
            if k != len(pieces):
                raise FormatError(f"line {lineno}: pieces must be listed in order from 0")
            piece: Dict[int, ConstLinear] = {}
            rest = rest.strip()
            if rest:
                for entry in rest.split(";"):
                    m = entry_re.match(entry.strip())
                    if not m:
                        raise FormatError(f"line {lineno}: bad entry {entry.strip()!r}")
                    piece[int(m.group(1))] = ConstLinear.from_text(m.group(2))
            pieces.append(piece)
        if not pieces:
            raise FormatError("no pieces found")
        if x_end is None:
            x_end = Fraction(len(pieces))
        try:
            return cls(x_end, pieces)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# module-level operation surface
# ---------------------------------------------------------------------------

def eval_at(f: PiecewiseLaurent, x, side: Side = Side.POINT) -> ConstLinear:
    return f.eval_at(x, side)


def integrate(f: PiecewiseLaurent, x, weight="1") -> ConstLinear:
    return f.integrate(x, weight)


def combine(f: PiecewiseLaurent, g: PiecewiseLaurent, s, t) -> PiecewiseLaurent:
    """Pointwise s*f + t*g on a shared breakpoint layout."""
    if f.X != g.X or f.npieces != g.npieces:
        raise ValueError("combine requires a shared domain end and piece layout")
    s = as_gaussian(s)
    t = as_gaussian(t)
    pieces = []
    for pf, pg in zip(f.pieces, g.pieces):
        cur: Dict[int, ConstLinear] = {}
        for e in set(pf) | set(pg):
            c = ConstLinear.zero()
            if e in pf:
                c = c + pf[e] * s
            if e in pg:
                c = c + pg[e] * t
            cur[e] = c
        pieces.append(cur)
    return PiecewiseLaurent(f.X, pieces,
                            weighted_integrand=f.weighted_integrand or g.weighted_integrand)


def shift_exponent(f: PiecewiseLaurent, by: int) -> PiecewiseLaurent:
    """Multiply by t^by: shift every exponent, keeping the legal range."""
    pieces = []
    for piece in f.pieces:
        cur = {}
        for e, c in piece.items():
            if not EXP_MIN <= e + by <= EXP_MAX:
                raise ValueError(f"exponent {e}+{by} leaves [{EXP_MIN}, {EXP_MAX}]")
            cur[e + by] = c
        pieces.append(cur)
    weighted = any(e < 0 for e in pieces[0]) if pieces else False
    return PiecewiseLaurent(f.X, pieces, weighted_integrand=weighted)


def constant_function(X, value=1, npieces: Optional[int] = None) -> PiecewiseLaurent:
    X = Fraction(X)
    n = _full_pieces(X) if npieces is None else npieces
    c = value if isinstance(value, ConstLinear) else ConstLinear.scalar(value)
    return PiecewiseLaurent(X, [{0: c} for _ in range(n)])


def monomial(X, exponent: int, coeff=1, npieces: Optional[int] = None) -> PiecewiseLaurent:
    """c * t^exponent on all of (0, X]."""
    X = Fraction(X)
    n = _full_pieces(X) if npieces is None else npieces
    c = coeff if isinstance(coeff, ConstLinear) else ConstLinear.scalar(coeff)
    weighted = exponent < 0
    return PiecewiseLaurent(X, [{exponent: c} for _ in range(n)],
                            weighted_integrand=weighted)
