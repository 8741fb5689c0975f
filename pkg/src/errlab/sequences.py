"""Sieves and constructors for arithmetical sequences.

Covers the Moebius and Euler-totient sieves, real Dirichlet characters
realized by the Kronecker symbol on fundamental discriminants, character
twists, the Dirichlet convolution b(n) = sum_{d|n} a(d) * (n/d), exact
summatory sums with the right-continuous convention, and float estimates of
the series constants A2 = sum a(n)/n^2 and A1 = sum a(n)/n with certified
error bounds.

Integer-valued sequences are stored as numpy arrays and promoted to exact
scalars lazily; file-loaded sequences may carry Fraction or GaussianRational
values throughout.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import lfunc
from .errors import (CapacityError, DomainError, FormatError, PrecisionError,
                     UncertifiableSeriesError)
from .exactnum import GaussianRational, as_gaussian

__all__ = [
    "ArithSequence",
    "CharacterSpec",
    "MAX_SIEVE",
    "mobius_sieve",
    "totient_sieve",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "kronecker_character",
    "twist",
    "convolve_id",
    "summatory",
    "summatory_via_floor_identity",
    "floor_sum",
    "numeric_constants",
    "read_sequence_csv",
    "write_sequence_csv",
    "read_character_csv",
    "write_character_csv",
]

#: Memory budget guard: sieves refuse ranges beyond this.
MAX_SIEVE = 1 << 24

Value = Union[int, Fraction, GaussianRational]


class ArithSequence:
    """Exact values a(1..N) with metadata.

    ``magnitude_bound`` is a rational B with |a(n)| <= B for every n, used for
    series tail bounds.  ``known_A1`` declares the exact value of
    sum_{n>=1} a(n)/n when that sum is known; for the Moebius function it is 0.
    """

    def __init__(self, name: str, values, magnitude_bound: Optional[Fraction] = None,
                 known_A1: Optional[GaussianRational] = None):
        self.name = name
        if isinstance(values, np.ndarray):
            # index 0 is a padding slot
            self._arr = values.astype(np.int64, copy=False)
            self._list = None
            self.N = len(values) - 1
        else:
            vals = list(values)
            self._arr = None
            self._list = [0] + vals
            self.N = len(vals)
        self.magnitude_bound = None if magnitude_bound is None else Fraction(magnitude_bound)
        self.known_A1 = known_A1
        self._prefix = None

    def value(self, n: int) -> Value:
        if not 1 <= n <= self.N:
            raise DomainError(f"index {n} outside 1..{self.N}")
        if self._arr is not None:
            return int(self._arr[n])
        return self._list[n]

    def int_array(self) -> Optional[np.ndarray]:
        """The raw int64 array (index 0 padding) when integer-backed, else None."""
        return self._arr

    def prefix_sum(self, k: int) -> Value:
        """sum_{n<=k} a(n), exact; k = 0 gives 0."""
        if not 0 <= k <= self.N:
            raise DomainError(f"index {k} outside 0..{self.N}")
        if self._prefix is None:
            if self._arr is not None:
                self._prefix = np.concatenate(([0], np.cumsum(self._arr[1:], dtype=np.int64)))
            else:
                self._prefix = [0] + list(accumulate(self._list[1:]))
        v = self._prefix[k]
        return int(v) if self._arr is not None else v

    def check_magnitude_bound(self) -> bool:
        """Exact check of |a(n)| <= magnitude_bound for all stored n."""
        if self.magnitude_bound is None:
            return True
        b2 = self.magnitude_bound * self.magnitude_bound
        for n in range(1, self.N + 1):
            if as_gaussian(self.value(n)).abs2() > b2:
                return False
        return True

    def __repr__(self):
        return f"ArithSequence({self.name!r}, N={self.N})"


@dataclass(frozen=True)
class CharacterSpec:
    """A real Dirichlet character mod q as a period table chi(0..q-1)."""

    q: int
    table: tuple

    def chi(self, n: int) -> int:
        return self.table[n % self.q]

    def validate(self) -> None:
        """Raise ValueError unless the table is a non-principal real character."""
        q, t = self.q, self.table
        if q < 3:
            raise ValueError("modulus must be at least 3")
        if len(t) != q:
            raise ValueError("table length must equal the modulus")
        if any(v not in (-1, 0, 1) for v in t):
            raise ValueError("values must lie in {-1, 0, +1}")
        for n in range(q):
            if (t[n] == 0) != (math.gcd(n, q) > 1):
                raise ValueError(f"chi({n}) must vanish exactly on gcd(n, q) > 1")
        for a in range(q):
            for b in range(q):
                if t[(a * b) % q] != t[a] * t[b]:
                    raise ValueError(f"multiplicativity fails at ({a}, {b})")
        if sum(t) != 0:
            raise ValueError("character is principal (table does not sum to 0)")


def _check_capacity(n: int) -> None:
    if n > MAX_SIEVE:
        raise CapacityError(f"range {n} exceeds the sieve budget {MAX_SIEVE}")
    if n < 1:
        raise ValueError("range must be positive")


def _prime_mask(n: int) -> np.ndarray:
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return mask


def mobius_sieve(n: int) -> ArithSequence:
    """mu(1..n); squarefree sign by parity of prime factors, 0 otherwise."""
    _check_capacity(n)
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    primes = np.nonzero(_prime_mask(n))[0]
    for p in primes:
        mu[p::p] *= -1
        sq = p * p
        if sq <= n:
            mu[sq::sq] = 0
    return ArithSequence("mu", mu, magnitude_bound=Fraction(1),
                         known_A1=GaussianRational(0))


def totient_sieve(n: int) -> ArithSequence:
    """phi(1..n), the count of residues coprime to n."""
    _check_capacity(n)
    phi = np.arange(n + 1, dtype=np.int64)
    primes = np.nonzero(_prime_mask(n))[0]
    for p in primes:
        phi[p::p] -= phi[p::p] // p
    phi[0] = 0
    return ArithSequence("phi", phi)


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a|n) for arbitrary integers, n >= 0 here."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1 if v % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    a %= n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1) or abs(d) < 3:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker_character(d: int) -> CharacterSpec:
    """The real non-principal character mod |d| attached to a fundamental
    discriminant d, as a validated period table."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant with |d| >= 3")
    q = abs(d)
    chi = CharacterSpec(q, tuple(kronecker_symbol(d, r) for r in range(q)))
    chi.validate()
    return chi


def twist(a: ArithSequence, chi: CharacterSpec) -> ArithSequence:
    """Pointwise product a(n) * chi(n mod q); the magnitude bound survives."""
    name = f"{a.name}*chi({chi.q})"
    arr = a.int_array()
    if arr is not None:
        factors = np.asarray(chi.table, dtype=np.int64)[np.arange(a.N + 1) % chi.q]
        return ArithSequence(name, arr * factors, magnitude_bound=a.magnitude_bound)
    vals = [a.value(n) * chi.chi(n) for n in range(1, a.N + 1)]
    return ArithSequence(name, vals, magnitude_bound=a.magnitude_bound)


def convolve_id(a: ArithSequence, upto: Optional[int] = None) -> ArithSequence:
    """b(n) = sum_{d|n} a(d) * (n/d) for n <= upto, by divisor passes."""
    n = a.N if upto is None else min(upto, a.N)
    arr = a.int_array()
    if arr is not None:
        out = np.zeros(n + 1, dtype=np.int64)
        for d in range(1, n + 1):
            v = int(arr[d])
            if v:
                out[d::d] += v * np.arange(1, n // d + 1, dtype=np.int64)
        return ArithSequence(f"({a.name})*Id", out)
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        v = a.value(d)
        if isinstance(v, GaussianRational) and v.is_zero():
            continue
        if not isinstance(v, GaussianRational) and not v:
            continue
        for q, m in enumerate(range(d, n + 1, d), start=1):
            out[m] = out[m] + v * q
    return ArithSequence(f"({a.name})*Id", out[1:])


def _floor_div(x: Fraction, d: int) -> int:
    return x.numerator // (x.denominator * d)


def summatory(b: ArithSequence, x) -> GaussianRational:
    """Exact sum_{n<=x} b(n), right-continuous: integer x includes the term n=x."""
    x = Fraction(x)
    if x < 0 or x > b.N:
        raise DomainError(f"summatory point {x} outside 0..{b.N}")
    return as_gaussian(b.prefix_sum(math.floor(x)))


def summatory_via_floor_identity(a: ArithSequence, x) -> GaussianRational:
    """sum_{d<=x} a(d) * floor(x/d) * (floor(x/d)+1) / 2, exact.

    Equals summatory(convolve_id(a), x) by exchanging the order of summation.
    """
    x = Fraction(x)
    if x < 0 or x > a.N:
        raise DomainError(f"evaluation point {x} outside 0..{a.N}")
    total = GaussianRational(0)
    for d in range(1, math.floor(x) + 1):
        m = _floor_div(x, d)
        total = total + as_gaussian(a.value(d)) * Fraction(m * (m + 1), 2)
    return total


def floor_sum(a: ArithSequence, x) -> GaussianRational:
    """sum_{d<=x} a(d) * floor(x/d), exact."""
    x = Fraction(x)
    if x < 0 or x > a.N:
        raise DomainError(f"evaluation point {x} outside 0..{a.N}")
    arr = a.int_array()
    k = math.floor(x)
    if arr is not None and k:
        d = np.arange(1, k + 1, dtype=np.int64)
        vals = x.numerator // (d * x.denominator)
        return GaussianRational(int(np.dot(arr[1:k + 1], vals)))
    total = GaussianRational(0)
    for d in range(1, k + 1):
        total = total + as_gaussian(a.value(d)) * _floor_div(x, d)
    return total


def _partial_a2(a: ArithSequence) -> complex:
    """Float partial sum of a(n)/n^2 over the stored range, ascending n."""
    arr = a.int_array()
    if arr is not None:
        terms = [int(arr[n]) / (n * n) for n in range(1, a.N + 1)]
        return complex(math.fsum(terms))
    re = []
    im = []
    for n in range(1, a.N + 1):
        g = as_gaussian(a.value(n))
        nn = n * n
        re.append(g.re / nn)
        im.append(g.im / nn)
    return complex(math.fsum(re), math.fsum(im))


def numeric_constants(a: ArithSequence, chi: Optional[CharacterSpec] = None,
                      precision_target: float = 1e-6, require_a1: bool = True):
    """Float values (a2, a1, (a2_bound, a1_bound)) for the series constants.

    a2 is the partial sum of a(n)/n^2 over the stored range with the tail
    bound B/N from |a(n)| <= B.  a1 comes from ``known_A1`` when declared,
    else from 1/L(1, chi) for a Moebius twist by ``chi``; a bare sequence has
    no certificate of conditional convergence and raises.
    """
    if precision_target <= 0:
        raise ValueError("precision target must be positive")
    bound = a.magnitude_bound
    if bound is None and chi is not None:
        bound = Fraction(1)  # Moebius-twist convention: |mu(n)chi(n)| <= 1
    if bound is None and a.known_A1 is None:
        raise UncertifiableSeriesError(
            "no magnitude bound and no character structure; series tails cannot be certified")
    if bound is None:
        raise UncertifiableSeriesError(
            "magnitude bound required to certify the a2 tail")
    a2_bound = float(bound) / a.N
    if a2_bound > precision_target:
        raise PrecisionError(
            f"a2 tail bound {a2_bound:.3g} exceeds the target {precision_target:.3g}; "
            f"extend the sieve range (currently {a.N})")
    a2 = _partial_a2(a)

    if a.known_A1 is not None:
        return a2, complex(a.known_A1), (a2_bound, 0.0)
    if chi is not None:
        lval, lerr = lfunc.dirichlet_l(1.0, chi)
        if abs(lval) <= lerr:
            raise PrecisionError("L(1, chi) evaluation is not separated from zero")
        a1 = 1.0 / lval
        a1_bound = lerr / (abs(lval) * (abs(lval) - lerr))
        if a1_bound > precision_target:
            raise PrecisionError(
                f"a1 bound {a1_bound:.3g} exceeds the target {precision_target:.3g}")
        return a2, complex(a1), (a2_bound, a1_bound)
    if require_a1:
        raise UncertifiableSeriesError(
            "a1 requested but the sequence declares no known value and has no "
            "character structure (conditional convergence not certifiable)")
    return a2, None, (a2_bound, float("inf"))


# ---------------------------------------------------------------------------
# CSV ingestion and emission
# ---------------------------------------------------------------------------

def _parse_value(text: str) -> Value:
    g = GaussianRational.from_text(text)
    if g.im:
        return g
    f = g.re
    return int(f) if f.denominator == 1 else f


def read_sequence_csv(path):
    """Load a sequence from CSV.

    Header ``n,value`` yields (a, None); header ``n,a,b`` yields the pair
    (a, b) with b taken as supplied (verification will exercise it).
    Indices must be contiguous from 1.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FormatError(f"{path}: empty file")
        header = [h.strip() for h in header]
        if header == ["n", "value"]:
            pair = False
        elif header == ["n", "a", "b"]:
            pair = True
        else:
            raise FormatError(f"{path}: header must be 'n,value' or 'n,a,b'")
        avals, bvals = [], []
        for i, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise FormatError(f"{path}: row {i} has {len(row)} fields")
            if int(row[0]) != i:
                raise FormatError(f"{path}: indices must be contiguous from 1 (row {i})")
            avals.append(_parse_value(row[1]))
            if pair:
                bvals.append(_parse_value(row[2]))
    if not avals:
        raise FormatError(f"{path}: no data rows")
    a = ArithSequence(path.stem, avals)
    b = ArithSequence(path.stem + ".b", bvals) if pair else None
    return a, b


def write_sequence_csv(path, a: ArithSequence) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "value"])
        for n in range(1, a.N + 1):
            writer.writerow([n, as_gaussian(a.value(n)).to_text()])


def read_character_csv(path) -> CharacterSpec:
    """Load a character table from CSV ``residue,value`` and validate it."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["residue", "value"]:
            raise FormatError(f"{path}: header must be 'residue,value'")
        table = []
        for i, row in enumerate(reader):
            if int(row[0]) != i:
                raise FormatError(f"{path}: residues must run 0..q-1 in order")
            table.append(int(row[1]))
    chi = CharacterSpec(len(table), tuple(table))
    try:
        chi.validate()
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return chi


def write_character_csv(path, chi: CharacterSpec) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["residue", "value"])
        for r, v in enumerate(chi.table):
            writer.writerow([r, v])
