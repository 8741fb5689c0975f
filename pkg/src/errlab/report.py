"""Per-case verification records and their CSV form."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Union

from .exactnum import ConstLinear

__all__ = ["ReportRow", "VerificationReport"]


@dataclass(frozen=True)
class ReportRow:
    identity: str
    x: Fraction
    residual: Union[ConstLinear, float]
    exact_zero: bool


class VerificationReport:
    """Ordered list of (identity, x, residual, exact-zero) records."""

    def __init__(self):
        self.rows: List[ReportRow] = []

    def add(self, identity: str, x, residual, exact_zero: Optional[bool] = None) -> None:
        if exact_zero is None:
            exact_zero = residual.is_zero()
        self.rows.append(ReportRow(identity, Fraction(x), residual, exact_zero))

    def extend(self, other: "VerificationReport") -> None:
        self.rows.extend(other.rows)

    @property
    def all_pass(self) -> bool:
        return all(r.exact_zero for r in self.rows)

    def first_failure(self) -> Optional[ReportRow]:
        for r in self.rows:
            if not r.exact_zero:
                return r
        return None

    def write_csv(self, target) -> None:
        """Write `identity,x,residual,exact_zero` rows; target is a path or
        an open text stream."""
        if hasattr(target, "write"):
            self._write(target)
        else:
            with Path(target).open("w", newline="") as fh:
                self._write(fh)

    def _write(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["identity", "x", "residual", "exact_zero"])
        for r in self.rows:
            res = r.residual.to_text() if isinstance(r.residual, ConstLinear) else repr(r.residual)
            writer.writerow([r.identity, str(r.x), res, "true" if r.exact_zero else "false"])

    def __len__(self) -> int:
        return len(self.rows)
