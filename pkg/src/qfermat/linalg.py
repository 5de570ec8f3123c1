"""Exact sparse Gaussian elimination over any field-like scalar type.

Works uniformly over Fraction and CycNum (anything with exact +, -, *,
truthiness, and either an inv() method or true division).  Rows are sparse
dicts mapping column index to a nonzero value.  Pivot rows are kept fully
reduced against each other (reduced row echelon form), with the pivot
chosen as the smallest column for determinism; Fraction's automatic gcd
normalization keeps coefficient growth controlled on the systems this
package builds, which are near-diagonal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional

__all__ = ["ExactRREF", "rank", "kernel_basis"]

Row = Dict[int, object]


def _inv(value):
    if hasattr(value, "inv"):
        return value.inv()
    return 1 / value


class ExactRREF:
    """Incremental reduced row echelon form over an exact field."""

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        """Residue of a row after eliminating all current pivot columns."""
        row = {c: v for c, v in row.items() if v}
        hits = [c for c in row if c in self.pivots]
        for col in hits:
            f = row.pop(col)
            for c2, v2 in self.pivots[col].items():
                if c2 == col:
                    continue
                cur = row.get(c2)
                nv = (cur - f * v2) if cur is not None else -(f * v2)
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
        return row

    def add_row(self, row: Row) -> Optional[int]:
        """Insert a row; returns its pivot column, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        col = min(row)
        inv = _inv(row[col])
        norm = {c: v * inv for c, v in row.items()}
        # back-substitute so existing pivot rows stay reduced
        for prow in self.pivots.values():
            if col in prow:
                f = prow.pop(col)
                for c2, v2 in norm.items():
                    if c2 == col:
                        continue
                    cur = prow.get(c2)
                    nv = (cur - f * v2) if cur is not None else -(f * v2)
                    if nv:
                        prow[c2] = nv
                    else:
                        prow.pop(c2, None)
        self.pivots[col] = norm
        return col

    def contains(self, row: Row) -> bool:
        """True iff the row lies in the span of the inserted rows."""
        return not self.reduce(row)


def rank(rows: Iterable[Row]) -> int:
    rref = ExactRREF()
    for row in rows:
        rref.add_row(row)
    return rref.rank


def kernel_basis(rows: Iterable[Row], ncols: int, one=Fraction(1)) -> List[Row]:
    """Basis of the right kernel of the row system, one vector per free column.

    Vectors are sparse dicts; the value `one` fixes the scalar type of the
    free coordinate (Fraction by default, pass the field's identity for
    other scalars)."""
    rref = ExactRREF()
    for row in rows:
        rref.add_row(row)
    basis: List[Row] = []
    for free in range(ncols):
        if free in rref.pivots:
            continue
        vec: Row = {free: one}
        for col, prow in rref.pivots.items():
            v = prow.get(free)
            if v is not None and v:
                vec[col] = -(v * one)
        basis.append(vec)
    return basis
