"""Exact sparse linear algebra over Z and Q.

The elimination kernel is the compiled ``_kernel`` extension when it has been
built, else the pure-Python ``_kernel_py``.  Set ``PFARC_PURE_PYTHON=1`` to
force the fallback.
"""
from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import _kernel_py

if os.environ.get("PFARC_PURE_PYTHON"):
    kernel = _kernel_py
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        kernel = _kernel_py

BACKEND = "cython" if kernel is not _kernel_py else "python"

__all__ = ["Echelon", "sparse", "BACKEND", "kernel", "rank"]

Row = Tuple[List[int], List[int]]


def sparse(entries: Dict[int, int] | Iterable[Tuple[int, int]]) -> Row:
    """Sorted ``(cols, vals)`` from a mapping or pairs, zeros dropped."""
    items = entries.items() if isinstance(entries, dict) else entries
    pairs = sorted((c, v) for c, v in items if v)
    return [c for c, _ in pairs], [v for _, v in pairs]


class Echelon:
    """Incrementally maintained echelon form of a set of integer row vectors.

    In ``lattice`` mode the pivots generate exactly the Z-span of the rows
    added so far, and each pivot can carry a tracking row expressing it in
    terms of tagged inputs.  Otherwise elimination is fraction-free over Q
    and only the rank and the Q-span are meaningful.
    """

    def __init__(self, lattice: bool = False, backend=None):
        self.lattice = lattice
        self.pivots: dict = {}
        self._k = backend or kernel

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Row, track: Optional[Row] = None) -> bool:
        cols, vals = row
        if not cols:
            return False
        tcols, tvals = track if track is not None else ([], [])
        return self._k.insert(self.pivots, list(cols), list(vals), list(tcols), list(tvals), self.lattice)

    def extend(self, rows: Iterable[Row]) -> int:
        for r in rows:
            self.add(r)
        return self.rank

    def pivot_entries(self) -> Dict[int, int]:
        return {c: p[1][0] for c, p in self.pivots.items()}

    def is_unimodular(self, ncols: int) -> bool:
        """Full rank with all pivots +-1, i.e. the row lattice is all of Z^n."""
        if not self.lattice:
            raise ValueError("lattice information requires lattice mode")
        if self.rank != ncols:
            return False
        return all(abs(p[1][0]) == 1 for p in self.pivots.values())

    def reduce(self, row: Row, exact: bool = False):
        """``(residual, quotients)`` of a row reduced by leading columns."""
        cols, vals, quot = self._k.reduce(self.pivots, list(row[0]), list(row[1]), exact)
        return (cols, vals), quot

    def contains(self, row: Row) -> bool:
        """Membership in the Q-span (or the Z-span in lattice mode)."""
        (cols, _), _ = self.reduce(row, exact=self.lattice)
        return not cols

    def solve(self, row: Row) -> Tuple[Dict[int, Fraction | int], Row]:
        """Express a row through the tracking rows of the pivots.

        Returns ``(coefficients, residual)`` with ``row - sum c_t * tagged_t``
        lying in the span of the untracked inputs whenever the residual is
        empty.  Coefficients are ints when integral, else Fractions.
        """
        residual, quot = self.reduce(row, exact=False)
        acc: Dict[int, Fraction | int] = {}
        for c, q in quot:
            tc, tv = self.pivots[c][2], self.pivots[c][3]
            for t, v in zip(tc, tv):
                acc[t] = acc.get(t, 0) + q * v
        out = {}
        for t, v in acc.items():
            if v:
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = int(v)
                out[t] = v
        return out, residual


def rank(rows: Sequence[Row]) -> int:
    e = Echelon()
    return e.extend(rows)
