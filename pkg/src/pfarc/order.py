"""Derived-Pfaffian sequences, their decorated lifts, and the orders on both.

Sequences are stored the way they are written: ``JSeq((4, 3, 2, 1), n)`` is
``d^n|4,3,2,1|`` and ``ESeq(((2, 1), (1, 0)))`` is ``|(2,1),(1,0)|``.
Positions are counted from the right, so position 1 is the last entry;
use :meth:`JSeq.row` / :meth:`ESeq.pos` rather than raw indexing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple

from .pfaffian import compositions

__all__ = [
    "JSeq",
    "ESeq",
    "norm",
    "j_key",
    "j_prec",
    "pair_le",
    "e_partial_le",
    "e_key",
    "e_total_prec",
    "enumerate_E",
    "shift_deficiency",
    "L",
    "is_greater",
    "largest_dominating",
    "all_jseqs",
]

Pair = Tuple[int, int]


@dataclass(frozen=True, order=False)
class JSeq:
    """``d^n|u_h,...,u_1|``.  Odd sizes are accepted so that truncations
    ``||E(s)||`` can be compared; Pfaffians themselves need even size."""

    rows: Tuple[int, ...]
    n: int = 0

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if any(a <= b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"rows {rows} must be written strictly decreasing")
        if rows and rows[-1] < 1:
            raise ValueError("row indices start at 1")
        if self.n < 0:
            raise ValueError("weight must be non-negative")

    @classmethod
    def of(cls, rows: Iterable[int], n: int = 0) -> "JSeq":
        """Build from rows in any order (no sign is recorded)."""
        return cls(tuple(sorted(rows, reverse=True)), n)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def wt(self) -> int:
        return self.n

    def row(self, i: int) -> int:
        """``u_i``, counting from the right starting at 1."""
        return self.rows[-i]

    @property
    def ascending(self) -> Tuple[int, ...]:
        return self.rows[::-1]

    def __str__(self):
        return f"d^{self.n}|{','.join(map(str, self.rows))}|"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "JSeq":
        m = re.fullmatch(r"\s*(?:d\^(\d+))?\|([\d,\s]*)\|\s*", text)
        if not m:
            raise ValueError(f"cannot parse JSeq literal {text!r}")
        n = int(m.group(1) or 0)
        body = m.group(2).strip()
        rows = tuple(int(t) for t in body.split(",")) if body else ()
        return cls(rows, n)


@dataclass(frozen=True)
class ESeq:
    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple((int(u), int(k)) for u, k in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        us = [u for u, _ in pairs]
        if len(set(us)) != len(us):
            raise ValueError(f"rows of {pairs} are not distinct")
        if any(k < 0 for _, k in pairs) or any(u < 1 for u in us):
            raise ValueError(f"invalid pairs {pairs}")

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def wt(self) -> int:
        return sum(k for _, k in self.pairs)

    def pos(self, i: int) -> Pair:
        return self.pairs[-i]

    def truncate(self, s: int) -> "ESeq":
        """``E(s)``: the last ``s`` pairs."""
        if s > self.size:
            raise ValueError(f"cannot truncate size {self.size} to {s}")
        return ESeq(self.pairs[self.size - s:])

    def __str__(self):
        return "|" + ",".join(f"({u},{k})" for u, k in self.pairs) + "|"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "ESeq":
        t = text.strip()
        if not (t.startswith("|") and t.endswith("|")):
            raise ValueError(f"cannot parse ESeq literal {text!r}")
        pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", t)
        rest = re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)", "", t[1:-1]).replace(",", "").strip()
        if rest:
            raise ValueError(f"cannot parse ESeq literal {text!r}")
        return cls(tuple((int(u), int(k)) for u, k in pairs))


def norm(e: ESeq) -> JSeq:
    return JSeq.of((u for u, _ in e.pairs), e.wt)


# -- orders ------------------------------------------------------------------

def j_key(j: JSeq):
    """Sort key of the total order on sequences: bigger size first, then
    lighter weight, then the written word."""
    return (-j.size, j.n, j.rows)


def j_prec(a: JSeq, b: JSeq) -> bool:
    return j_key(a) < j_key(b)


def pair_le(a: Pair, b: Pair) -> bool:
    """Pairs compare by weight first, then by row."""
    return (a[1], a[0]) <= (b[1], b[0])


def e_partial_le(a: ESeq, b: ESeq) -> bool:
    if b.size > a.size:
        return False
    return all(pair_le(a.pos(i), b.pos(i)) for i in range(1, b.size + 1))


def e_key(e: ESeq):
    return (-e.size, e.wt, tuple((k, u) for u, k in e.pairs))


def e_total_prec(a: ESeq, b: ESeq) -> bool:
    return e_key(a) < e_key(b)


def enumerate_E(j: JSeq) -> List[ESeq]:
    """All lifts of ``j``: row permutations (lexicographic in position) times
    weight compositions (colex)."""
    out = []
    for perm in permutations(j.rows):
        for comp in compositions(j.n, j.size):
            out.append(ESeq(tuple(zip(perm, comp))))
    return out


# -- domination --------------------------------------------------------------

def shift_deficiency(upper: Sequence[int], lower: Sequence[int]) -> int:
    """Smallest ``i0`` with ``upper[i] >= lower[i - i0]`` for ``i >= i0``
    (both sorted ascending, equal length, 0-based).

    Equivalently the number of entries of ``lower`` left unmatched by a
    maximum matching into ``upper`` along ``>=``.
    """
    h = len(upper)
    for i0 in range(h + 1):
        if all(upper[i] >= lower[i - i0] for i in range(i0, h)):
            return i0
    return h  # unreachable: i0 == h is vacuous


def _check_sizes(e: ESeq, j: JSeq):
    if j.size > e.size:
        raise ValueError(f"size of {j} exceeds size of {e}")


def L(e: ESeq, j: JSeq) -> int:
    """Shift needed for ``j``'s rows to dominate the sorted rows of ``E(sz j)``."""
    _check_sizes(e, j)
    tail = sorted(u for u, _ in e.truncate(j.size).pairs)
    return shift_deficiency(j.ascending, tail)


def is_greater(j: JSeq, e: ESeq) -> bool:
    """Whether some lift of ``j`` dominates ``e``.

    Each position of ``E(h')`` left unmatched by the rows of ``j`` must be
    paid for by one extra unit of weight, hence
    ``wt(j) - wt(E(h')) >= L(e, j)``.
    """
    _check_sizes(e, j)
    return j.n - e.truncate(j.size).wt >= L(e, j)


def _feasible(rows: Sequence[int], weight: int, targets: Sequence[Pair]) -> bool:
    if not targets:
        return weight == 0
    slack = weight - sum(k for _, k in targets)
    if slack < 0:
        return False
    return slack >= shift_deficiency(sorted(rows), sorted(u for u, _ in targets))


def largest_dominating(e: ESeq, j: JSeq) -> Optional[ESeq]:
    """The largest lift of ``j`` (under the total order) dominating ``e``.

    Built position by position from the left: each pair is the largest one
    dominating the corresponding pair of ``e`` that still leaves a feasible
    completion.  Returns None when no lift of ``j`` dominates ``e``.
    """
    _check_sizes(e, j)
    targets = e.truncate(j.size).pairs
    rows = list(j.rows)
    weight = j.n
    if not _feasible(rows, weight, targets):
        return None
    out = []
    for idx, (u, k) in enumerate(targets):
        rest = targets[idx + 1:]
        chosen = None
        for kk in range(weight, k - 1, -1):
            for r in rows:  # rows stay sorted descending
                if kk == k and r < u:
                    break
                left = [x for x in rows if x != r]
                if _feasible(left, weight - kk, rest):
                    chosen = (r, kk)
                    break
            if chosen:
                break
        if chosen is None:  # pragma: no cover - guarded by the feasibility test above
            return None
        out.append(chosen)
        rows.remove(chosen[0])
        weight -= chosen[1]
    return ESeq(tuple(out))


def all_jseqs(p: int, sizes: Iterable[int], max_weight: int) -> List[JSeq]:
    """Every sequence over rows 1..p with the given sizes and weight <= max_weight,
    sorted by the total order."""
    from itertools import combinations

    out = []
    for s in sizes:
        for rows in combinations(range(1, p + 1), s):
            for n in range(max_weight + 1):
                out.append(JSeq(rows[::-1], n))
    out.sort(key=j_key)
    return out
