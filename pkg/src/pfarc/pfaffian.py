"""Pfaffians of diagonal minors of the generic skew-symmetric matrix and their
normalized jet derivatives.

Row lists passed to :func:`jseq_value` are written the way sequences are
printed, largest index first: ``(4, 3, 2, 1)`` is the canonical ordering of
the minor on rows ``{1, 2, 3, 4}``.  :func:`pfaffian` and
:func:`pfaffian_derivative` take the rows ascending.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from .ring import ONE, Poly, XGen, mono_from_factors

__all__ = [
    "perfect_matchings",
    "compositions",
    "permutation_sign",
    "pfaffian",
    "pfaffian_derivative",
    "jseq_value",
    "check_minor",
]


def permutation_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq`` ascending (entries distinct)."""
    s = 1
    seq = list(seq)
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                s = -s
    return s


def perfect_matchings(items: Tuple[int, ...]) -> Iterator[Tuple[int, List[Tuple[int, int]]]]:
    """Yield ``(sign, pairs)``; the smallest unmatched element is paired first.

    The sign is that of the permutation taking ``items`` to the concatenation
    of the pairs.
    """
    if not items:
        yield 1, []
        return
    first, rest = items[0], items[1:]
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        # moving `partner` next to `first` costs j transpositions
        s = -1 if j % 2 else 1
        for sub_sign, sub in perfect_matchings(remaining):
            yield s * sub_sign, [(first, partner)] + sub


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of ``n`` into ``parts`` non-negative parts, colex order."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for last in range(n + 1):
        for head in compositions(n - last, parts - 1):
            yield head + (last,)


def check_minor(rows: Sequence[int], p: int | None = None) -> Tuple[int, ...]:
    rows = tuple(rows)
    if len(rows) % 2:
        raise ValueError(f"minor {rows} has odd size")
    if any(a >= b for a, b in zip(rows, rows[1:])):
        raise ValueError(f"minor rows {rows} are not strictly increasing")
    if rows and rows[0] < 1:
        raise IndexError(f"row index {rows[0]} must be positive")
    if p is not None and rows and rows[-1] > p:
        raise IndexError(f"row index {rows[-1]} exceeds p={p}")
    return rows


@lru_cache(maxsize=None)
def _pf_terms(rows: Tuple[int, ...], n: int) -> Tuple[Tuple[tuple, int], ...]:
    l = len(rows) // 2
    out: dict = {}
    matchings = list(perfect_matchings(rows))
    for weights in compositions(n, l):
        for sign, pairs in matchings:
            m = mono_from_factors(XGen(w, a, b) for w, (a, b) in zip(weights, pairs))
            out[m] = out.get(m, 0) + sign
    return tuple((m, c) for m, c in out.items() if c)


def pfaffian_derivative(rows: Sequence[int], n: int, p: int | None = None) -> Poly:
    """``dbar^n`` of the Pfaffian on the ascending ``rows``.

    Summed directly over perfect matchings and weight compositions, so every
    coefficient is ``+-1`` before collection.
    """
    rows = check_minor(rows, p)
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    pp = p if p is not None else (rows[-1] if rows else 0)
    if not rows:
        return Poly("X", pp, 0, {ONE: 1} if n == 0 else {})
    return Poly._raw("X", pp, 0, dict(_pf_terms(rows, n)))


def pfaffian(rows: Sequence[int], p: int | None = None) -> Poly:
    return pfaffian_derivative(rows, 0, p)


def jseq_value(rows: Sequence[int], n: int, p: int | None = None) -> Poly:
    """Value of ``dbar^n |rows|`` for rows in written (descending) order.

    Repeated rows give 0; otherwise the result is the sign of the reordering
    times the canonical derivative.
    """
    rows = tuple(rows)
    if len(rows) % 2:
        raise ValueError(f"sequence {rows} has odd length")
    pp = p if p is not None else (max(rows) if rows else 0)
    if len(set(rows)) < len(rows):
        return Poly("X", pp)
    # descending is canonical: count pairs out of descending order
    sign = permutation_sign([-r for r in rows])
    return pfaffian_derivative(tuple(sorted(rows)), n, pp).scale(sign)
