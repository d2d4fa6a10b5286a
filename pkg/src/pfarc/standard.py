"""Standard monomials: the canonical lift of a product of derived Pfaffians
and enumeration by bidegree.

A sequence of size ``s`` and weight ``n`` evaluates to a polynomial of
x-degree ``s/2`` and weight ``n``; products are graded by the sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .order import ESeq, JSeq, all_jseqs, largest_dominating
from .pfaffian import pfaffian_derivative
from .ring import Poly

__all__ = [
    "StandardProduct",
    "top_lift",
    "canonical_lift",
    "is_standard",
    "enumerate_standard",
    "jseq_poly",
    "product_poly",
]


@dataclass(frozen=True)
class StandardProduct:
    js: Tuple[JSeq, ...]
    es: Tuple[ESeq, ...]

    @property
    def degree(self) -> int:
        return sum(j.size for j in self.js) // 2

    @property
    def weight(self) -> int:
        return sum(j.n for j in self.js)

    def value(self, p: int) -> Poly:
        return product_poly(self.js, p)

    def __str__(self):
        return "".join(map(str, self.js)) or "1"

    def to_json(self):
        return {"js": [str(j) for j in self.js], "es": [str(e) for e in self.es]}


def top_lift(j: JSeq) -> ESeq:
    """The largest lift: all the weight on the largest row."""
    if not j.rows:
        return ESeq(())
    pairs = [(j.rows[0], j.n)] + [(u, 0) for u in j.rows[1:]]
    return ESeq(tuple(pairs))


def canonical_lift(js: Sequence[JSeq]) -> Optional[List[ESeq]]:
    """Greedy lift ``E_1 ... E_m``, or None if the product is not standard."""
    js = list(js)
    if not js:
        return []
    if js[0].size == 0 and js[0].n > 0:
        return None
    out = [top_lift(js[0])]
    for j in js[1:]:
        prev = out[-1]
        if j.size > prev.size:
            return None
        nxt = largest_dominating(prev, j)
        if nxt is None:
            return None
        out.append(nxt)
    return out


def is_standard(js: Sequence[JSeq]) -> bool:
    return canonical_lift(js) is not None


def enumerate_standard(p: int, h_max: int, d: int, w: int) -> List[StandardProduct]:
    """All standard products of sequences of size 2..h_max over rows 1..p with
    total x-degree ``d`` and weight ``w``.

    The empty product is the only one at ``(0, 0)``.  Factors come out in
    non-decreasing sequence order, which every standard product obeys.
    """
    if h_max % 2:
        raise ValueError("h_max must be even")
    sizes = [s for s in range(2, min(h_max, p) + 1, 2) if s // 2 <= d]
    cands = all_jseqs(p, sizes, w)
    memo: Dict[tuple, List[Tuple[Tuple[JSeq, ...], Tuple[ESeq, ...]]]] = {}

    def extend(last: Optional[ESeq], start: int, rd: int, rw: int):
        if rd == 0:
            return [((), ())] if rw == 0 else []
        key = (last, start, rd, rw)
        if key in memo:
            return memo[key]
        res = []
        for idx in range(start, len(cands)):
            j = cands[idx]
            if j.size // 2 > rd or j.n > rw:
                continue
            if last is None:
                e = top_lift(j)
            else:
                if j.size > last.size:
                    continue
                e = largest_dominating(last, j)
                if e is None:
                    continue
            for tj, te in extend(e, idx, rd - j.size // 2, rw - j.n):
                res.append(((j,) + tj, (e,) + te))
        memo[key] = res
        return res

    if d == 0:
        return [StandardProduct((), ())] if w == 0 else []
    return [StandardProduct(js, es) for js, es in extend(None, 0, d, w)]


def jseq_poly(j: JSeq, p: int) -> Poly:
    if j.size % 2:
        raise ValueError(f"{j} has odd size")
    return pfaffian_derivative(j.ascending, j.n, p)


def product_poly(js: Sequence[JSeq], p: int) -> Poly:
    out = Poly.const(1, "X", p)
    for j in js:
        out = out * jseq_poly(j, p)
    return out
