"""Graded pieces of the jet ring of skew-symmetric matrices modulo the
derived-Pfaffian ideal: ranks, the Z-basis certificate, straightening, and
the alternating-sum relations between pairs of derived Pfaffians.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import Echelon, sparse
from .pfaffian import jseq_value, pfaffian_derivative, permutation_sign
from .ring import Poly, XGen, binom, mono_from_factors, mono_mul
from .standard import StandardProduct, enumerate_standard

__all__ = [
    "GradedPiece",
    "MembershipError",
    "NonIntegralError",
    "BasisCertificate",
    "ideal_span",
    "exact_rank",
    "verify_standard_basis",
    "Straightener",
    "straighten",
    "IdealReducer",
    "binomial_inverse",
    "complete_coefficients",
    "relation_pair_sum",
    "generate_relation",
    "RelationResult",
]


class MembershipError(ValueError):
    """A polynomial has a monomial outside the graded piece."""


class NonIntegralError(ArithmeticError):
    """Straightening produced a non-integer coefficient."""


class GradedPiece:
    """All monomials of x-degree ``d`` and weight ``w`` in ``x^(k)_{uv}``, u<v<=p.

    The basis is sorted descending by the flat factor word, so column 0 holds
    the largest monomial.
    """

    def __init__(self, p: int, d: int, w: int):
        self.p, self.d, self.w = p, d, w
        gens = [XGen(k, u, v) for k in range(w + 1)
                for u in range(1, p + 1) for v in range(u + 1, p + 1)]
        basis = []
        for combo in combinations_with_replacement(gens, d):
            if sum(g.k for g in combo) == w:
                basis.append(mono_from_factors(combo))
        basis.sort(key=_word, reverse=True)
        self.basis = basis
        self.index = {m: i for i, m in enumerate(basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def key(self):
        return (self.p, self.d, self.w)

    def vector(self, f: Poly):
        entries = {}
        for m, c in f.terms.items():
            i = self.index.get(m)
            if i is None:
                raise MembershipError(f"monomial {m} not in piece {self.key}")
            entries[i] = c
        return sparse(entries)

    def poly(self, vec) -> Poly:
        cols, vals = vec
        return Poly("X", self.p, 0, {self.basis[c]: v for c, v in zip(cols, vals)})


def _word(m):
    out = []
    for g, e in m:
        out.extend([tuple(g)] * e)
    return tuple(out)


@lru_cache(maxsize=64)
def _piece(p: int, d: int, w: int) -> GradedPiece:
    return GradedPiece(p, d, w)


def ideal_span(p: int, h: int, d: int, w: int) -> List[Poly]:
    """Spanning set of the ``(d, w)`` part of the ideal generated by the
    derived Pfaffians of all ``h``-row diagonal minors: products
    ``m * dbar^n P(B)`` with ``m`` a monomial of the complementary bidegree.
    """
    if h % 2:
        raise ValueError("ideal size must be even")
    out: List[Poly] = []
    half = h // 2
    if h > p or half > d:
        return out
    for rows in combinations(range(1, p + 1), h):
        for n in range(w + 1):
            gen = pfaffian_derivative(rows, n, p)
            for m in _piece(p, d - half, w - n).basis:
                out.append(Poly._raw("X", p, 0, {mono_mul(m, mm): c for mm, c in gen.terms.items()}))
    return out


def exact_rank(vectors: Sequence[Poly], piece: GradedPiece) -> int:
    """Rank over Q by fraction-free elimination over Z."""
    e = Echelon()
    for f in vectors:
        e.add(piece.vector(f))
    return e.rank


# -- the Z-basis certificate -------------------------------------------------

@dataclass
class BasisCertificate:
    p: int
    h: int
    d: int
    w: int
    dim_ambient: int
    rank_ideal: int
    n_standard: int
    rank_combined: int
    integral_spanning: bool
    witnesses: List[str] = field(default_factory=list)
    theorem: str = "Z-basis of standard monomials (Theorem 1.2)"

    @property
    def verdict(self) -> str:
        ok = (self.rank_combined == self.rank_ideal + self.n_standard
              and self.dim_ambient - self.rank_ideal == self.n_standard
              and self.integral_spanning)
        return "pass" if ok else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        out = asdict(self)
        out["cell"] = f"p{self.p}-h{self.h}-d{self.d}-w{self.w}"
        out["verdict"] = self.verdict
        return out


class Straightener:
    """Lattice echelon of the ideal generators followed by the standard
    monomials of one graded piece, tracking the standard-monomial content of
    every pivot.  Serves both the certificate and straightening.
    """

    def __init__(self, p: int, h: int, d: int, w: int):
        if h % 2 or h < 0:
            raise ValueError("h must be even and non-negative")
        self.p, self.h, self.d, self.w = p, h, d, w
        self.piece = _piece(p, d, w)
        self.standard = enumerate_standard(p, h, d, w)
        self.echelon = Echelon(lattice=True)
        seen = set()
        for f in ideal_span(p, h + 2, d, w):
            vec = self.piece.vector(f)
            key = (tuple(vec[0]), tuple(vec[1]))
            neg = (key[0], tuple(-v for v in vec[1]))
            if key in seen or neg in seen:
                continue
            seen.add(key)
            self.echelon.add(vec)
        self.rank_ideal = self.echelon.rank
        self.n_standard = len(self.standard)
        for idx, sp in enumerate(self.standard):
            self.echelon.add(self.piece.vector(sp.value(p)), ([idx], [1]))
        self.rank_combined = self.echelon.rank

    def unimodular(self) -> bool:
        return self.echelon.is_unimodular(self.piece.dim)

    def spanning_witnesses(self, limit: int = 5) -> List[str]:
        """Ambient monomials that are not integer combinations of the rows."""
        out = []
        for i, m in enumerate(self.piece.basis):
            if not self.echelon.contains(([i], [1])):
                out.append(str(Poly("X", self.p, 0, {m: 1})))
                if len(out) >= limit:
                    break
        return out

    def certificate(self) -> BasisCertificate:
        unimod = self.unimodular()
        witnesses = [] if unimod else self.spanning_witnesses()
        return BasisCertificate(
            self.p, self.h, self.d, self.w,
            dim_ambient=self.piece.dim,
            rank_ideal=self.rank_ideal,
            n_standard=self.n_standard,
            rank_combined=self.rank_combined,
            integral_spanning=unimod,
            witnesses=witnesses,
        )

    def coefficients(self, f: Poly) -> Dict[int, int | Fraction]:
        """Coefficients on ``self.standard`` indices; raises unless the
        polynomial lies in the span."""
        if f.alphabet != ("X", self.p, 0):
            raise MembershipError(f"alphabet {f.alphabet} does not match p={self.p}")
        coeffs, residual = self.echelon.solve(self.piece.vector(f))
        if residual[0]:
            raise MembershipError("polynomial not in the span of standard monomials and the ideal")
        return coeffs

    def straighten(self, f: Poly) -> Dict[StandardProduct, int]:
        if f.terms and f.degrees() != {(self.d, self.w)}:
            raise ValueError(f"input is not homogeneous of bidegree {(self.d, self.w)}")
        coeffs = self.coefficients(f)
        bad = {i: c for i, c in coeffs.items() if not isinstance(c, int)}
        if bad:
            raise NonIntegralError(
                "non-integral straightening coefficients: "
                + ", ".join(f"{self.standard[i]}: {c}" for i, c in bad.items()))
        return {self.standard[i]: c for i, c in sorted(coeffs.items())}

    def evaluate(self, combo: Dict[StandardProduct, int]) -> Poly:
        out = Poly("X", self.p)
        for sp, c in combo.items():
            out = out + sp.value(self.p).scale(c)
        return out


@lru_cache(maxsize=32)
def straightener(p: int, h: int, d: int, w: int) -> Straightener:
    return Straightener(p, h, d, w)


def verify_standard_basis(p: int, h: int, d: int, w: int) -> BasisCertificate:
    return straightener(p, h, d, w).certificate()


def straighten(f: Poly, p: int, h: int, d: Optional[int] = None, w: Optional[int] = None
               ) -> Dict[StandardProduct, int]:
    """Integer coefficients ``c`` with ``f - sum c_S S`` in the ideal."""
    if d is None or w is None:
        degs = f.degrees()
        if len(degs) != 1:
            raise ValueError("input must be a nonzero homogeneous polynomial")
        d, w = next(iter(degs))
    return straightener(p, h, d, w).straighten(f)


class IdealReducer:
    """Q-span of the ideal in one graded piece, for membership tests."""

    def __init__(self, p: int, h_ideal: int, d: int, w: int):
        self.piece = _piece(p, d, w)
        self.echelon = Echelon()
        for f in ideal_span(p, h_ideal, d, w):
            self.echelon.add(self.piece.vector(f))

    def contains(self, f: Poly) -> bool:
        return self.echelon.contains(self.piece.vector(f))


# -- relations between pairs of derived Pfaffians ----------------------------

def binomial_inverse(k0: int, l0: int) -> List[List[int]]:
    """Inverse of the unimodular matrix ``c[j][i] = C(k0 + j, i)``, 0 <= i, j <= l0."""
    n = l0 + 1
    mat = [[Fraction(binom(k0 + j, i)) for i in range(n)] + [Fraction(int(r == j)) for r in range(n)]
           for j in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [x / pv for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    inv = [[mat[r][n + c] for c in range(n)] for r in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ArithmeticError("binomial matrix is not unimodular")  # pragma: no cover
    return [[int(x) for x in row] for row in inv]


def complete_coefficients(k0: int, l0: int, m: int, seed: Sequence[int]) -> List[int]:
    """Extend ``a_{k0..k0+l0}`` to ``a_0..a_m`` via the inverse binomial matrix."""
    if len(seed) != l0 + 1:
        raise ValueError(f"seed needs {l0 + 1} entries, got {len(seed)}")
    b = binomial_inverse(k0, l0)
    ba = [sum(b[l][j] * seed[j] for j in range(l0 + 1)) for l in range(l0 + 1)]
    return [sum(binom(k, l) * ba[l] for l in range(l0 + 1)) for k in range(m + 1)]


def relation_pair_sum(u: Sequence[int], up: Sequence[int], i: int, j: int,
                      top: int, bottom: int, p: int) -> Poly:
    """``sum_sigma sign(sigma)/(i! j!) dbar^top|u..., sigma(u_i..u_1)| dbar^bottom|u'..., sigma(u'_j..u'_1)|``.

    Rows are written left to right as printed (``u[0]`` is ``u_h``).  Each
    distribution of the shuffled entries between the two sequences occurs
    ``i! j!`` times with the same signed value, so the sum runs over subsets.
    """
    h, hp = len(u), len(up)
    fixed_a, moving_a = list(u[:h - i]), list(u[h - i:])
    fixed_b, moving_b = list(up[:hp - j]), list(up[hp - j:])
    moving = moving_a + moving_b
    total = Poly("X", p)
    for chosen in combinations(range(i + j), i):
        rest = [t for t in range(i + j) if t not in chosen]
        sign = permutation_sign(list(chosen) + rest)
        first = jseq_value(fixed_a + [moving[t] for t in chosen], top, p)
        if not first:
            continue
        second = jseq_value(fixed_b + [moving[t] for t in rest], bottom, p)
        if second:
            total = total + (first * second).scale(sign)
    return total


def relation_pair_sum_permutations(u, up, i, j, top, bottom, p) -> Poly:
    """The same sum taken literally over all ``(i+j)!`` permutations; slow."""
    h, hp = len(u), len(up)
    fixed_a, fixed_b = list(u[:h - i]), list(up[:hp - j])
    moving = list(u[h - i:]) + list(up[hp - j:])
    total: Poly = Poly("X", p)
    for perm in permutations(range(i + j)):
        s = permutation_sign(perm)
        img = [moving[t] for t in perm]
        a = jseq_value(fixed_a + img[:i], top, p)
        b = jseq_value(fixed_b + img[i:], bottom, p)
        total = total + (a * b).scale(s)
    denom = factorial(i) * factorial(j)
    out = {}
    for mono, c in total.terms.items():
        if c % denom:
            raise ArithmeticError("permutation sum not divisible by i! j!")
        out[mono] = c // denom
    return Poly("X", p, 0, out)


@dataclass
class RelationResult:
    params: dict
    coefficients: List[int]
    relation: Poly
    in_ideal: bool
    identically_zero: bool

    def to_json(self):
        return {
            "params": self.params,
            "coefficients": [str(a) for a in self.coefficients],
            "terms": len(self.relation),
            "in_ideal": self.in_ideal,
            "identically_zero": self.identically_zero,
            "theorem": "alternating relations lie in the ideal (Lemma 2.5)",
        }


def generate_relation(u: Sequence[int], up: Sequence[int], i: int, j: int, k0: int, m: int,
                      seed: Sequence[int], p: Optional[int] = None
                      ) -> Tuple[List[int], Poly]:
    """Integer coefficients ``a_0..a_m`` completing ``seed`` and the relation
    ``sum_k a_k * pair_sum(dbar^{m-k}, dbar^k)``, which lies in the ideal of
    ``(len(u)+2)``-row derived Pfaffians.

    An empty seed stands for all zeros.
    """
    h, hp = len(u), len(up)
    if h % 2 or hp % 2:
        raise ValueError("row lists must have even length")
    if not (hp <= h and 0 <= i <= h and 0 <= j <= hp and 0 <= k0 <= m):
        raise ValueError("need h' <= h, i <= h, j <= h', k0 <= m")
    l0 = i + j - h - 1
    if l0 < 0:
        raise ValueError(f"l0 = i + j - h - 1 = {l0} must be non-negative")
    if not seed:
        seed = [0] * (l0 + 1)
    pp = p if p is not None else max(list(u) + list(up) + [1])
    a = complete_coefficients(k0, l0, m, seed)
    rel = Poly("X", pp)
    for k, ak in enumerate(a):
        if ak:
            rel = rel + relation_pair_sum(u, up, i, j, m - k, k, pp).scale(ak)
    return a, rel


def check_relation(u, up, i, j, k0, m, seed, p) -> RelationResult:
    a, rel = generate_relation(u, up, i, j, k0, m, seed, p)
    h = len(u)
    d = (len(u) + len(up)) // 2
    in_ideal = IdealReducer(p, h + 2, d, m).contains(rel)
    params = {"u": list(u), "u_prime": list(up), "i": i, "j": j, "k0": k0, "m": m,
              "seed": list(seed), "p": p}
    return RelationResult(params, a, rel, in_ideal, not rel)


# (u, u', i, j, k0, m, seed, p).  A few entries vanish identically: shuffled
# rows repeat, the seed is empty, or the target ideal is zero for that p.
RELATION_SUITE: Tuple[tuple, ...] = (
    ((2, 1), (2, 1), 2, 1, 0, 1, (1,), 2),
    ((4, 3), (2, 1), 2, 1, 1, 1, (1,), 4),
    ((4, 3), (2, 1), 1, 2, 0, 2, (1,), 4),
    ((4, 3), (2, 1), 2, 2, 0, 2, (1, 2), 4),
    ((4, 2), (3, 1), 2, 2, 1, 3, (2, -1), 4),
    ((3, 2), (4, 1), 2, 1, 0, 3, (1,), 4),
    ((5, 3), (4, 2), 2, 1, 2, 3, (1,), 5),
    ((2, 1), (3, 2), 1, 2, 1, 2, (3,), 3),
    ((4, 1), (3, 2), 2, 2, 0, 0, (), 4),
    ((5, 4), (3, 1), 2, 1, 0, 2, (-2,), 5),
    ((5, 2), (4, 3), 1, 2, 3, 3, (1,), 5),
    ((3, 1), (4, 2), 2, 2, 2, 3, (1, 1), 4),
    ((4, 3, 2, 1), (6, 5), 4, 1, 0, 1, (1,), 6),
    ((4, 3, 2, 1), (6, 5), 4, 1, 1, 2, (1,), 6),
    ((4, 3, 2, 1), (6, 5), 4, 1, 2, 3, (1,), 6),
    ((6, 3, 2, 1), (5, 4), 3, 2, 0, 1, (1,), 6),
    ((6, 3, 2, 1), (5, 4), 4, 2, 0, 2, (1, -1), 6),
    ((5, 4, 2, 1), (6, 3), 3, 2, 1, 3, (2,), 6),
    ((6, 5, 4, 3), (2, 1), 4, 1, 0, 2, (1,), 6),
    ((5, 4, 3, 2), (2, 1), 4, 2, 0, 2, (1, 1), 5),
    ((6, 4, 3, 2), (5, 4, 2, 1), 2, 3, 0, 1, (1,), 6),
    ((6, 5, 4, 3), (6, 3, 2, 1), 3, 3, 1, 2, (1, 0), 6),
)
