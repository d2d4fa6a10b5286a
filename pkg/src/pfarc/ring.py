"""Sparse exact polynomials over the jet rings of skew-symmetric matrices.

Two generator alphabets are supported:

* ``"X"``: the generators ``x^(k)_{uv}`` of the differential ring of a
  generic ``p x p`` skew-symmetric matrix.  Only ``u < v`` is ever stored;
  ``x_{vu}`` is rewritten to ``-x_{uv}`` and ``x_{uu}`` to ``0`` on entry.
* ``"A"``: the generators ``a^(k)_{il}`` of the jet ring of ``p`` copies of
  ``K^h``.

Generators are tuples ordered lexicographically by ``(k, u, v)`` resp.
``(k, i, l)``.  A monomial is a tuple of ``(generator, exponent)`` pairs,
strictly increasing in the generator.  Coefficients are Python ints (or
``Fraction`` for the rational outputs of the symplectic action).
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, NamedTuple, Optional, Tuple

__all__ = [
    "XGen",
    "AGen",
    "Poly",
    "AlphabetError",
    "normalize_xgen",
    "binom",
    "dbar",
    "xvar",
    "avar",
    "mono_mul",
    "mono_degree",
    "mono_weight",
    "mono_factors",
]


class AlphabetError(ValueError):
    """Operands live over different generator alphabets."""


class XGen(NamedTuple):
    k: int
    u: int
    v: int


class AGen(NamedTuple):
    k: int
    i: int
    l: int


Monomial = Tuple[tuple, ...]
ONE: Monomial = ()


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def normalize_xgen(u: int, v: int, k: int, p: Optional[int] = None):
    """Return ``(gen, sign)`` for ``x^(k)_{uv}``; ``(None, 0)`` on the diagonal."""
    if k < 0:
        raise ValueError(f"negative jet weight {k}")
    if p is not None and not (1 <= u <= p and 1 <= v <= p):
        raise IndexError(f"index ({u},{v}) outside 1..{p}")
    if u < 1 or v < 1:
        raise IndexError(f"index ({u},{v}) must be positive")
    if u == v:
        return None, 0
    if u < v:
        return XGen(k, u, v), 1
    return XGen(k, v, u), -1


# -- monomials ---------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga == gb:
            out.append((ga, ea + eb))
            i += 1
            j += 1
        elif ga < gb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_weight(m: Monomial) -> int:
    return sum(g[0] * e for g, e in m)


def mono_factors(m: Monomial) -> list:
    """The monomial as a flat list of generators with repetition."""
    out = []
    for g, e in m:
        out.extend([g] * e)
    return out


def mono_from_factors(gens: Iterable[tuple]) -> Monomial:
    counts: Dict[tuple, int] = {}
    for g in gens:
        counts[g] = counts.get(g, 0) + 1
    return tuple(sorted(counts.items()))


def _shift(g: tuple, t: int) -> tuple:
    return type(g)(g[0] + t, g[1], g[2])


# -- polynomials -------------------------------------------------------------

class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero coefficient."""

    __slots__ = ("ring", "p", "h", "terms")

    def __init__(self, ring: str, p: int, h: int = 0, terms: Optional[dict] = None):
        if ring not in ("X", "A"):
            raise ValueError(f"unknown ring {ring!r}")
        self.ring = ring
        self.p = p
        self.h = h if ring == "A" else 0
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def _raw(cls, ring, p, h, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.p, obj.h, obj.terms = ring, p, h, terms
        return obj

    @classmethod
    def const(cls, c, ring: str = "X", p: int = 0, h: int = 0) -> "Poly":
        return cls(ring, p, h, {ONE: c})

    def like(self, terms: dict) -> "Poly":
        return Poly._raw(self.ring, self.p, self.h, terms)

    @property
    def alphabet(self):
        return (self.ring, self.p, self.h)

    def _check(self, other: "Poly"):
        if self.alphabet != other.alphabet:
            raise AlphabetError(f"{self.alphabet} vs {other.alphabet}")

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {ONE: other}
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __neg__(self):
        return self.like({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, *self.alphabet)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self.like(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        if c == 0:
            return self.like({})
        return self.like({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return self.like({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.const(1, *self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    # -- gradings --
    def degrees(self) -> set:
        return {(mono_degree(m), mono_weight(m)) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coefficients_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    # -- serialization --
    def to_json(self) -> dict:
        terms = []
        for m, c in self.sorted_terms():
            factors = [[g[1], g[2], g[0], e] for g, e in m]
            terms.append([str(c), factors])
        return {"ring": self.ring, "p": self.p, "h": self.h, "terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> "Poly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring, p, h = obj["ring"], obj["p"], obj.get("h", 0)
        out = Poly(ring, p, h)
        for cs, factors in obj["terms"]:
            c = Fraction(cs) if "/" in cs else int(cs)
            term = Poly.const(c, ring, p, h)
            for a, b, k, e in factors:
                v = xvar(a, b, k, p) if ring == "X" else avar(a, b, k, p, h)
                term = term * v ** e
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        name = "x" if self.ring == "X" else "a"
        parts = []
        for m, c in self.sorted_terms():
            fs = "*".join(
                f"{name}{g[0]}_{g[1]}{g[2]}" + (f"^{e}" if e > 1 else "") for g, e in m
            )
            parts.append(f"{c}*{fs}" if fs else f"{c}")
        return " + ".join(parts)


def xvar(u: int, v: int, k: int = 0, p: int = 0) -> Poly:
    g, s = normalize_xgen(u, v, k, p or None)
    if g is None:
        return Poly("X", p)
    return Poly._raw("X", p, 0, {((g, 1),): s})


def avar(i: int, l: int, k: int, p: int, h: int) -> Poly:
    if not (1 <= i <= p and 1 <= l <= h) or k < 0:
        raise IndexError(f"a^({k})_({i},{l}) outside bounds p={p}, h={h}")
    return Poly._raw("A", p, h, {((AGen(k, i, l), 1),): 1})


# -- normalized derivations --------------------------------------------------

def _dbar_mono(m: Monomial, l: int) -> dict:
    """``dbar^l`` of a single monomial, built factor by factor by Leibniz."""
    layers = [{ONE: 1}] + [{} for _ in range(l)]
    for g in mono_factors(m):
        new = [dict() for _ in range(l + 1)]
        for j, layer in enumerate(layers):
            if not layer:
                continue
            for t in range(l + 1 - j):
                c = binom(g[0] + t, t)
                gm = ((_shift(g, t), 1),)
                tgt = new[j + t]
                for mm, cc in layer.items():
                    key = mono_mul(mm, gm)
                    tgt[key] = tgt.get(key, 0) + cc * c
        layers = new
    return layers[l]


def dbar(l: int, f: Poly) -> Poly:
    """The ``l``-th normalized derivative, exact over the integers."""
    if l < 0:
        raise ValueError("derivation order must be non-negative")
    if l == 0:
        return f
    out: dict = {}
    for m, c in f.terms.items():
        for mm, cc in _dbar_mono(m, l).items():
            out[mm] = out.get(mm, 0) + c * cc
    return f.like({m: c for m, c in out.items() if c})
