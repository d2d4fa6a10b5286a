"""Pure-Python sparse integer elimination kernel.

A sparse row is a pair of parallel lists ``(cols, vals)`` with ``cols``
strictly increasing; ``cols[0]`` is the leading column.  A pivot table maps
a leading column to ``[cols, vals, tcols, tvals]`` where ``(tcols, tvals)``
is an optional tracking row recording the pivot as a combination of tagged
input rows.

``_kernel.pyx`` implements the same functions; keep the two in step.
"""
from math import gcd

__all__ = ["combine", "content", "xgcd", "insert", "reduce"]


def combine(ca, acols, avals, cb, bcols, bvals):
    """Return ``ca * a + cb * b`` as a new sparse row."""
    oc = []
    ov = []
    i = j = 0
    na = len(acols)
    nb = len(bcols)
    while i < na and j < nb:
        x = acols[i]
        y = bcols[j]
        if x == y:
            v = ca * avals[i] + cb * bvals[j]
            if v:
                oc.append(x)
                ov.append(v)
            i += 1
            j += 1
        elif x < y:
            v = ca * avals[i]
            if v:
                oc.append(x)
                ov.append(v)
            i += 1
        else:
            v = cb * bvals[j]
            if v:
                oc.append(y)
                ov.append(v)
            j += 1
    while i < na:
        v = ca * avals[i]
        if v:
            oc.append(acols[i])
            ov.append(v)
        i += 1
    while j < nb:
        v = cb * bvals[j]
        if v:
            oc.append(bcols[j])
            ov.append(v)
        j += 1
    return oc, ov


def content(vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def xgcd(a, b):
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) > 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def insert(pivots, cols, vals, tcols, tvals, lattice):
    """Reduce a row against ``pivots`` and store what remains.

    With ``lattice`` true only unimodular row operations are used, so the
    pivots always generate the same Z-module as the rows inserted so far.
    Otherwise rows are cross-multiplied and made primitive (fraction-free
    elimination over Q); tracking is then ignored.
    Returns True when the row raised the rank.
    """
    while cols:
        c = cols[0]
        piv = pivots.get(c)
        if piv is None:
            if not lattice:
                g = content(vals)
                if g != 1:
                    vals = [v // g for v in vals]
                if vals[0] < 0:
                    vals = [-v for v in vals]
            pivots[c] = [cols, vals, tcols, tvals]
            return True
        pc, pv, ptc, ptv = piv
        a = pv[0]
        b = vals[0]
        if b % a == 0:
            q = b // a
            cols, vals = combine(1, cols, vals, -q, pc, pv)
            if lattice:
                tcols, tvals = combine(1, tcols, tvals, -q, ptc, ptv)
        elif lattice:
            g, s, t = xgcd(a, b)
            ag = a // g
            bg = b // g
            nc, nv = combine(s, pc, pv, t, cols, vals)
            ntc, ntv = combine(s, ptc, ptv, t, tcols, tvals)
            cols, vals = combine(ag, cols, vals, -bg, pc, pv)
            tcols, tvals = combine(ag, tcols, tvals, -bg, ptc, ptv)
            pivots[c] = [nc, nv, ntc, ntv]
        else:
            g = gcd(a, b)
            cols, vals = combine(a // g, cols, vals, -(b // g), pc, pv)
            if cols:
                g = content(vals)
                if g != 1:
                    vals = [v // g for v in vals]
    return False


def reduce(pivots, cols, vals, exact):
    """Reduce a row by leading columns; return ``(cols, vals, quotients)``.

    ``quotients`` lists ``(pivot_col, q)`` with ``row == sum q * pivot +
    residual``.  With ``exact`` true the reduction stops at the first pivot
    that does not divide; otherwise ``q`` may be a Fraction.
    """
    quot = []
    while cols:
        c = cols[0]
        piv = pivots.get(c)
        if piv is None:
            break
        pc, pv = piv[0], piv[1]
        a = pv[0]
        b = vals[0]
        if b % a == 0:
            q = b // a
        elif exact:
            break
        else:
            from fractions import Fraction
            q = Fraction(b, a)
        quot.append((c, q))
        cols, vals = combine(1, cols, vals, -q, pc, pv)
    return cols, vals, quot
