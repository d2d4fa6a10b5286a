# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse integer elimination kernel.

Same contract as ``_kernel_py``; columns are handled as C longs, values stay
arbitrary-precision Python integers (or Fractions in ``reduce``).
"""
from math import gcd
from fractions import Fraction


cpdef tuple combine(object ca, list acols, list avals, object cb, list bcols, list bvals):
    cdef list oc = []
    cdef list ov = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(acols), nb = len(bcols)
    cdef long x, y
    cdef object v
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


cpdef object content(list vals):
    cdef object g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


cpdef tuple xgcd(object a, object b):
    cdef object s0 = 1, s1 = 0, t0 = 0, t1 = 1, q, r
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


cpdef bint insert(dict pivots, list cols, list vals, list tcols, list tvals, bint lattice):
    cdef object c, piv, a, b, q, g, s, t, ag, bg
    cdef list pc, pv, ptc, ptv, nc, nv, ntc, ntv
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
        pc = piv[0]
        pv = piv[1]
        ptc = piv[2]
        ptv = piv[3]
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


cpdef tuple reduce(dict pivots, list cols, list vals, bint exact):
    cdef list quot = []
    cdef object c, piv, a, b, q
    while cols:
        c = cols[0]
        piv = pivots.get(c)
        if piv is None:
            break
        a = piv[1][0]
        b = vals[0]
        if b % a == 0:
            q = b // a
        elif exact:
            break
        else:
            q = Fraction(b, a)
        quot.append((c, q))
        cols, vals = combine(1, cols, vals, -q, piv[0], piv[1])
    return cols, vals, quot
