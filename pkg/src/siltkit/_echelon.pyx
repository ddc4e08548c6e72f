# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact sparse row echelon; drop-in twin of ``_echelon_py``."""
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd


cdef object _content_divide(dict row):
    cdef object g = 0
    cdef object v
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return None
    for k in row:
        row[k] //= g
    return None


cdef dict _primitive(dict row):
    cdef object g = 0
    cdef object v
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        for k in row:
            row[k] //= g
    return row


def to_int_row(row):
    cdef object den = 1
    cdef dict out = {}
    for v in row.values():
        if isinstance(v, Fraction):
            d = v.denominator
            den = den * d // gcd(den, d)
    for k, v in row.items():
        if v:
            out[k] = int(v * den)
    if out:
        _primitive(out)
    return out


cdef class Echelon:
    cdef public dict pivots

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    cpdef dict reduce(self, row):
        cdef dict r = dict(row)
        cdef dict pivots = self.pivots
        cdef dict p
        cdef list heap = [c for c in r if c in pivots]
        cdef object c, a, b, k, v, old, nv
        heapify(heap)
        while heap:
            c = heappop(heap)
            b = r.pop(c, 0)
            if not b:
                continue
            p = <dict>pivots[c]
            a = p[c]
            if a != 1:
                for k in r:
                    r[k] *= a
            for k, v in p.items():
                if k == c:
                    continue
                old = r.get(k, 0)
                nv = old - b * v
                if nv:
                    r[k] = nv
                    if not old and k in pivots:
                        heappush(heap, k)
                else:
                    del r[k]
            if a != 1 and r:
                _content_divide(r)
        if r:
            _primitive(r)
        return r

    def add(self, row):
        cdef dict r = self.reduce(row)
        if not r:
            return None
        c = min(r)
        self.pivots[c] = r
        return c

    def contains(self, row):
        return not self.reduce(row)

    def rref(self):
        cdef dict out = {}
        cdef dict r
        for c in sorted(self.pivots, reverse=True):
            r = dict(self.pivots[c])
            for c2 in list(r):
                if c2 != c and c2 in out:
                    b = r.pop(c2)
                    for k, v in (<dict>out[c2]).items():
                        if k == c2:
                            continue
                        nv = r.get(k, 0) - b * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
            lead = Fraction(r[c])
            out[c] = {k: Fraction(v) / lead for k, v in r.items()}
        return out

    def nullspace(self, ncols):
        red = self.rref()
        free = [j for j in range(ncols) if j not in red]
        by_free = {f: [] for f in free}
        for c, r in red.items():
            for k, v in r.items():
                if k != c:
                    by_free[k].append((c, v))
        basis = []
        for f in free:
            vec = {f: Fraction(1)}
            for c, v in by_free[f]:
                vec[c] = -v
            basis.append(vec)
        return basis
