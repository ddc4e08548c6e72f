"""Pure-Python exact sparse row echelon over the rationals.

Rows are dicts ``{column: int}``.  Every stored row is primitive (content 1)
with a positive leading coefficient; elimination is fraction-free.
"""
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        for k in row:
            row[k] //= g
    return row


def _content_divide(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    for k in row:
        row[k] //= g


def to_int_row(row):
    """Scale a ``{col: Fraction|int}`` row to a primitive integer row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            d = v.denominator
            den = den * d // gcd(den, d)
    out = {}
    for k, v in row.items():
        if v:
            out[k] = int(v * den)
    if out:
        _primitive(out)
    return out


class Echelon:
    """Incrementally built row echelon form keyed by leading column."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Return the remainder of an integer row against the stored pivots.

        The remainder is primitive, or empty when ``row`` lies in the span.
        """
        r = dict(row)
        pivots = self.pivots
        heap = [c for c in r if c in pivots]
        heapify(heap)
        while heap:
            c = heappop(heap)
            b = r.pop(c, 0)
            if not b:
                continue
            p = pivots[c]
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
        """Insert a row; return its new leading column or ``None`` if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        c = min(r)
        self.pivots[c] = r
        return c

    def contains(self, row):
        return not self.reduce(row)

    def rref(self):
        """Fully reduced rows as ``{pivot_col: {col: Fraction}}`` with unit pivots."""
        cols = sorted(self.pivots, reverse=True)
        out = {}
        for c in cols:
            r = dict(self.pivots[c])
            for c2 in list(r):
                if c2 != c and c2 in out:
                    b = r.pop(c2)
                    for k, v in out[c2].items():
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
        """Basis of ``{x : row . x = 0 for every stored row}`` as Fraction dicts."""
        red = self.rref()
        free = [j for j in range(ncols) if j not in red]
        basis = []
        by_free = {f: [] for f in free}
        for c, r in red.items():
            for k, v in r.items():
                if k != c:
                    by_free[k].append((c, v))
        for f in free:
            vec = {f: Fraction(1)}
            for c, v in by_free[f]:
                vec[c] = -v
            basis.append(vec)
        return basis
