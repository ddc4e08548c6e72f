"""Bounded complexes of projectives and the homotopy category ``K^b(proj A)``.

A complex stores, for each degree, a tuple of vertices (one indecomposable
projective ``e_v A`` per entry) and differentials ``d^k: X^k -> X^{k+1}``.
The entry ``d[i][j]`` of a map from summand ``e_u A`` to summand ``e_v A``
is an algebra vector in ``e_v A e_u`` acting by left multiplication.
"""
from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Sequence

from .algebra import AlgebraBasis
from .errors import ApproximationFailure, NotBasic, SizeMismatch
from .linalg import Echelon, Subspace, back_substitute, nullspace, remainder, to_int_row

Vec = dict  # {basis index: Fraction}


def _clean(vec: dict) -> dict:
    """Store integral coefficients as ints (cheaper arithmetic than Fraction)."""
    return {k: (int(c) if isinstance(c, Fraction) and c.denominator == 1 else c) for k, c in vec.items()}


def _nz(coords) -> dict:
    return {i: c for i, c in enumerate(coords) if c}


def _add_into(acc: dict, vec: dict, c=1) -> None:
    for k, v in vec.items():
        x = acc.get(k, 0) + c * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class ProjComplex:
    lo: int
    terms: tuple  # terms[k]: vertices in degree lo + k
    diffs: tuple  # diffs[k]: matrix terms[k] -> terms[k+1], rows = targets
    _sparse: dict = field(default_factory=dict, repr=False)

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def term(self, deg: int) -> tuple:
        k = deg - self.lo
        if 0 <= k < len(self.terms):
            return self.terms[k]
        return ()

    def diff(self, deg: int):
        """Matrix of ``d^deg`` (``None`` if either side is zero)."""
        k = deg - self.lo
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return None

    def out_entries(self, deg: int) -> list:
        """For each summand ``j`` of ``X^deg``: nonzero ``(i, d[i][j])`` of ``d^deg``."""
        key = ("out", deg)
        hit = self._sparse.get(key)
        if hit is None:
            d = self.diff(deg)
            src, tgt = self.term(deg), self.term(deg + 1)
            hit = [[(i, d[i][j]) for i in range(len(tgt)) if d[i][j]] for j in range(len(src))] if d else []
            self._sparse[key] = hit
        return hit

    def in_entries(self, deg: int) -> list:
        """For each summand ``i`` of ``X^deg``: nonzero ``(j, d[i][j])`` of ``d^{deg-1}``."""
        key = ("in", deg)
        hit = self._sparse.get(key)
        if hit is None:
            d = self.diff(deg - 1)
            src, tgt = self.term(deg - 1), self.term(deg)
            hit = [[(j, e) for j, e in enumerate(d[i]) if e] for i in range(len(tgt))] if d else []
            self._sparse[key] = hit
        return hit

    @property
    def is_zero(self) -> bool:
        return all(not t for t in self.terms)

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def shift(self, n: int) -> "ProjComplex":
        """``X[n]``: ``X[n]^k = X^{k+n}`` with differential ``(-1)^n d``."""
        sign = -1 if n % 2 else 1
        diffs = tuple(tuple(tuple({w: sign * c for w, c in e.items()} for e in row) for row in d) for d in self.diffs)
        return ProjComplex(self.lo - n, self.terms, diffs)

    def class_vector(self, vertices: Sequence) -> tuple:
        """Alternating sum of the terms in the basis of indecomposable projectives."""
        pos = {v: i for i, v in enumerate(vertices)}
        g = [0] * len(vertices)
        for deg in self.degrees():
            s = -1 if deg % 2 else 1
            for v in self.term(deg):
                g[pos[v]] += s
        return tuple(g)

    def multiplicities(self) -> dict:
        return {deg: tuple(self.term(deg)) for deg in self.degrees() if self.term(deg)}

    def total_rank(self) -> int:
        return sum(len(t) for t in self.terms)

    def describe(self, alg: AlgebraBasis | None = None) -> dict:
        out = {"lo": self.lo, "terms": [list(map(str, t)) for t in self.terms]}
        if alg is not None:
            out["diffs"] = [
                [[alg.to_lincomb(e).to_text() if e else "0" for e in row] for row in d] for d in self.diffs
            ]
        return out


def _trim(lo: int, terms: list, diffs: list) -> ProjComplex:
    while terms and not terms[0]:
        terms.pop(0)
        if diffs:
            diffs.pop(0)
        lo += 1
    while terms and not terms[-1]:
        terms.pop()
        if diffs:
            diffs.pop()
    if not terms:
        return ProjComplex(0, (), ())
    diffs = diffs[: len(terms) - 1]
    return ProjComplex(lo, tuple(tuple(t) for t in terms),
                       tuple(tuple(tuple(_clean(e) for e in r) for r in d) for d in diffs))


def make_complex(lo: int, terms, diffs) -> ProjComplex:
    terms = [tuple(t) for t in terms]
    diffs = [[[_clean(e) for e in row] for row in d] for d in diffs]
    while len(diffs) < len(terms) - 1:
        k = len(diffs)
        diffs.append([[{} for _ in terms[k]] for _ in terms[k + 1]])
    return _trim(lo, terms, diffs)


def stalk(vertices, deg: int = 0) -> ProjComplex:
    """The projective module ``(+) e_v A`` placed in degree ``deg``."""
    return make_complex(deg, [tuple(vertices)], [])


def from_resolution(res) -> ProjComplex:
    """Projective resolution ``P_m -> ... -> P_0`` as a complex in degrees ``-m..0``."""
    m = len(res.terms) - 1
    terms = [tuple(res.terms[m - k]) for k in range(m + 1)]
    diffs = []
    for k in range(m):
        # degree -m+k -> -m+k+1 is d_{m-k}: P_{m-k} -> P_{m-k-1}
        d = res.differentials[m - k - 1]
        diffs.append([[dict(e) for e in row] for row in d])
    return make_complex(-m, terms, diffs)


def direct_sum(parts: Sequence[ProjComplex]) -> ProjComplex:
    parts = [p for p in parts if not p.is_zero]
    if not parts:
        return ProjComplex(0, (), ())
    lo = min(p.lo for p in parts)
    hi = max(p.hi for p in parts)
    terms = []
    for deg in range(lo, hi + 1):
        terms.append(tuple(v for p in parts for v in p.term(deg)))
    diffs = []
    for deg in range(lo, hi):
        rows = len(terms[deg - lo + 1])
        cols = len(terms[deg - lo])
        mat = [[{} for _ in range(cols)] for _ in range(rows)]
        ro = co = 0
        for p in parts:
            s, t = p.term(deg), p.term(deg + 1)
            d = p.diff(deg)
            if d is not None:
                for i in range(len(t)):
                    for j in range(len(s)):
                        if d[i][j]:
                            mat[ro + i][co + j] = dict(d[i][j])
            ro += len(t)
            co += len(s)
        diffs.append(mat)
    return _trim(lo, terms, diffs)


def summand_offsets(parts: Sequence[ProjComplex], deg: int) -> list[int]:
    out, o = [], 0
    for p in parts:
        out.append(o)
        o += len(p.term(deg))
    return out


# ------------------------------------------------------------------ chain maps

@dataclass(eq=False)
class ChainMap:
    """Degree-``shift`` map ``f^k: X^k -> Y^{k+shift}``; ``comps[(k, i, j)]`` is an algebra vector."""

    source: ProjComplex
    target: ProjComplex
    shift: int
    comps: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(self.comps.values())


def _mat_mul(alg: AlgebraBasis, A, B, rows: int, inner: int, cols: int):
    out = [[{} for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for m in range(inner):
            a = A[i][m]
            if not a:
                continue
            for j in range(cols):
                b = B[m][j]
                if b:
                    _add_into(out[i][j], alg.mul_vec(a, b))
    return out


def compose(alg: AlgebraBasis, g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f`` for ``f: X -> Y[s]`` and ``g: Y -> Z[t]``."""
    out: dict = {}
    by_src: dict = {}
    for (k, i, j), x in g.comps.items():
        if x:
            by_src.setdefault((k, j), []).append((i, x))
    for (k, m, j), y in f.comps.items():
        if not y:
            continue
        for i, x in by_src.get((k + f.shift, m), ()):
            key = (k, i, j)
            acc = out.setdefault(key, {})
            _add_into(acc, alg.mul_vec(x, y))
    out = {k: v for k, v in out.items() if v}
    return ChainMap(f.source, g.target, f.shift + g.shift, out)


def identity_map(X: ProjComplex, alg: AlgebraBasis) -> ChainMap:
    comps = {}
    for deg in X.degrees():
        for i, v in enumerate(X.term(deg)):
            comps[(deg, i, i)] = {alg.idem[v]: 1}
    return ChainMap(X, X, 0, comps)


def is_chain_map(alg: AlgebraBasis, f: ChainMap) -> bool:
    X, Y, s = f.source, f.target, f.shift
    sign = -1 if s % 2 else 1
    for deg in range(min(X.lo, Y.lo - s) - 1, max(X.hi, Y.hi - s) + 1):
        # d_Y f^deg - (-1)^s f^{deg+1} d_X  on X^deg -> Y^{deg+s+1}
        src, tgt = X.term(deg), Y.term(deg + s + 1)
        for j in range(len(src)):
            for i in range(len(tgt)):
                acc: dict = {}
                dY = Y.diff(deg + s)
                if dY is not None:
                    for m in range(len(Y.term(deg + s))):
                        a, b = dY[i][m], f.comps.get((deg, m, j))
                        if a and b:
                            _add_into(acc, alg.mul_vec(a, b))
                dX = X.diff(deg)
                if dX is not None:
                    for m in range(len(X.term(deg + 1))):
                        a, b = f.comps.get((deg + 1, i, m)), dX[m][j]
                        if a and b:
                            _add_into(acc, alg.mul_vec(a, b), -sign)
                if acc:
                    return False
    return True


# ------------------------------------------------------------------ Hom complex

class HomComplex:
    """``Hom^n(X, Y) = prod_k Hom(X^k, Y^{k+n})`` with ``D f = d_Y f - (-1)^n f d_X``."""

    def __init__(self, alg: AlgebraBasis, X: ProjComplex, Y: ProjComplex):
        self.alg, self.X, self.Y = alg, X, Y
        self._coords: dict[int, tuple[list, dict]] = {}
        self._cols: dict[int, list] = {}
        self._ech: dict[int, Echelon] = {}
        self._spaces: dict[int, "HomSpace"] = {}
        self._prod: dict = {}

    def range(self) -> range:
        if self.X.is_zero or self.Y.is_zero:
            return range(0)
        return range(self.Y.lo - self.X.hi, self.Y.hi - self.X.lo + 1)

    def coords(self, n: int):
        hit = self._coords.get(n)
        if hit is not None:
            return hit
        alg, X, Y = self.alg, self.X, self.Y
        lab = []
        for k in X.degrees():
            src, tgt = X.term(k), Y.term(k + n)
            for i, v in enumerate(tgt):
                for j, u in enumerate(src):
                    for w in alg.block(v, u):
                        lab.append((k, i, j, w))
        idx = {c: t for t, c in enumerate(lab)}
        self._coords[n] = (lab, idx)
        return lab, idx

    def _left(self, a: dict, w: int) -> dict:
        key = (id(a), w, 0)
        hit = self._prod.get(key)
        if hit is None:
            hit = self._prod[key] = self.alg.mul_vec(a, {w: 1})
        return hit

    def _right(self, w: int, b: dict) -> dict:
        key = (id(b), w, 1)
        hit = self._prod.get(key)
        if hit is None:
            hit = self._prod[key] = self.alg.mul_vec({w: 1}, b)
        return hit

    def differential_columns(self, n: int) -> list[dict]:
        """Images ``D(unit coordinate)`` in ``Hom^{n+1}``."""
        hit = self._cols.get(n)
        if hit is not None:
            return hit
        X, Y = self.X, self.Y
        lab, _ = self.coords(n)
        _, tidx = self.coords(n + 1)
        sign = -1 if n % 2 else 1
        cols = []
        left, right = self._left, self._right
        for (k, i, j, w) in lab:
            img: dict = {}
            outY = Y.out_entries(k + n)
            if outY:
                for i2, a in outY[i]:
                    for ww, c in left(a, w).items():
                        t = tidx[(k, i2, j, ww)]
                        img[t] = img.get(t, 0) + c
            inX = X.in_entries(k)
            if inX:
                for j2, b in inX[j]:
                    for ww, c in right(w, b).items():
                        t = tidx[(k - 1, i, j2, ww)]
                        img[t] = img.get(t, 0) - sign * c
            cols.append({t: c for t, c in img.items() if c})
        self._cols[n] = cols
        return cols

    def echelon(self, n: int) -> Echelon:
        """Row echelon form of ``D_n`` (rows indexed by ``Hom^{n+1}`` coordinates)."""
        hit = self._ech.get(n)
        if hit is not None:
            return hit
        rows: dict = {}
        for c, img in enumerate(self.differential_columns(n)):
            for t, x in img.items():
                rows.setdefault(t, {})[c] = x
        ech = Echelon()
        for r in rows.values():
            ech.add(to_int_row(r))
        self._ech[n] = ech
        return ech

    def boundaries(self, n: int) -> list[dict]:
        return [c for c in self.differential_columns(n - 1) if c]

    def dim(self, n: int) -> int:
        """``dim H^n = dim Hom^n - rank D_n - rank D_{n-1}``."""
        lab, _ = self.coords(n)
        if not lab:
            return 0
        r_in = self.echelon(n - 1).rank if self.coords(n - 1)[0] else 0
        return len(lab) - self.echelon(n).rank - r_in

    def to_map(self, n: int, vec: dict) -> ChainMap:
        lab, _ = self.coords(n)
        comps: dict = {}
        for t, c in vec.items():
            k, i, j, w = lab[t]
            comps.setdefault((k, i, j), {})[w] = comps.get((k, i, j), {}).get(w, 0) + c
        return ChainMap(self.X, self.Y, n, {k: v for k, v in comps.items() if v})

    def to_vec(self, n: int, f: ChainMap) -> dict:
        _, idx = self.coords(n)
        out = {}
        for (k, i, j), x in f.comps.items():
            for w, c in x.items():
                if c:
                    out[idx[(k, i, j, w)]] = c
        return out


class HomSpace:
    """``Hom_K(X, Y[n])`` with a chosen basis of chain maps modulo homotopy.

    A cycle is determined by its values on the free (non-pivot) columns of
    ``D_n``; homotopy classes are the free-coordinate space modulo the
    projected boundaries, whose non-pivot columns index the chosen basis.
    """

    def __init__(self, hc: HomComplex, n: int):
        self.hc, self.n = hc, n
        self._ker = hc.echelon(n)
        lab, _ = hc.coords(n)
        self.free = [c for c in range(len(lab)) if c not in self._ker.pivots]
        fset = set(self.free)
        self._bnd = Echelon()
        if hc.coords(n - 1)[0]:
            for col in hc.boundaries(n):
                proj = {k: x for k, x in col.items() if k in fset}
                if proj:
                    self._bnd.add(to_int_row(proj))
        self.chosen = [c for c in self.free if c not in self._bnd.pivots]
        self._basis: list | None = None

    @property
    def dim(self) -> int:
        return len(self.chosen)

    @property
    def basis(self) -> list[dict]:
        if self._basis is None:
            self._basis = [_clean(back_substitute(self._ker, {c: 1})) for c in self.chosen]
        return self._basis

    def maps(self) -> list[ChainMap]:
        return [self.hc.to_map(self.n, v) for v in self.basis]

    def coordinates(self, f: ChainMap) -> list[Fraction]:
        """Coefficients of the cycle ``f`` in :attr:`basis` modulo homotopy."""
        vec = self.hc.to_vec(self.n, f)
        fset = self._free_set()
        proj = {k: x for k, x in vec.items() if k in fset}
        r = remainder(self._bnd, proj)
        return [r.get(c, Fraction(0)) for c in self.chosen]

    def _free_set(self) -> set:
        fs = getattr(self, "_fs", None)
        if fs is None:
            fs = self._fs = set(self.free)
        return fs


_HC_CACHE: OrderedDict = OrderedDict()
HC_CACHE_SIZE = 48


_HC_LOCK = threading.Lock()


def hom_complex(alg: AlgebraBasis, X: ProjComplex, Y: ProjComplex) -> HomComplex:
    """Shared :class:`HomComplex` for a pair (small LRU; keeps its keys alive)."""
    key = (id(alg), id(X), id(Y))
    with _HC_LOCK:
        hit = _HC_CACHE.get(key)
        if hit is not None and hit.alg is alg and hit.X is X and hit.Y is Y:
            _HC_CACHE.move_to_end(key)
            return hit
        hc = HomComplex(alg, X, Y)
        _HC_CACHE[key] = hc
        while len(_HC_CACHE) > HC_CACHE_SIZE:
            _HC_CACHE.popitem(last=False)
        return hc


def hom_space(alg: AlgebraBasis, X: ProjComplex, Y: ProjComplex, n: int = 0) -> HomSpace:
    hc = hom_complex(alg, X, Y)
    sp = hc._spaces.get(n)
    if sp is None:
        sp = hc._spaces[n] = HomSpace(hc, n)
    return sp


def hom_dim(alg: AlgebraBasis, X: ProjComplex, Y: ProjComplex, shift: int = 0) -> int:
    return hom_complex(alg, X, Y).dim(shift)


def hom_profile(alg: AlgebraBasis, X: ProjComplex, Y: ProjComplex) -> dict[int, int]:
    hc = hom_complex(alg, X, Y)
    return {n: hc.dim(n) for n in hc.range()}


# ------------------------------------------------------------------ minimization

def _unit_inverse(alg: AlgebraBasis, a: dict, v) -> dict:
    """Inverse of a unit ``a`` of the local ring ``e_v A e_v``."""
    e = alg.idem[v]
    lam = a.get(e, 0)
    if not lam:
        raise ValueError("element is not a unit")
    inv_l = 1 / Fraction(lam)
    nil = {k: -c * inv_l for k, c in a.items() if k != e}
    out = {e: inv_l}
    power = {e: Fraction(1)}
    while True:
        power = alg.mul_vec(power, nil)
        if not power:
            break
        _add_into(out, {k: c * inv_l for k, c in power.items()})
    return out


def minimize(alg: AlgebraBasis, X: ProjComplex) -> ProjComplex:
    """Cancel unit entries of the differential (Gaussian elimination).

    Summands keep their original positions as ids; entries are stored both
    by row and by column so each cancellation only touches the affected
    row and column.  Candidate units are visited in ``(degree, col, row)``
    order for deterministic output.
    """
    nd = len(X.diffs)
    verts = [dict(enumerate(t)) for t in X.terms]
    rows: list[dict] = []
    cols: list[dict] = []
    heap: list = []
    for k, d in enumerate(X.diffs):
        r = {i: {} for i in verts[k + 1]}
        c = {j: {} for j in verts[k]}
        for i, row in enumerate(d):
            for j, e in enumerate(row):
                if e:
                    r[i][j] = c[j][i] = dict(e)
                    heap.append((k, j, i))
        rows.append(r)
        cols.append(c)
    heapify(heap)

    def put(k, i, j, e):
        if e:
            rows[k][i][j] = cols[k][j][i] = e
            heappush(heap, (k, j, i))
        else:
            rows[k][i].pop(j, None)
            cols[k][j].pop(i, None)

    while heap:
        k, j0, i0 = heappop(heap)
        if j0 not in verts[k] or i0 not in verts[k + 1]:
            continue
        v = verts[k][j0]
        a = rows[k][i0].get(j0)
        if v != verts[k + 1][i0] or not a or not a.get(alg.idem[v]):
            continue
        ainv = _unit_inverse(alg, a, v)
        rowb = [(j, b) for j, b in rows[k][i0].items() if j != j0]
        colc = [(i, c) for i, c in cols[k][j0].items() if i != i0]
        for i, c in colc:
            ca = alg.mul_vec(c, ainv)
            if not ca:
                continue
            for j, b in rowb:
                e = dict(rows[k][i].get(j, {}))
                _add_into(e, alg.mul_vec(ca, b), -1)
                put(k, i, j, e)
        for j in rows[k].pop(i0):
            cols[k][j].pop(i0, None)
        for i in cols[k].pop(j0):
            rows[k][i].pop(j0, None)
        if k > 0:
            for j in rows[k - 1].pop(j0):
                cols[k - 1][j].pop(j0, None)
        if k + 1 < nd:
            for i in cols[k + 1].pop(i0):
                rows[k + 1][i].pop(i0, None)
        del verts[k][j0]
        del verts[k + 1][i0]

    order = [sorted(vs) for vs in verts]
    terms = [[verts[k][t] for t in order[k]] for k in range(len(verts))]
    diffs = []
    for k in range(nd):
        diffs.append([[rows[k][i].get(j, {}) for j in order[k]] for i in order[k + 1]])
    return _trim(X.lo, terms, diffs)


def cone(alg: AlgebraBasis, f: ChainMap) -> ProjComplex:
    """Mapping cone of a degree-0 map: ``C^k = X^{k+1} (+) Y^k``, ``d = [[-d_X, 0], [f, d_Y]]``."""
    assert f.shift == 0
    X, Y = f.source, f.target
    if X.is_zero:
        return Y
    lo = min(X.lo - 1, Y.lo)
    hi = max(X.hi - 1, Y.hi)
    terms, diffs = [], []
    for deg in range(lo, hi + 1):
        terms.append(tuple(X.term(deg + 1)) + tuple(Y.term(deg)))
    for deg in range(lo, hi):
        xs, ys = X.term(deg + 1), Y.term(deg)
        xt, yt = X.term(deg + 2), Y.term(deg + 1)
        mat = [[{} for _ in range(len(xs) + len(ys))] for _ in range(len(xt) + len(yt))]
        dX = X.diff(deg + 1)
        if dX is not None:
            for i in range(len(xt)):
                for j in range(len(xs)):
                    if dX[i][j]:
                        mat[i][j] = {w: -c for w, c in dX[i][j].items()}
        for (k, i, j), x in f.comps.items():
            if k == deg + 1 and x:
                mat[len(xt) + i][j] = dict(x)
        dY = Y.diff(deg)
        if dY is not None:
            for i in range(len(yt)):
                for j in range(len(ys)):
                    if dY[i][j]:
                        mat[len(xt) + i][len(xs) + j] = dict(dY[i][j])
        diffs.append(mat)
    return _trim(lo, terms, diffs)


def cone_minimize(alg: AlgebraBasis, f: ChainMap) -> ProjComplex:
    return minimize(alg, cone(alg, f))


def cocone(alg: AlgebraBasis, g: ChainMap) -> ProjComplex:
    return cone(alg, g).shift(-1)


def map_into_sum(parts: Sequence[ProjComplex], maps: Sequence[ChainMap], X: ProjComplex) -> ChainMap:
    """Column ``X -> (+) parts`` whose components are ``maps``."""
    comps: dict = {}
    for deg in range(min([X.lo] + [p.lo for p in parts]), max([X.hi] + [p.hi for p in parts]) + 1):
        offs = summand_offsets(parts, deg)
        for b, f in enumerate(maps):
            for (k, i, j), x in f.comps.items():
                if k == deg and x:
                    comps[(k, offs[b] + i, j)] = dict(x)
    return ChainMap(X, direct_sum(parts), 0, comps)


def map_from_sum(parts: Sequence[ProjComplex], maps: Sequence[ChainMap], X: ProjComplex) -> ChainMap:
    """Row ``(+) parts -> X`` whose components are ``maps``."""
    comps: dict = {}
    for deg in range(min([X.lo] + [p.lo for p in parts]), max([X.hi] + [p.hi for p in parts]) + 1):
        offs = summand_offsets(parts, deg)
        for b, f in enumerate(maps):
            for (k, i, j), x in f.comps.items():
                if k == deg and x:
                    comps[(k, i, offs[b] + j)] = dict(x)
    return ChainMap(direct_sum(parts), X, 0, comps)


# ------------------------------------------------------------------ endomorphisms

@dataclass(eq=False)
class EndData:
    space: HomSpace
    structure: list  # structure[a][b] = coords of basis[a] o basis[b]
    radical: list  # basis of the Jacobson radical, as coefficient vectors

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def top_dim(self) -> int:
        return self.dim - len(self.radical)


def _trace_radical(structure, m: int) -> list[dict]:
    """Radical of a finite-dimensional algebra in characteristic 0: kernel of the trace form."""
    if m == 0:
        return []
    # L_c has matrix entries structure[c][b][a] (c * b = sum_a ...)
    def trace_of(coeffs):
        t = Fraction(0)
        for b in range(m):
            # coefficient of basis b in (x * basis_b)
            for c, x in coeffs.items():
                if x:
                    t += x * structure[c][b][b]
        return t

    gram = []
    for a in range(m):
        row = {}
        for b in range(m):
            prod = structure[a][b]
            val = trace_of({c: x for c, x in enumerate(prod) if x})
            if val:
                row[b] = val
        gram.append(row)
    return nullspace([r for r in gram if r], m)


def end_data(alg: AlgebraBasis, X: ProjComplex) -> EndData:
    key = ("end", id(alg))
    hit = X._sparse.get(key)
    if hit is not None and hit.space.hc.alg is alg:
        return hit
    sp = hom_space(alg, X, X, 0)
    maps = sp.maps()
    m = len(maps)
    structure = [[sp.coordinates(compose(alg, maps[a], maps[b])) for b in range(m)] for a in range(m)]
    out = X._sparse[key] = EndData(sp, structure, _trace_radical(structure, m))
    return out


def is_local(alg: AlgebraBasis, X: ProjComplex) -> bool:
    return end_data(alg, X).top_dim == 1


def radical_maps(ed: EndData) -> list[ChainMap]:
    maps = ed.space.maps()
    out = []
    for r in ed.radical:
        comps: dict = {}
        for a, c in r.items():
            for key, x in maps[a].comps.items():
                acc = comps.setdefault(key, {})
                _add_into(acc, x, c)
        out.append(ChainMap(ed.space.hc.X, ed.space.hc.Y, 0, {k: v for k, v in comps.items() if v}))
    return out


# ------------------------------------------------------------------ silting nodes

@dataclass(eq=False)
class SiltingNode:
    summands: list
    g_matrix: tuple  # rows = vertices, columns = summands
    hom_profile: dict
    caveat: bool = False  # some summand has End/rad of dimension > 1 over Q
    certified: bool = True  # obtained from A by mutation
    pairs: dict = field(default_factory=dict, repr=False)  # (a, b) -> profile of Hom(T_a, T_b[n])

    @property
    def key(self) -> tuple:
        cols = list(zip(*self.g_matrix)) if self.g_matrix else []
        return tuple(sorted(cols))

    @property
    def fine_key(self) -> tuple:
        """g-matrix key refined by the degreewise terms of each (minimal) summand.

        Shifts by even degrees leave g-vectors unchanged, so beyond two-term
        intervals the g-matrix alone cannot tell ``A`` from ``A[2]``.
        """
        cols = list(zip(*self.g_matrix)) if self.g_matrix else []
        sig = []
        for c, X in zip(cols, self.summands):
            terms = tuple(tuple(sorted(map(str, t))) for t in X.terms)
            sig.append((c, X.lo, terms))
        return tuple(sorted(sig, key=repr))

    @property
    def object(self) -> ProjComplex:
        return direct_sum(self.summands)

    @property
    def is_presilting(self) -> bool:
        return all(d == 0 for n, d in self.hom_profile.items() if n > 0)

    @property
    def is_tilting(self) -> bool:
        return all(d == 0 for n, d in self.hom_profile.items() if n != 0)


def g_matrix(alg: AlgebraBasis, summands: Sequence[ProjComplex]) -> tuple:
    vs = alg.quiver.vertices
    if len(summands) != len(vs):
        raise SizeMismatch(f"{len(summands)} summands for {len(vs)} vertices")
    cols = [X.class_vector(vs) for X in summands]
    return tuple(tuple(c[i] for c in cols) for i in range(len(vs)))


def det_int(m) -> int:
    from .invariants import _det

    return int(_det(m))


def pair_profiles(alg: AlgebraBasis, summands: Sequence[ProjComplex], known: dict | None = None) -> dict:
    """``{(a, b): {n: dim Hom(T_a, T_b[n])}}``, reusing entries of ``known``."""
    known = known or {}
    out = {}
    for a, X in enumerate(summands):
        for b, Y in enumerate(summands):
            out[(a, b)] = known[(a, b)] if (a, b) in known else hom_profile(alg, X, Y)
    return out


def _total(pairs: dict) -> dict[int, int]:
    prof: dict[int, int] = {}
    for p in pairs.values():
        for n, d in p.items():
            prof[n] = prof.get(n, 0) + d
    return dict(sorted(prof.items()))


def object_profile(alg: AlgebraBasis, summands: Sequence[ProjComplex]) -> dict[int, int]:
    """``dim Hom(T, T[n])`` for every ``n`` where the Hom complex is nonzero."""
    return _total(pair_profiles(alg, summands))


def presilting_profile(alg: AlgebraBasis, summands) -> dict:
    if isinstance(summands, ProjComplex):
        summands = [summands]
    prof = object_profile(alg, summands)
    pres = all(d == 0 for n, d in prof.items() if n > 0)
    pret = pres and all(d == 0 for n, d in prof.items() if n < 0)
    return {"profile": prof, "presilting": pres, "pretilting": pret}


def silting_leq(alg: AlgebraBasis, T, U) -> bool:
    """``T >= U``: ``Hom(T, U[i]) = 0`` for all ``i > 0``."""
    Ts = T.summands if isinstance(T, SiltingNode) else ([T] if isinstance(T, ProjComplex) else list(T))
    Us = U.summands if isinstance(U, SiltingNode) else ([U] if isinstance(U, ProjComplex) else list(U))
    for X in Ts:
        for Y in Us:
            hc = hom_complex(alg, X, Y)
            for n in hc.range():
                if n > 0 and hc.dim(n):
                    return False
    return True


def base_node(alg: AlgebraBasis, shift: int = 0) -> SiltingNode:
    """The silting object ``A[shift]``."""
    return make_node(alg, [stalk([v]).shift(shift) for v in alg.quiver.vertices])


def make_node(alg: AlgebraBasis, summands: Sequence[ProjComplex], certified: bool = True,
              check_local: bool = True, profile: bool = True,
              reuse: tuple[SiltingNode, int] | None = None) -> SiltingNode:
    """Assemble a node; ``reuse=(old, k)`` keeps the pair data of ``old`` away from summand ``k``."""
    summands = list(summands)
    caveat = False
    if check_local:
        caveat = any(end_data(alg, X).top_dim != 1 for X in summands)
    pairs: dict = {}
    if profile:
        known = {}
        if reuse is not None:
            old, k = reuse
            known = {p: v for p, v in old.pairs.items() if k not in p}
        pairs = pair_profiles(alg, summands, known)
    return SiltingNode(summands, g_matrix(alg, summands), _total(pairs), caveat, certified, pairs)


# ------------------------------------------------------------------ mutation

def _approximation(alg: AlgebraBasis, X: ProjComplex, others: Sequence[ProjComplex], left: bool):
    """Minimal left (``X -> M'``) or right (``M' -> X``) ``add(others)``-approximation."""
    homs = []
    for Y in others:
        homs.append(hom_space(alg, X, Y, 0) if left else hom_space(alg, Y, X, 0))
    ends = [end_data(alg, Y) for Y in others]
    chosen_parts, chosen_maps = [], []
    for b, Y in enumerate(others):
        sp = homs[b]
        if sp.dim == 0:
            continue
        rad = Subspace()
        for c, Z in enumerate(others):
            if homs[c].dim == 0:
                continue
            if c == b:
                gens = radical_maps(ends[b])
            else:
                gens = (hom_space(alg, Z, Y, 0) if left else hom_space(alg, Y, Z, 0)).maps()
            for g in gens:
                for h in homs[c].maps():
                    comp = compose(alg, g, h) if left else compose(alg, h, g)
                    rad.add(_nz(sp.coordinates(comp)))
        for t, f in enumerate(sp.maps()):
            if rad.add({t: 1}):
                chosen_parts.append(Y)
                chosen_maps.append(f)
    return chosen_parts, chosen_maps


def left_mutation(alg: AlgebraBasis, node: SiltingNode, k: int, verify: bool = True) -> SiltingNode:
    """``mu^-``: replace summand ``k`` by the cone of its minimal left approximation."""
    if not node.certified:
        from .errors import NotCertifiedSilting

        raise NotCertifiedSilting("mutation needs a silting object certified by construction")
    X = node.summands[k]
    others = [Y for t, Y in enumerate(node.summands) if t != k]
    parts, maps = _approximation(alg, X, others, left=True)
    f = map_into_sum(parts, maps, X)
    Y = cone_minimize(alg, f)
    if Y.is_zero:
        raise ApproximationFailure("mutation produced a zero summand")
    summands = list(node.summands)
    summands[k] = Y
    return make_node(alg, summands, True, check_local=verify, profile=verify, reuse=(node, k))


def right_mutation(alg: AlgebraBasis, node: SiltingNode, k: int, verify: bool = True) -> SiltingNode:
    """``mu^+``: replace summand ``k`` by the cocone of its minimal right approximation."""
    if not node.certified:
        from .errors import NotCertifiedSilting

        raise NotCertifiedSilting("mutation needs a silting object certified by construction")
    X = node.summands[k]
    others = [Y for t, Y in enumerate(node.summands) if t != k]
    parts, maps = _approximation(alg, X, others, left=False)
    g = map_from_sum(parts, maps, X)
    Y = minimize(alg, cocone(alg, g))
    if Y.is_zero:
        raise ApproximationFailure("mutation produced a zero summand")
    summands = list(node.summands)
    summands[k] = Y
    return make_node(alg, summands, True, check_local=verify, profile=verify, reuse=(node, k))


def isomorphic(alg: AlgebraBasis, X: ProjComplex, Y: ProjComplex) -> bool:
    """Indecomposable ``X``, ``Y``: isomorphic iff some ``g o f`` is a unit of ``End(X)``."""
    if X.class_vector(alg.quiver.vertices) != Y.class_vector(alg.quiver.vertices):
        return False
    fs = hom_space(alg, X, Y, 0).maps()
    gs = hom_space(alg, Y, X, 0).maps()
    if not fs or not gs:
        return False
    ed = end_data(alg, X)
    rad = Subspace([{i: c for i, c in r.items()} for r in ed.radical])
    for f in fs:
        for g in gs:
            coords = ed.space.coordinates(compose(alg, g, f))
            vec = {i: c for i, c in enumerate(coords) if c}
            if vec and not rad.contains(vec):
                return True
    return False


def nodes_isomorphic(alg: AlgebraBasis, T: SiltingNode, U: SiltingNode) -> bool:
    if T.key != U.key or len(T.summands) != len(U.summands):
        return False
    left = list(U.summands)
    for X in T.summands:
        hit = next((t for t, Y in enumerate(left) if isomorphic(alg, X, Y)), None)
        if hit is None:
            return False
        left.pop(hit)
    return True


# ------------------------------------------------------------------ End(T)

@dataclass
class EndoAlgebra:
    dimension: int
    vertices: int
    arrows: dict  # (a, b) -> number of arrows a -> b
    radical_square_zero: bool
    block_dims: dict


def endo_algebra(alg: AlgebraBasis, summands: Sequence[ProjComplex]) -> EndoAlgebra:
    """``End_K(T)`` for presilting ``T``; arrow ``a -> b`` counts irreducible maps ``T_b -> T_a``."""
    summands = list(summands)
    n = len(summands)
    for a in range(n):
        for b in range(a + 1, n):
            if isomorphic(alg, summands[a], summands[b]):
                raise NotBasic(f"summands {a} and {b} are isomorphic")
    spaces = {(a, b): hom_space(alg, summands[b], summands[a], 0) for a in range(n) for b in range(n)}
    ends = [end_data(alg, X) for X in summands]
    for a, ed in enumerate(ends):
        if ed.top_dim != 1:
            raise NotBasic(f"summand {a} is not indecomposable over Q")
    maps = {k: sp.maps() for k, sp in spaces.items()}
    # radical generators per block: off-diagonal blocks entirely, diagonal: radical of End
    rad_maps = {}
    for a in range(n):
        for b in range(n):
            rad_maps[(a, b)] = radical_maps(ends[a]) if a == b else maps[(a, b)]
    arrows = {}
    rsz = True
    total = 0
    for a in range(n):
        for b in range(n):
            sp = spaces[(a, b)]
            total += sp.dim
            sq = Subspace()
            for c in range(n):
                for g in rad_maps[(a, c)]:  # T_c -> T_a
                    for h in rad_maps[(c, b)]:  # T_b -> T_c
                        sq.add(_nz(sp.coordinates(compose(alg, g, h))))
            rad_dim = len(rad_maps[(a, b)])
            sq_dim = sq.dim
            if sq_dim:
                rsz = False
            if rad_dim - sq_dim:
                arrows[(a, b)] = rad_dim - sq_dim
    return EndoAlgebra(total, n, arrows, rsz, {k: sp.dim for k, sp in spaces.items()})
