"""Independent two-term silting count by brute force over g-vectors.

Works directly with generic projective presentations ``P1 -> P0`` over a
prime field and never touches the homotopy or explorer modules.  A vector
``g`` is rigid when the generic presentation with ``[P0] - [P1] = g`` has
``Hom(X, X[1]) = 0``; rigid vectors that split as a sum of two compatible
rigid vectors are dropped, and the silting objects are the cliques of
``n`` pairwise compatible indecomposables.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from siltkit.algebra import AlgebraBasis, basis

P = 2_147_483_647


def _mod(c) -> int:
    c = Fraction(c)
    return c.numerator * pow(c.denominator, -1, P) % P


def _rank(rows: list[dict]) -> int:
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {k: v % P for k, v in row.items() if v % P}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                inv = pow(r[c], -1, P)
                pivots[c] = {k: v * inv % P for k, v in r.items()}
                break
            f = r[c]
            for k, v in p.items():
                nv = (r.get(k, 0) - f * v) % P
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


class Brute:
    def __init__(self, alg: AlgebraBasis, seed: int = 11):
        self.alg = alg
        self.vs = list(alg.quiver.vertices)
        self.rng = random.Random(seed)
        self.mul = {}
        words = range(alg.dimension)
        for i in words:
            for j in words:
                m = alg.mul(i, j)
                if m:
                    self.mul[(i, j)] = {k: _mod(c) for k, c in m.items()}
        self.generic: dict[tuple, tuple] = {}

    def times(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul.get((i, j), {}).items():
                    out[k] = (out.get(k, 0) + a * b * c) % P
        return {k: v for k, v in out.items() if v}

    def presentation(self, g: tuple):
        """Terms and a random differential for the generic object of class ``g``."""
        hit = self.generic.get(g)
        if hit is None:
            p0 = [v for v, x in zip(self.vs, g) for _ in range(max(x, 0))]
            p1 = [v for v, x in zip(self.vs, g) for _ in range(max(-x, 0))]
            d = [[{k: self.rng.randrange(1, P) for k in self.alg.block(t, s)} for s in p1] for t in p0]
            hit = self.generic[g] = (p1, p0, d)
        return hit

    def ext1(self, gx: tuple, gy: tuple) -> int:
        """``dim Hom(X, Y[1])`` for generic ``X``, ``Y``."""
        p1x, p0x, dx = self.presentation(gx)
        p1y, p0y, dy = self.presentation(gy)
        target = [(t, s, k) for t, u in enumerate(p0y) for s, w in enumerate(p1x)
                  for k in self.alg.block(u, w)]
        if not target:
            return 0
        pos = {x: i for i, x in enumerate(target)}
        rows = []
        # b o dX for b: P0X -> P0Y
        for t, u in enumerate(p0y):
            for m, w in enumerate(p0x):
                for k in self.alg.block(u, w):
                    row: dict = {}
                    for s in range(len(p1x)):
                        for kk, c in self.times({k: 1}, dx[m][s]).items():
                            row[pos[(t, s, kk)]] = (row.get(pos[(t, s, kk)], 0) + c) % P
                    rows.append(row)
        # dY o a for a: P1X -> P1Y
        for m, u in enumerate(p1y):
            for s, w in enumerate(p1x):
                for k in self.alg.block(u, w):
                    row = {}
                    for t in range(len(p0y)):
                        for kk, c in self.times(dy[t][m], {k: 1}).items():
                            row[pos[(t, s, kk)]] = (row.get(pos[(t, s, kk)], 0) + c) % P
                    rows.append(row)
        return len(target) - _rank(rows)

    def compatible(self, g: tuple, h: tuple) -> bool:
        return self.ext1(g, h) == 0 and self.ext1(h, g) == 0


def indecomposable_rigid(b: Brute, bound: int) -> list[tuple]:
    n = len(b.vs)
    rigid = [g for g in itertools.product(range(-bound, bound + 1), repeat=n)
             if any(g) and b.ext1(g, g) == 0]
    rset = set(rigid)
    out = []
    for g in rigid:
        split = False
        for h in rigid:
            rest = tuple(x - y for x, y in zip(g, h))
            if rest in rset and all(x * y >= 0 for x, y in zip(g, h)) and b.compatible(h, rest):
                split = True
                break
        if not split:
            out.append(g)
    return out


def two_term_silting(pres, bound: int = 2) -> set[tuple]:
    """Keys (sorted g-vector tuples) of all basic two-term silting objects."""
    b = Brute(basis(pres))
    n = len(b.vs)
    ind = indecomposable_rigid(b, bound)
    compat = {g: {h for h in ind if h != g and b.compatible(g, h)} for g in ind}
    found: set[tuple] = set()

    def grow(clique: list, cands: list):
        if len(clique) == n:
            found.add(tuple(sorted(clique)))
            return
        for i, g in enumerate(cands):
            grow(clique + [g], [h for h in cands[i + 1:] if h in compat[g]])

    grow([], ind)
    return found
