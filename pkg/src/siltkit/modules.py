"""Right modules as quiver representations, and minimal projective resolutions.

A representation stores, for each arrow ``a: u -> w``, a matrix of shape
``dims[w] x dims[u]`` acting on column vectors: ``m . a = A_a m``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraBasis, AlgebraPresentation, make_path
from .linalg import Subspace, nullspace, solve_in_span

Vec = list  # dense list of Fractions


def _zero(n):
    return [Fraction(0)] * n


def _matvec(A, v):
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


@dataclass
class Representation:
    dims: dict
    action: dict = field(default_factory=dict)
    name: str = ""

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def apply_arrow(self, aid: str, vec: Vec, quiver) -> Vec:
        a = quiver.arrow_map[aid]
        mat = self.action.get(aid)
        if mat is None:
            return _zero(self.dims[a.target])
        return _matvec(mat, vec)

    def apply_path(self, arrows, vertex, vec: Vec, quiver=None) -> Vec:
        if quiver is None:
            quiver = self._quiver
        v = list(vec)
        for aid in arrows:
            v = self.apply_arrow(aid, v, quiver)
        return v

    def bind(self, quiver) -> "Representation":
        self._quiver = quiver
        return self

    def check(self, pres: AlgebraPresentation) -> bool:
        """True when every relation acts as zero."""
        q = pres.quiver
        for r in pres.relations:
            src, tgt = r.endpoints
            n = self.dims.get(src, 0)
            for k in range(n):
                e = _zero(n)
                e[k] = Fraction(1)
                acc = _zero(self.dims.get(tgt, 0))
                for w, c in r.terms.items():
                    img = self.apply_path(w.arrows, src, e, q)
                    acc = [x + c * y for x, y in zip(acc, img)]
                if any(acc):
                    return False
        return True


def _unit(n, k):
    e = _zero(n)
    e[k] = Fraction(1)
    return e


def projective(alg: AlgebraBasis, v) -> Representation:
    """``P(v) = e_v A``: basis at ``u`` is the basis words from ``v`` to ``u``."""
    q = alg.quiver
    dims = {u: alg.block_dim(v, u) for u in q.vertices}
    action = {}
    for a in q.arrows:
        src = alg.block(v, a.source)
        tgt = alg.block(v, a.target)
        pos = {k: i for i, k in enumerate(tgt)}
        ai = alg.index[make_path(q, [a.id])]
        mat = [_zero(len(src)) for _ in tgt]
        for j, p in enumerate(src):
            for k, c in alg.mul(p, ai).items():
                mat[pos[k]][j] += c
        action[a.id] = mat
    return Representation(dims, action, f"P({v})").bind(q)


def injective(alg: AlgebraBasis, v) -> Representation:
    """``I(v) = D(A e_v)`` with the dual basis of the words ending at ``v``."""
    q = alg.quiver
    dims = {u: alg.block_dim(u, v) for u in q.vertices}
    action = {}
    for a in q.arrows:
        src = alg.block(a.source, v)
        tgt = alg.block(a.target, v)
        pos = {k: i for i, k in enumerate(src)}
        ai = alg.index[make_path(q, [a.id])]
        mat = [_zero(len(src)) for _ in tgt]
        for i, qk in enumerate(tgt):
            for k, c in alg.mul(ai, qk).items():
                mat[i][pos[k]] += c
        action[a.id] = mat
    return Representation(dims, action, f"I({v})").bind(q)


def simple(alg: AlgebraBasis, v) -> Representation:
    q = alg.quiver
    dims = {u: (1 if u == v else 0) for u in q.vertices}
    action = {a.id: [_zero(dims[a.source]) for _ in range(dims[a.target])] for a in q.arrows}
    return Representation(dims, action, f"S({v})").bind(q)


def radical_image(M: Representation, quiver, v) -> Subspace:
    sp = Subspace()
    for a in quiver.in_arrows(v):
        mat = M.action.get(a.id)
        if not mat:
            continue
        for j in range(M.dims[a.source]):
            col = {i: mat[i][j] for i in range(M.dims[v]) if mat[i][j]}
            sp.add(col)
    return sp


def top_basis(M: Representation, quiver=None) -> dict:
    """Standard basis vectors completing ``M rad`` to ``M`` at each vertex."""
    quiver = quiver if quiver is not None else M._quiver
    out = {}
    for v in quiver.vertices:
        n = M.dims.get(v, 0)
        if n == 0:
            continue
        sp = radical_image(M, quiver, v)
        chosen = []
        for k in range(n):
            if sp.add({k: Fraction(1)}):
                chosen.append(_unit(n, k))
        if chosen:
            out[v] = chosen
    return out


def top_dims(M: Representation, quiver=None) -> dict:
    return {v: len(vs) for v, vs in top_basis(M, quiver).items()}


def socle_dims(M: Representation, quiver=None) -> dict:
    """``dim soc(M) e_v``: common kernel of the outgoing arrows at ``v``."""
    quiver = quiver if quiver is not None else M._quiver
    out = {}
    for v in quiver.vertices:
        n = M.dims.get(v, 0)
        if n == 0:
            continue
        rows = []
        for a in quiver.out_arrows(v):
            mat = M.action.get(a.id) or []
            for row in mat:
                r = {j: x for j, x in enumerate(row) if x}
                if r:
                    rows.append(r)
        k = len(nullspace(rows, n))
        if k:
            out[v] = k
    return out


@dataclass
class Resolution:
    """Minimal projective resolution ``... -> P_1 -> P_0 -> M``.

    ``terms[k]`` lists the vertices of the indecomposable summands of
    ``P_k``.  ``differentials[k-1]`` is ``d_k: P_k -> P_{k-1}`` as a matrix
    indexed ``[row summand of P_{k-1}][column summand of P_k]`` whose
    entries are algebra vectors ``{basis index: coeff}`` in
    ``e_row A e_col``.
    """

    terms: list
    differentials: list
    truncated: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def _cover_kernel(alg: AlgebraBasis, M: Representation, gens):
    """Kernel of ``(+)_g P(v_g) -> M`` as a representation plus its embedding."""
    q = alg.quiver
    labels = {}
    emb = {}
    dims = {}
    for u in q.vertices:
        lab = [(g, p) for g, (vg, _) in enumerate(gens) for p in alg.block(vg, u)]
        labels[u] = lab
        n = M.dims.get(u, 0)
        rows = [dict() for _ in range(n)]
        for c, (g, p) in enumerate(lab):
            vg, m = gens[g]
            img = M.apply_path(alg.words[p].arrows, vg, m, q)
            for i, x in enumerate(img):
                if x:
                    rows[i][c] = x
        ker = nullspace([r for r in rows if r], len(lab))
        emb[u] = ker
        dims[u] = len(ker)
    action = {}
    for a in q.arrows:
        ai = alg.index[make_path(q, [a.id])]
        src_lab, tgt_lab = labels[a.source], labels[a.target]
        tpos = {lab: i for i, lab in enumerate(tgt_lab)}
        cols = []
        for kv in emb[a.source]:
            img = {}
            for c, x in kv.items():
                g, p = src_lab[c]
                for k, y in alg.mul(p, ai).items():
                    t = tpos[(g, k)]
                    img[t] = img.get(t, 0) + x * y
            img = {k: v for k, v in img.items() if v}
            sol = solve_in_span(emb[a.target], img)
            if sol is None:
                raise AssertionError("kernel is not a submodule")
            cols.append(sol)
        n_t = dims[a.target]
        action[a.id] = [[cols[j][i] for j in range(len(cols))] for i in range(n_t)]
    K = Representation(dims, action).bind(q)
    return K, emb, labels


def min_proj_resolution(alg: AlgebraBasis, M: Representation, cap: int = 20) -> Resolution:
    q = alg.quiver
    if not hasattr(M, "_quiver"):
        M.bind(q)
    tb = top_basis(M, q)
    gens = [(v, vec) for v in q.vertices for vec in tb.get(v, [])]
    terms = [[v for v, _ in gens]]
    diffs = []
    cur = M
    truncated = False
    while True:
        if not gens:
            break
        K, emb, labels = _cover_kernel(alg, cur, gens)
        if K.total_dim == 0:
            break
        if len(terms) > cap:
            truncated = True
            break
        tbk = top_basis(K, q)
        new_gens = [(v, vec) for v in q.vertices for vec in tbk.get(v, [])]
        ncols = len(new_gens)
        nrows = len(gens)
        d = [[{} for _ in range(ncols)] for _ in range(nrows)]
        for j, (w, kvec) in enumerate(new_gens):
            # element of the cover in P coordinates
            pc = {}
            for b, x in enumerate(kvec):
                if x:
                    for c, y in emb[w][b].items():
                        pc[c] = pc.get(c, 0) + x * y
            for c, y in pc.items():
                if y:
                    g, p = labels[w][c]
                    d[g][j][p] = d[g][j].get(p, 0) + y
        diffs.append(d)
        terms.append([v for v, _ in new_gens])
        cur, gens = K, new_gens
    return Resolution(terms, diffs, truncated)

