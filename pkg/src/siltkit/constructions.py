"""Algebra constructions: idempotent truncation and quotient, tensor products,
one-point extensions, standard families and the gradability test."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable

from .algebra import (
    AlgebraBasis,
    AlgebraPresentation,
    Arrow,
    LinComb,
    PathWord,
    Quiver,
    ReductionSystem,
    make_path,
)
from .errors import BadParameters, EmptyComplement, EmptyVertexSet
from .linalg import Subspace, solve_in_span


class ZeroModuleWarning(UserWarning):
    pass


class _Coords:
    """Assigns integer column ids to arbitrary hashable basis labels."""

    def __init__(self):
        self.ids: dict = {}

    def vec(self, elem: dict) -> dict:
        ids = self.ids
        out = {}
        for k, v in elem.items():
            if v:
                c = ids.get(k)
                if c is None:
                    c = ids[k] = len(ids)
                out[c] = v
        return out


@dataclass
class ExtractedPresentation:
    presentation: AlgebraPresentation
    rs: ReductionSystem
    images: dict  # arrow id -> element of the ambient algebra


def present_from_images(
    vertices: list,
    arrows: list[Arrow],
    image: dict[str, dict],
    idempotent: dict[Hashable, dict],
    mul: Callable[[dict, dict], dict],
    name: str = "",
) -> ExtractedPresentation:
    """Presentation of the subalgebra generated by ``image`` inside an ambient algebra.

    Walks the paths of the new quiver in monomial order; a path is standard
    when its image is independent of the images of smaller standard paths.
    Minimal non-standard paths give the rules of the reduced Groebner basis.
    """
    quiver = Quiver(tuple(vertices), tuple(arrows))
    amap = quiver.arrow_map
    coords = _Coords()
    std_images: dict[tuple, list[dict]] = {}
    std_words: dict[tuple, list[tuple]] = {}
    spans: dict[tuple, Subspace] = {}
    standard: set[tuple] = set()
    path_image: dict[tuple, dict] = {}
    rules: dict[tuple, dict[tuple, Fraction]] = {}

    def block(v, w):
        key = (v, w)
        if key not in spans:
            spans[key] = Subspace()
            std_images[key] = []
            std_words[key] = []
        return key

    for v in vertices:
        key = block(v, v)
        vec = coords.vec(idempotent[v])
        spans[key].add(vec)
        std_images[key].append(vec)
        std_words[key].append(())

    frontier = [(a.id,) for a in arrows]
    for w in frontier:
        path_image[w] = image[w[0]]
    while frontier:
        frontier.sort(key=lambda w: tuple(quiver.arrow_rank[a] for a in w))
        nxt = []
        for w in frontier:
            if len(w) > 1 and (w[1:] not in standard):
                continue
            src, tgt = amap[w[0]].source, amap[w[-1]].target
            key = block(src, tgt)
            vec = coords.vec(path_image[w])
            if spans[key].add(vec):
                standard.add(w)
                std_images[key].append(vec)
                std_words[key].append(w)
                for a in quiver.out_arrows(tgt):
                    w2 = w + (a.id,)
                    path_image[w2] = mul(path_image[w], image[a.id])
                    nxt.append(w2)
            else:
                sol = solve_in_span(std_images[key], vec)
                if sol is None:  # pragma: no cover - guarded by Subspace.add
                    raise AssertionError("span membership and solve disagree")
                tail = {}
                for c, sw in zip(sol, std_words[key]):
                    if c:
                        tail[sw] = c
                if () in tail:
                    raise BadParameters("generators do not lie in the radical; not a bound quiver presentation")
                rules[w] = tail
        frontier = nxt
    rels = []
    for lead, tail in rules.items():
        lw = PathWord(amap[lead[0]].source, amap[lead[-1]].target, lead)
        terms = {lw: Fraction(1)}
        for tw, c in tail.items():
            terms[PathWord(lw.source, lw.target, tw)] = -c
        rels.append(LinComb(terms))
    pres = AlgebraPresentation(quiver, tuple(rels), name)
    rs = ReductionSystem(quiver, rules, True, presentation=pres)
    return ExtractedPresentation(pres, rs, image)


# ---------------------------------------------------------------- truncation

def _radical_square_span(alg: AlgebraBasis, S) -> dict[tuple, Subspace]:
    spans: dict[tuple, Subspace] = {}
    rad = [k for k, w in enumerate(alg.words) if w.arrows and w.source in S and w.target in S]
    by_source: dict = {}
    for k in rad:
        by_source.setdefault(alg.words[k].source, []).append(k)
    for i in rad:
        wi = alg.words[i]
        for j in by_source.get(wi.target, ()):
            prod = alg.mul(i, j)
            if prod:
                key = (wi.source, alg.words[j].target)
                spans.setdefault(key, Subspace()).add(prod)
    return spans


def truncation_data(alg: AlgebraBasis, S, name: str = "") -> ExtractedPresentation:
    """Presentation of ``e A e`` together with the images of its arrows in ``A``."""
    S = [v for v in alg.quiver.vertices if v in set(S)]
    if not S:
        raise EmptyVertexSet("idempotent truncation needs a nonempty vertex set")
    Sset = set(S)
    rad2 = _radical_square_span(alg, Sset)
    arrows: list[Arrow] = []
    image: dict[str, dict] = {}
    used = set()
    for k, w in enumerate(alg.words):  # already in monomial order
        if not w.arrows or w.source not in Sset or w.target not in Sset:
            continue
        key = (w.source, w.target)
        sp = rad2.setdefault(key, Subspace())
        if sp.add({k: Fraction(1)}):
            aid = "_".join(w.arrows)
            while aid in used:
                aid += "'"
            used.add(aid)
            arrows.append(Arrow(aid, w.source, w.target))
            image[aid] = {k: Fraction(1)}
    idem = {v: {alg.idem[v]: Fraction(1)} for v in S}
    return present_from_images(S, arrows, image, idem, alg.mul_vec, name)


def truncate_idempotent(pres: AlgebraPresentation | AlgebraBasis, S, name: str | None = None) -> AlgebraPresentation:
    alg = pres if isinstance(pres, AlgebraBasis) else AlgebraBasis(pres)
    base = alg.presentation.name
    nm = name if name is not None else f"e({base})e"
    return truncation_data(alg, S, nm).presentation


# ------------------------------------------------------------------ quotient

def quotient_idempotent(pres: AlgebraPresentation, S, name: str | None = None) -> AlgebraPresentation:
    """Presentation of ``A / A e A`` for ``e`` the sum of the vertices in ``S``."""
    Sset = set(S)
    q = pres.quiver
    keep = [v for v in q.vertices if v not in Sset]
    if not keep:
        raise EmptyComplement("quotient by all vertices is zero")
    arrows = [a for a in q.arrows if a.source not in Sset and a.target not in Sset]
    alive = {a.id for a in arrows}
    rels = []
    for r in pres.relations:
        t = {w: c for w, c in r.terms.items() if all(x in alive for x in w.arrows)}
        if t:
            rels.append(LinComb(t))
    nm = name if name is not None else f"{pres.name}/<{','.join(map(str, sorted(Sset, key=str)))}>"
    return AlgebraPresentation(Quiver(tuple(keep), tuple(arrows)), tuple(rels), nm)


def ideal_dimension(alg: AlgebraBasis, S) -> int:
    """``dim A e A``."""
    Sset = set(S)
    sp = Subspace()
    left = [k for k, w in enumerate(alg.words) if w.target in Sset]
    by_src: dict = {}
    for k, w in enumerate(alg.words):
        if w.source in Sset:
            by_src.setdefault(w.source, []).append(k)
    for i in left:
        for j in by_src.get(alg.words[i].target, ()):
            sp.add(alg.mul(i, j))
    return sp.dim


# -------------------------------------------------------------------- tensor

def tensor(A: AlgebraPresentation, B: AlgebraPresentation, name: str | None = None) -> AlgebraPresentation:
    """``A (x)_K B``: lifted relations of both factors plus commuting squares."""
    qa, qb = A.quiver, B.quiver

    def vx(a, b):
        return f"{a}_{b}"

    vertices = [vx(a, b) for a in qa.vertices for b in qb.vertices]
    arrows = []
    for al in qa.arrows:
        for b in qb.vertices:
            arrows.append(Arrow(f"{al.id}_{b}", vx(al.source, b), vx(al.target, b), al.degree))
    for a in qa.vertices:
        for be in qb.arrows:
            arrows.append(Arrow(f"{a}_{be.id}", vx(a, be.source), vx(a, be.target), be.degree))
    quiver = Quiver(tuple(vertices), tuple(arrows))
    rels = []
    for r in A.relations:
        for b in qb.vertices:
            rels.append(LinComb({make_path(quiver, [f"{x}_{b}" for x in w.arrows]): c for w, c in r.terms.items()}))
    for r in B.relations:
        for a in qa.vertices:
            rels.append(LinComb({make_path(quiver, [f"{a}_{x}" for x in w.arrows]): c for w, c in r.terms.items()}))
    for al in qa.arrows:
        for be in qb.arrows:
            p1 = make_path(quiver, [f"{al.id}_{be.source}", f"{al.target}_{be.id}"])
            p2 = make_path(quiver, [f"{al.source}_{be.id}", f"{al.id}_{be.target}"])
            rels.append(LinComb({p1: 1, p2: -1}))
    nm = name if name is not None else f"{A.name}(x){B.name}"
    return AlgebraPresentation(quiver, tuple(rels), nm)


# ------------------------------------------------------- one-point extension

def one_point_extension(pres: AlgebraPresentation | AlgebraBasis, M, vertex="w", name: str | None = None) -> AlgebraPresentation:
    """Extension ``[[K, M], [0, A]]`` by a right module ``M`` (new source ``vertex``)."""
    from .modules import Representation, top_basis

    alg = pres if isinstance(pres, AlgebraBasis) else AlgebraBasis(pres)
    q = alg.quiver
    if vertex in q.vertices:
        raise BadParameters(f"vertex id {vertex!r} already used")
    assert isinstance(M, Representation)
    if M.total_dim == 0:
        warnings.warn("one-point extension by the zero module adds an isolated vertex", ZeroModuleWarning)
    tops = top_basis(M)
    arrows = list(q.arrows)
    image: dict[str, dict] = {}
    for a in q.arrows:
        image[a.id] = {("L", alg.index[make_path(q, [a.id])]): Fraction(1)}
    k = 0
    for v in q.vertices:
        for vec in tops.get(v, []):
            k += 1
            aid = f"g{k}"
            arrows.append(Arrow(aid, vertex, v))
            image[aid] = {("M", v, i): x for i, x in enumerate(vec) if x}
    # the new source goes first so trivial-path labels stay stable
    vertices = [vertex] + list(q.vertices)
    idem = {v: {("L", alg.idem[v]): Fraction(1)} for v in q.vertices}
    idem[vertex] = {("W",): Fraction(1)}
    word_index = {k: w for k, w in enumerate(alg.words)}

    def act(vec_by_vertex_src, word):
        # right action of a basis word on an element of M living at word.source
        return M.apply_path(word.arrows, word.source, vec_by_vertex_src)

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                if kx[0] == "L" and ky[0] == "L":
                    for kk, c in alg.mul(kx[1], ky[1]).items():
                        key = ("L", kk)
                        out[key] = out.get(key, 0) + cx * cy * c
                elif kx[0] == "M" and ky[0] == "L":
                    w = word_index[ky[1]]
                    if w.source != kx[1]:
                        continue
                    basis_vec = [Fraction(0)] * M.dims[kx[1]]
                    basis_vec[kx[2]] = Fraction(1)
                    res = act(basis_vec, w)
                    for i, c in enumerate(res):
                        if c:
                            key = ("M", w.target, i)
                            out[key] = out.get(key, 0) + cx * cy * c
                elif kx[0] == "W" and ky[0] in ("W", "M"):
                    out[ky] = out.get(ky, 0) + cx * cy
        return {k2: v2 for k2, v2 in out.items() if v2}

    nm = name if name is not None else f"{alg.presentation.name}[M]"
    return present_from_images(vertices, arrows, image, idem, mul, nm).presentation


# --------------------------------------------------------- standard families

def _linear_quiver(n, prefix="a"):
    vs = tuple(range(1, n + 1))
    arrows = tuple(Arrow(f"{prefix}{i}", i, i + 1) for i in range(1, n))
    return Quiver(vs, arrows)


def _all_paths_of_length(quiver: Quiver, r: int) -> list[PathWord]:
    out = []
    for a in quiver.arrows:
        stack = [(a.id,)]
        while stack:
            w = stack.pop()
            if len(w) == r:
                out.append(make_path(quiver, w))
                continue
            for b in quiver.out_arrows(quiver.arrow_map[w[-1]].target):
                stack.append(w + (b.id,))
    return out


def path_algebra(quiver: Quiver, name="") -> AlgebraPresentation:
    return AlgebraPresentation(quiver, (), name)


def rad_power_zero(quiver: Quiver, r: int, name="") -> AlgebraPresentation:
    rels = [LinComb.of(w) for w in _all_paths_of_length(quiver, r)]
    return AlgebraPresentation(quiver, tuple(rels), name)


def rad_square_zero(quiver: Quiver, name="") -> AlgebraPresentation:
    return rad_power_zero(quiver, 2, name)


def linear_path(n: int) -> AlgebraPresentation:
    if n < 1:
        raise BadParameters("n >= 1 required")
    return path_algebra(_linear_quiver(n), f"A{n}")


def nakayama_cyclic(n: int, r: int) -> AlgebraPresentation:
    """``N(n, r)``: cyclic quiver ``x_i : i -> i+1`` (mod n) with ``x^r = 0``."""
    if n < 1 or r < 2:
        raise BadParameters("nakayama_cyclic needs n >= 1 and r >= 2")
    vs = tuple(range(1, n + 1))
    arrows = tuple(Arrow(f"x{i}", i, i % n + 1) for i in vs)
    return rad_power_zero(Quiver(vs, arrows), r, f"N({n},{r})")


def nakayama_linear(n: int, r: int) -> AlgebraPresentation:
    """``A(n, r) = K A_n / rad^r`` with arrows ``x_i : i -> i+1``."""
    if n < 1 or r < 2:
        raise BadParameters("nakayama_linear needs n >= 1 and r >= 2")
    return rad_power_zero(_linear_quiver(n, "x"), r, f"A({n},{r})")


def ladder(r: int) -> AlgebraPresentation:
    if r < 1:
        raise BadParameters("ladder degree must be >= 1")
    return tensor(linear_path(2), linear_path(r), f"ladder({r})")


def _two_branch(p: int, q: int):
    """Quiver with two paths ``s -> t`` of lengths p (arrows a*) and q (arrows b*)."""
    vs = ["s"] + [f"u{i}" for i in range(1, p)] + [f"v{i}" for i in range(1, q)] + ["t"]
    arrows = []
    chain_a = ["s"] + [f"u{i}" for i in range(1, p)] + ["t"]
    chain_b = ["s"] + [f"v{i}" for i in range(1, q)] + ["t"]
    for i in range(p):
        arrows.append(Arrow(f"a{i + 1}", chain_a[i], chain_a[i + 1]))
    for i in range(q):
        arrows.append(Arrow(f"b{i + 1}", chain_b[i], chain_b[i + 1]))
    quiver = Quiver(tuple(vs), tuple(arrows))
    pa = make_path(quiver, [f"a{i + 1}" for i in range(p)])
    pb = make_path(quiver, [f"b{i + 1}" for i in range(q)])
    return quiver, pa, pb


def atilde_comm(p: int, q: int) -> AlgebraPresentation:
    if not (1 < p <= q):
        raise BadParameters("atilde_comm needs 1 < p <= q")
    quiver, pa, pb = _two_branch(p, q)
    return AlgebraPresentation(quiver, (LinComb({pa: 1, pb: -1}),), f"Atilde_comm({p},{q})")


def atilde_monomial(p: int, q: int) -> AlgebraPresentation:
    if p < 2 or q < 2:
        raise BadParameters("atilde_monomial needs p, q >= 2")
    quiver, pa, pb = _two_branch(p, q)
    return AlgebraPresentation(quiver, (LinComb.of(pa), LinComb.of(pb)), f"Atilde_mono({p},{q})")


def extended_canonical_246() -> AlgebraPresentation:
    """Extended canonical algebra of weight type (2,4,6): 12 vertices, z^6 = x^2 - y^4."""
    vs = ["s"] + ["x1"] + [f"y{i}" for i in range(1, 4)] + [f"z{i}" for i in range(1, 6)] + ["c", "w"]
    arrows = []

    def chain(letter, length):
        nodes = ["s"] + [f"{letter}{i}" for i in range(1, length)] + ["c"]
        ids = []
        for i in range(length):
            aid = f"{letter}_{i + 1}"
            arrows.append(Arrow(aid, nodes[i], nodes[i + 1]))
            ids.append(aid)
        return ids

    xs, ys, zs = chain("x", 2), chain("y", 4), chain("z", 6)
    arrows.append(Arrow("ext", "c", "w"))
    quiver = Quiver(tuple(vs), tuple(arrows))
    rel = LinComb({make_path(quiver, zs): 1, make_path(quiver, xs): -1, make_path(quiver, ys): 1})
    return AlgebraPresentation(quiver, (rel,), "extcanon<2,4,6>")


# ------------------------------------------------------------------ gradable

def is_gradable(q: Quiver):
    """``(True, None)`` or ``(False, walk)`` with a closed walk of nonzero virtual degree.

    The walk is a list of ``(arrow_id, +1|-1)``; its degree is the sum of signs.
    """
    pot: dict = {}
    parent: dict = {}
    adj: dict = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.source].append((a, +1, a.target))
        adj[a.target].append((a, -1, a.source))
    for root in q.vertices:
        if root in pot:
            continue
        pot[root] = 0
        parent[root] = None
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for a, sgn, w in adj[v]:
                if w not in pot:
                    pot[w] = pot[v] + sgn
                    parent[w] = (a.id, sgn, v)
                    dq.append(w)
        for a in q.arrows:
            if a.source in pot and a.target in pot and pot[a.target] != pot[a.source] + 1:
                walk = _tree_path(parent, a.source)[::-1]
                walk = [(x, s) for x, s in walk]
                walk.append((a.id, +1))
                back = _tree_path(parent, a.target)
                walk.extend((x, -s) for x, s in back)
                return False, walk
    return True, None


def _tree_path(parent, v):
    """Steps from ``v`` back to its BFS root, as (arrow, sign-in-forward-direction)."""
    out = []
    while parent[v] is not None:
        aid, sgn, prev = parent[v]
        out.append((aid, sgn))
        v = prev
    return out


def walk_degree(walk) -> int:
    return sum(s for _, s in walk)
