"""Cartan and Coxeter data, Dynkin recognition, Tor profiles and structure flags."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import AlgebraBasis, AlgebraPresentation, PathWord, Quiver, make_path
from .constructions import ideal_dimension, truncation_data
from .errors import SingularCartan
from .linalg import rank
from .modules import Representation, injective, min_proj_resolution, projective, socle_dims, top_dims

DEFAULT_TOR_CAP = 20
DYNKIN_RANK_CAP = 30


def _as_basis(x) -> AlgebraBasis:
    return x if isinstance(x, AlgebraBasis) else AlgebraBasis(x)


# ------------------------------------------------------------------ Cartan

def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _det(m) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def _matmul(a, b):
    return [[sum((x * b[k][j] for k, x in enumerate(row)), Fraction(0)) for j in range(len(b[0]))] for row in a]


@dataclass
class CartanData:
    vertices: tuple
    C: list
    detC: Fraction
    Phi: list | None


def cartan(alg) -> CartanData:
    """``C[i][j] = dim e_i A e_j`` and the Coxeter matrix ``-C^{-T} C``."""
    alg = _as_basis(alg)
    C = alg.cartan_matrix()
    d = _det(C)
    Phi = None
    if d:
        CT = [list(r) for r in zip(*C)]
        inv = _inverse(CT)
        Phi = [[-x for x in row] for row in _matmul(inv, C)]
    return CartanData(alg.quiver.vertices, C, d, Phi)


# ------------------------------------------------------------------ polynomials

@dataclass(frozen=True)
class CoxeterPolynomial:
    """Monic polynomial, coefficients listed from the constant term upward."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_self_reciprocal(self) -> bool:
        c = self.coefficients
        rev = c[::-1]
        return rev == c or tuple(-x for x in rev) == c

    def __str__(self):
        return poly_to_text(self.coefficients)


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(p, q):
    p = [Fraction(x) for x in p]
    q = _trim(q)
    out = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    while len(_trim(p)) >= len(q) and any(p):
        p = _trim(p)
        k = len(p) - len(q)
        c = p[-1] / q[-1]
        out[k] = c
        for i, b in enumerate(q):
            p[i + k] -= c * b
    return _trim(out), _trim(p)


def poly_to_text(c) -> str:
    terms = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if not a:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if mono and abs(a) == 1:
            coef = "-" if a < 0 else "+"
            body = mono
        else:
            coef = "-" if a < 0 else "+"
            body = f"{abs(a)}{'*' + mono if mono else ''}"
        terms.append((coef, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for coef, body in terms[1:]:
        s += f" {coef} {body}"
    return s


def charpoly(m) -> list[Fraction]:
    """Characteristic polynomial ``det(xI - m)`` by Faddeev-LeVerrier."""
    n = len(m)
    A = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = _matmul(A, M) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        AMk = _matmul(A, M)
        tr = sum(AMk[i][i] for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def coxeter_polynomial(data) -> CoxeterPolynomial:
    if not isinstance(data, CartanData):
        data = cartan(data)
    if data.Phi is None:
        raise SingularCartan("Cartan matrix is singular; the Coxeter matrix is undefined")
    c = charpoly(data.Phi)
    return CoxeterPolynomial(tuple(int(x) if x.denominator == 1 else x for x in c))


# ------------------------------------------------------------------ Dynkin tables

_cyclo_cache: dict[int, list[int]] = {}


def cyclotomic(d: int) -> list[int]:
    if d in _cyclo_cache:
        return _cyclo_cache[d]
    p = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            p, r = poly_divmod(p, cyclotomic(e))
            assert not any(r)
    res = [int(x) for x in p]
    _cyclo_cache[d] = res
    return res


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def polynomial_from_exponents(h: int, exponents) -> tuple:
    """``prod (x - zeta^m)`` over the exponents, ``zeta`` a primitive ``h``-th root of unity."""
    orders: dict[int, int] = {}
    for m in exponents:
        d = h // gcd(m, h)
        orders[d] = orders.get(d, 0) + 1
    p = [1]
    for d, cnt in sorted(orders.items()):
        k, r = divmod(cnt, _phi(d))
        if r:
            raise ValueError("exponent multiset is not Galois-stable")
        for _ in range(k):
            p = poly_mul(p, cyclotomic(d))
    return tuple(p)


def dynkin_exponents(kind: str, n: int):
    if kind == "A":
        return n + 1, list(range(1, n + 1))
    if kind == "D":
        return 2 * n - 2, list(range(1, 2 * n - 2, 2)) + [n - 1]
    table = {
        6: (12, [1, 4, 5, 7, 8, 11]),
        7: (18, [1, 5, 7, 9, 11, 13, 17]),
        8: (30, [1, 7, 11, 13, 17, 19, 23, 29]),
    }
    return table[n]


def dynkin_table(cap: int = DYNKIN_RANK_CAP) -> dict[str, tuple]:
    out = {}
    for n in range(1, cap + 1):
        out[f"A{n}"] = polynomial_from_exponents(*dynkin_exponents("A", n))
    for n in range(4, cap + 1):
        out[f"D{n}"] = polynomial_from_exponents(*dynkin_exponents("D", n))
    for n in (6, 7, 8):
        out[f"E{n}"] = polynomial_from_exponents(*dynkin_exponents("E", n))
    return out


_TABLE = None


def _table():
    global _TABLE
    if _TABLE is None:
        _TABLE = dynkin_table()
    return _TABLE


@dataclass(frozen=True)
class DynkinMatch:
    type: str | None
    grade: str  # "proof" or "evidence"
    detail: str = ""


def _graph_components(q: Quiver):
    adj = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.source].append(a.target)
        if a.source != a.target:
            adj[a.target].append(a.source)
    seen, comps = set(), []
    for v in q.vertices:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps, adj


def _ade_tree(vs, adj) -> str | None:
    n = len(vs)
    edges = sum(len(adj[v]) for v in vs) // 2
    if edges != n - 1:
        return None
    if any(len(set(adj[v])) != len(adj[v]) for v in vs):
        return None
    branch = [v for v in vs if len(adj[v]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or len(adj[branch[0]]) != 3:
        return None
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def recognize_dynkin(obj) -> DynkinMatch:
    """Quiver mode tests the underlying graph; polynomial mode matches the tables.

    A quiver match is proof grade (for hereditary algebras); a polynomial
    match is evidence only.
    """
    if isinstance(obj, Quiver):
        if any(a.source == a.target for a in obj.arrows):
            return DynkinMatch(None, "proof", "loop")
        comps, adj = _graph_components(obj)
        tags = []
        for comp in comps:
            t = _ade_tree(comp, adj)
            if t is None:
                return DynkinMatch(None, "proof", "underlying graph is not ADE")
            tags.append(t)
        return DynkinMatch("+".join(tags), "proof")
    if isinstance(obj, CoxeterPolynomial):
        coeffs = tuple(obj.coefficients)
    else:
        coeffs = tuple(obj)
    hits = [k for k, v in _table().items() if tuple(v) == coeffs]
    if not hits:
        return DynkinMatch(None, "evidence", "no table match")
    return DynkinMatch("/".join(hits), "evidence")


# ------------------------------------------------------------------ Tor

@dataclass
class TorProfile:
    dims: dict
    multiplication_kernel_dim: int
    computed_up_to: int
    complete: bool
    tensor_dim: int = 0
    ideal_dim: int = 0


def _gamma_images(alg: AlgebraBasis, ext, gamma: AlgebraBasis) -> list[dict]:
    """Image in ``A`` of every basis word of ``e A e``."""
    out = []
    for w in gamma.words:
        if not w.arrows:
            out.append({alg.idem[w.source]: Fraction(1)})
            continue
        v = ext.images[w.arrows[0]]
        for a in w.arrows[1:]:
            v = alg.mul_vec(v, ext.images[a])
        out.append(v)
    return out


def _corner_module(alg: AlgebraBasis, gamma: AlgebraBasis, ext, i) -> Representation:
    """``e_i A e`` as a right ``e A e``-module."""
    gq = gamma.quiver
    dims = {u: alg.block_dim(i, u) for u in gq.vertices}
    action = {}
    for a in gq.arrows:
        src = alg.block(i, a.source)
        tgt = alg.block(i, a.target)
        pos = {k: r for r, k in enumerate(tgt)}
        img = ext.images[a.id]
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        for j, p in enumerate(src):
            for k, c in alg.mul_vec({p: Fraction(1)}, img).items():
                mat[pos[k]][j] += c
        action[a.id] = mat
    return Representation(dims, action).bind(gq)


def _tensored_ranks(alg: AlgebraBasis, res, gimg) -> tuple[list[int], list[int]]:
    """Sizes of ``P_k (x) eA`` and ranks of the tensored differentials."""
    def coords(gens):
        lab = {}
        for g, f in enumerate(gens):
            for u in alg.quiver.vertices:
                for p in alg.block(f, u):
                    lab[(g, p)] = len(lab)
        return lab

    labs = [coords(t) for t in res.terms]
    sizes = [len(l) for l in labs]
    ranks = []
    for k, d in enumerate(res.differentials):
        src_gens, tgt_lab = res.terms[k + 1], labs[k]
        rows = []
        for j, f in enumerate(src_gens):
            col_entries = [(i, d[i][j]) for i in range(len(d)) if d[i][j]]
            for u in alg.quiver.vertices:
                for y in alg.block(f, u):
                    img = {}
                    for i, x in col_entries:
                        X = {}
                        for gi, c in x.items():
                            for kk, cc in gimg[gi].items():
                                X[kk] = X.get(kk, 0) + c * cc
                        for kk, cc in alg.mul_vec(X, {y: Fraction(1)}).items():
                            t = tgt_lab[(i, kk)]
                            img[t] = img.get(t, 0) + cc
                    img = {a: b for a, b in img.items() if b}
                    if img:
                        rows.append(img)
        ranks.append(rank(rows))
    return sizes, ranks


def tor_profile(pres, S, cap: int = DEFAULT_TOR_CAP) -> TorProfile:
    """``dim Tor_k^{eAe}(Ae, eA)`` from a minimal resolution of ``Ae`` over ``eAe``."""
    alg = _as_basis(pres)
    S = [v for v in alg.quiver.vertices if v in set(S)]
    ext = truncation_data(alg, S)
    gamma = AlgebraBasis(ext.presentation, ext.rs)
    gimg = _gamma_images(alg, ext, gamma)
    totals: dict[int, int] = {}
    complete = True
    upto = cap
    for i in alg.quiver.vertices:
        M = _corner_module(alg, gamma, ext, i)
        if M.total_dim == 0:
            continue
        res = min_proj_resolution(gamma, M, cap)
        sizes, ranks = _tensored_ranks(alg, res, gimg)
        nk = len(sizes)
        last = nk if not res.truncated else nk - 1
        if res.truncated:
            complete = False
            upto = min(upto, last - 1)
        for k in range(last):
            r_in = ranks[k] if k < len(ranks) else 0  # d_{k+1}
            r_out = ranks[k - 1] if k >= 1 else 0  # d_k
            totals[k] = totals.get(k, 0) + sizes[k] - r_out - r_in
    ideal = ideal_dimension(alg, S)
    t0 = totals.get(0, 0)
    dims = {k: v for k, v in sorted(totals.items()) if k >= 1}
    if complete:
        upto = max([0] + list(totals))
    else:
        dims = {k: v for k, v in dims.items() if k <= upto}
    return TorProfile(dims, t0 - ideal, upto, complete, t0, ideal)


def ae_cohomology(pres, S, cap: int = DEFAULT_TOR_CAP) -> dict[int, int]:
    alg = _as_basis(pres)
    tp = tor_profile(alg, S, cap)
    out = {0: alg.dimension - tp.ideal_dim, -1: tp.multiplication_kernel_dim}
    for k, v in tp.dims.items():
        out[-k - 1] = v
    return dict(sorted(out.items(), reverse=True))


@dataclass(frozen=True)
class StratifyingResult:
    status: str  # "yes", "no", "yes_up_to_cap"
    witness_degree: int | None = None
    cohomology: dict = field(default_factory=dict)


def is_stratifying(pres, S, cap: int = DEFAULT_TOR_CAP) -> StratifyingResult:
    alg = _as_basis(pres)
    tp = tor_profile(alg, S, cap)
    coh = {0: alg.dimension - tp.ideal_dim, -1: tp.multiplication_kernel_dim}
    coh.update({-k - 1: v for k, v in tp.dims.items()})
    for i in sorted(coh, reverse=True):
        if i < 0 and coh[i]:
            return StratifyingResult("no", i, coh)
    return StratifyingResult("yes" if tp.complete else "yes_up_to_cap", None, coh)


# ------------------------------------------------------------------ flags

@dataclass
class CycleData:
    walk: list  # (arrow id, +1 forward / -1 backward), closed
    vertices: list


@dataclass
class StructureFlags:
    is_local: bool
    is_hereditary: bool
    nakayama_cyclic: tuple | None
    nakayama_linear: tuple | None
    is_radical_square_zero: bool
    is_gentle: bool
    one_cycle: CycleData | None
    clock_condition: str  # "satisfied", "violated", "n/a"
    clock_counts: tuple | None
    is_weakly_symmetric: bool
    topsocle_left_ok: bool
    topsocle_right_ok: bool
    has_multiple_arrows: bool
    is_triangular: bool
    quadratic_monomial: bool = False


def _monomial_length2(alg: AlgebraBasis) -> bool:
    rules = alg.rs.rules
    return all(len(lead) == 2 and not tail for lead, tail in rules.items())


def gentle_check(alg: AlgebraBasis) -> bool:
    q = alg.quiver
    for v in q.vertices:
        if len(q.out_arrows(v)) > 2 or len(q.in_arrows(v)) > 2:
            return False
    if not _monomial_length2(alg):
        return False
    zero = set(alg.rs.rules)
    for b in q.arrows:
        ins = q.in_arrows(b.source)
        if sum((a.id, b.id) in zero for a in ins) > 1 or sum((a.id, b.id) not in zero for a in ins) > 1:
            return False
        outs = q.out_arrows(b.target)
        if sum((b.id, c.id) in zero for c in outs) > 1 or sum((b.id, c.id) not in zero for c in outs) > 1:
            return False
    return True


def unique_cycle(q: Quiver) -> CycleData | None:
    """The cycle of a connected graph with cyclomatic number one."""
    comps, _ = _graph_components(q)
    if len(comps) != 1 or len(q.arrows) != len(q.vertices):
        return None
    # peel leaves
    inc = {v: [] for v in q.vertices}
    for a in q.arrows:
        inc[a.source].append(a)
        inc[a.target].append(a)
    alive_a = {a.id for a in q.arrows}
    deg = {v: len(inc[v]) for v in q.vertices}
    leaves = [v for v in q.vertices if deg[v] == 1]
    removed = set()
    while leaves:
        v = leaves.pop()
        removed.add(v)
        for a in inc[v]:
            if a.id in alive_a:
                alive_a.discard(a.id)
                w = a.target if a.source == v else a.source
                deg[w] -= 1
                if deg[w] == 1:
                    leaves.append(w)
    cyc_arrows = [a for a in q.arrows if a.id in alive_a]
    start = cyc_arrows[0]
    walk = [(start.id, 1)]
    verts = [start.source]
    cur, used = start.target, {start.id}
    while cur != start.source or len(walk) < len(cyc_arrows):
        nxt = next(a for a in cyc_arrows if a.id not in used and cur in (a.source, a.target))
        used.add(nxt.id)
        verts.append(cur)
        if nxt.source == cur and not (nxt.target == cur):
            walk.append((nxt.id, 1))
            cur = nxt.target
        else:
            walk.append((nxt.id, -1))
            cur = nxt.source
    if sum(s for _, s in walk) < 0:
        # traverse so that most arrows point forward
        walk = [(a, -s) for a, s in reversed(walk)]
        verts = [verts[0]] + verts[1:][::-1]
    return CycleData(walk, verts)


def clock_counts(cyc: CycleData, zero_relations) -> tuple[int, int]:
    """Relations ``ab`` formed by consecutive cycle arrows, per orientation."""
    cw = ccw = 0
    w = cyc.walk
    n = len(w)
    for k in range(n):
        (a, sa), (b, sb) = w[k], w[(k + 1) % n]
        if n == 1:
            if sa == 1 and (a, a) in zero_relations:
                cw += 1
            continue
        if sa == 1 and sb == 1 and (a, b) in zero_relations:
            cw += 1
        elif sa == -1 and sb == -1 and (b, a) in zero_relations:
            ccw += 1
    return cw, ccw


def _all_paths_below(alg: AlgebraBasis, r: int) -> bool:
    """Basis words are exactly the paths of length < r."""
    q = alg.quiver
    count = len(q.vertices)
    layer = [(a.id,) for a in q.arrows]
    length = 1
    while layer and length < r:
        count += len(layer)
        for w in layer:
            if not alg.rs.is_reduced_word(w):
                return False
        layer = [w + (a.id,) for w in layer for a in q.out_arrows(q.arrow_map[w[-1]].target)]
        length += 1
    if count != alg.dimension:
        return False
    return all(not alg.rs.is_reduced_word(w) for w in layer)


def _oriented_cycle_order(q: Quiver):
    n = len(q.vertices)
    if len(q.arrows) != n:
        return None
    if any(len(q.out_arrows(v)) != 1 or len(q.in_arrows(v)) != 1 for v in q.vertices):
        return None
    v0 = q.vertices[0]
    order, cur = [v0], q.out_arrows(v0)[0].target
    while cur != v0:
        order.append(cur)
        cur = q.out_arrows(cur)[0].target
    return order if len(order) == n else None


def _linear_order(q: Quiver):
    n = len(q.vertices)
    if len(q.arrows) != n - 1:
        return None
    src = [v for v in q.vertices if not q.in_arrows(v)]
    if len(src) != 1 or any(len(q.out_arrows(v)) > 1 or len(q.in_arrows(v)) > 1 for v in q.vertices):
        return None
    order, cur = [src[0]], src[0]
    while q.out_arrows(cur):
        cur = q.out_arrows(cur)[0].target
        order.append(cur)
    return order if len(order) == n else None


def nakayama_shape(alg: AlgebraBasis):
    """``("cyclic", n, r)`` or ``("linear", n, r)`` for the homogeneous families."""
    q = alg.quiver
    n = len(q.vertices)
    maxlen = max(w.length for w in alg.words)
    r = maxlen + 1
    if _oriented_cycle_order(q) is not None and n >= 1:
        if _all_paths_below(alg, r):
            return ("cyclic", n, r)
        return None
    if _linear_order(q) is not None:
        if _all_paths_below(alg, r):
            return ("linear", n, r)
    return None


def structure_flags(pres) -> StructureFlags:
    alg = _as_basis(pres)
    q = alg.quiver
    nak = nakayama_shape(alg)
    gentle = gentle_check(alg)
    cyc = unique_cycle(q)
    clock, counts = "n/a", None
    if gentle and cyc is not None:
        counts = clock_counts(cyc, set(alg.rs.rules))
        clock = "satisfied" if counts[0] == counts[1] else "violated"
    ws = True
    right_ok = True
    for v in q.vertices:
        soc = socle_dims(projective(alg, v), q)
        if set(soc) != {v}:
            right_ok = False
        if soc != {v: 1}:
            ws = False
    left_ok = all(set(top_dims(injective(alg, v), q)) == {v} for v in q.vertices)
    pairs = {}
    for a in q.arrows:
        pairs[(a.source, a.target)] = pairs.get((a.source, a.target), 0) + 1
    return StructureFlags(
        is_local=len(q.vertices) == 1,
        is_hereditary=not alg.rs.rules,
        nakayama_cyclic=nak[1:] if nak and nak[0] == "cyclic" else None,
        nakayama_linear=nak[1:] if nak and nak[0] == "linear" else None,
        is_radical_square_zero=all(w.length <= 1 for w in alg.words),
        is_gentle=gentle,
        one_cycle=cyc,
        clock_condition=clock,
        clock_counts=counts,
        is_weakly_symmetric=ws,
        topsocle_left_ok=left_ok,
        topsocle_right_ok=right_ok,
        has_multiple_arrows=any(c > 1 for (s, t), c in pairs.items() if s != t),
        is_triangular=q.is_acyclic(),
        quadratic_monomial=_monomial_length2(alg),
    )
