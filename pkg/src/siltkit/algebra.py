"""Bound quiver algebras ``KQ/I`` over Q with Groebner normal forms.

Paths compose left to right: ``a*b`` means "first ``a``, then ``b``", so
``e_i A e_j`` is spanned by the paths from ``i`` to ``j`` and
``Hom(e_i A, e_j A) = e_j A e_i``.

The monomial order is length first, then lexicographic in the declared
arrow order.  Trivial paths are smaller than every arrow path.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .errors import DimensionUnbounded, NonAdmissibleRelation, NonParallelRelation

DEFAULT_WORD_CAP = 64


@dataclass(frozen=True)
class Arrow:
    id: str
    source: Hashable
    target: Hashable
    degree: int = 0


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.id} has an undeclared endpoint")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def arrow_rank(self) -> dict[str, int]:
        return {a.id: k for k, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def _out(self):
        out = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a)
        return out

    @cached_property
    def _in(self):
        inc = defaultdict(list)
        for a in self.arrows:
            inc[a.target].append(a)
        return inc

    def out_arrows(self, v) -> list[Arrow]:
        return self._out.get(v, [])

    def in_arrows(self, v) -> list[Arrow]:
        return self._in.get(v, [])

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.id, a.target, a.source, a.degree) for a in self.arrows))

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen == len(self.vertices)


@dataclass(frozen=True)
class PathWord:
    source: Hashable
    target: Hashable
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @staticmethod
    def trivial(v) -> "PathWord":
        return PathWord(v, v, ())

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


def make_path(quiver: Quiver, arrows: Iterable[str], vertex=None) -> PathWord:
    arrows = tuple(arrows)
    if not arrows:
        if vertex is None:
            raise ValueError("trivial path needs a vertex")
        return PathWord.trivial(vertex)
    amap = quiver.arrow_map
    for a in arrows:
        if a not in amap:
            raise KeyError(a)
    for a, b in zip(arrows, arrows[1:]):
        if amap[a].target != amap[b].source:
            raise ValueError(f"arrows {a} and {b} do not compose")
    return PathWord(amap[arrows[0]].source, amap[arrows[-1]].target, arrows)


class LinComb:
    """Finite Q-linear combination of paths.  Zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PathWord, object] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    t[w] = t.get(w, 0) + c
                    if not t[w]:
                        del t[w]
        self.terms: dict[PathWord, Fraction] = t

    @classmethod
    def of(cls, word: PathWord, coeff=1) -> "LinComb":
        return cls({word: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return LinComb(t)

    def __neg__(self):
        return LinComb({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return LinComb({w: Fraction(scalar) * c for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "LinComb(0)"
        return f"LinComb({self.to_text()})"

    def to_text(self) -> str:
        parts = []
        for w, c in self.terms.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else f"{a} "
            parts.append(f"{sign} {coef}{w}")
        s = " ".join(parts) if parts else "0"
        return s[2:] if s.startswith("+ ") else s

    def is_parallel(self) -> bool:
        ends = {(w.source, w.target) for w in self.terms}
        return len(ends) <= 1

    @property
    def endpoints(self):
        w = next(iter(self.terms))
        return w.source, w.target


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(r for r in self.relations if r))
        for r in self.relations:
            check_relation(r)

    def opposite(self) -> "AlgebraPresentation":
        rels = []
        for r in self.relations:
            rels.append(LinComb({PathWord(w.target, w.source, w.arrows[::-1]): c for w, c in r.terms.items()}))
        return AlgebraPresentation(self.quiver.opposite(), tuple(rels), self.name + "^op")


def check_relation(r: LinComb) -> None:
    if not r.is_parallel():
        raise NonParallelRelation(f"relation {r.to_text()} mixes paths with different endpoints")
    for w in r.terms:
        if w.length < 2:
            raise NonAdmissibleRelation(f"relation {r.to_text()} has a term of length < 2")


def order_key(quiver: Quiver):
    rank = quiver.arrow_rank
    vidx = quiver.vertex_index

    def key(w: PathWord):
        if not w.arrows:
            return (0, (vidx[w.source],))
        return (len(w.arrows), tuple(rank[a] for a in w.arrows))

    return key


class _Rewriter:
    """Rewriting by rules ``lead -> tail`` on arrow tuples with memoised normal forms."""

    def __init__(self, rules=None):
        self.rules: dict[tuple, dict[tuple, Fraction]] = dict(rules or {})
        self._lengths: list[int] = []
        self._cache: dict[tuple, dict[tuple, Fraction]] = {}
        self._refresh()

    def _refresh(self):
        self._lengths = sorted({len(k) for k in self.rules})
        self._cache.clear()

    def set_rule(self, lead, tail):
        self.rules[lead] = tail
        self._refresh()

    def drop_rule(self, lead):
        tail = self.rules.pop(lead)
        self._refresh()
        return tail

    def find(self, w: tuple):
        n = len(w)
        rules = self.rules
        for i in range(n):
            for ln in self._lengths:
                if i + ln > n:
                    break
                if w[i:i + ln] in rules:
                    return i, ln
        return None

    def nf_word(self, w: tuple) -> dict:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        loc = self.find(w)
        if loc is None:
            res = {w: Fraction(1)}
        else:
            i, ln = loc
            pre, post = w[:i], w[i + ln:]
            res = {}
            for tw, c in self.rules[w[i:i + ln]].items():
                for w2, c2 in self.nf_word(pre + tw + post).items():
                    v = res.get(w2, 0) + c * c2
                    if v:
                        res[w2] = v
                    else:
                        res.pop(w2, None)
        self._cache[w] = res
        return res

    def nf_poly(self, p: Mapping[tuple, Fraction]) -> dict:
        res: dict[tuple, Fraction] = {}
        for w, c in p.items():
            for w2, c2 in self.nf_word(w).items():
                v = res.get(w2, 0) + c * c2
                if v:
                    res[w2] = v
                else:
                    res.pop(w2, None)
        return res


def _contains(big: tuple, small: tuple) -> bool:
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))


def _overlaps(l1: tuple, l2: tuple):
    """Yield ``(u, v)`` with ``l1 = u + w`` and ``l2 = w + v`` for nonempty ``u, w, v``."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield l1[:-k], l2[k:]


@dataclass(frozen=True)
class ReductionSystem:
    """Reduced Groebner basis of the relation ideal as rewrite rules.

    ``rules`` maps each leading word (arrow-id tuple) to its tail
    ``{word: coeff}``; the rule reads ``lead -> sum coeff * word``.
    """

    quiver: Quiver
    rules: Mapping = field(default_factory=dict)
    complete: bool = True
    word_cap: int = DEFAULT_WORD_CAP
    presentation: object = field(default=None, compare=False, repr=False)

    @cached_property
    def _rw(self) -> _Rewriter:
        return _Rewriter(self.rules)

    def nf(self, x: LinComb) -> LinComb:
        out: dict[PathWord, Fraction] = {}
        amap = self.quiver.arrow_map
        for w, c in x.terms.items():
            if not w.arrows:
                out[w] = out.get(w, 0) + c
                continue
            for w2, c2 in self._rw.nf_word(w.arrows).items():
                pw = PathWord(amap[w2[0]].source, amap[w2[-1]].target, w2)
                out[pw] = out.get(pw, 0) + c * c2
        return LinComb(out)

    def nf_word(self, arrows: tuple) -> dict:
        return self._rw.nf_word(arrows)

    def is_reduced_word(self, arrows: tuple) -> bool:
        return self._rw.find(arrows) is None

    def rule_list(self) -> list[tuple[PathWord, LinComb]]:
        """Rules sorted by the monomial order of their leading words."""
        amap = self.quiver.arrow_map
        key = order_key(self.quiver)
        out = []
        for lead, tail in self.rules.items():
            lw = PathWord(amap[lead[0]].source, amap[lead[-1]].target, lead)
            t = LinComb({PathWord(lw.source, lw.target, w): c for w, c in tail.items()})
            out.append((lw, t))
        out.sort(key=lambda r: key(r[0]))
        return out


def normalize(pres: AlgebraPresentation, cap: int = DEFAULT_WORD_CAP) -> ReductionSystem:
    """Buchberger-style completion of the relations to a reduced rewriting system."""
    quiver = pres.quiver
    rank = quiver.arrow_rank

    def wkey(w):
        return (len(w), tuple(rank[a] for a in w))

    for r in pres.relations:
        check_relation(r)
    rw = _Rewriter()
    pending = [{w.arrows: c for w, c in r.terms.items()} for r in pres.relations]
    while pending:
        pending.sort(key=lambda p: max(wkey(w) for w in p), reverse=True)
        p = rw.nf_poly(pending.pop())
        if not p:
            continue
        lead = max(p, key=wkey)
        if len(lead) > cap:
            raise DimensionUnbounded(f"completion produced a leading word of length {len(lead)} > cap {cap}")
        c = p[lead]
        tail = {w: -v / c for w, v in p.items() if w != lead}
        for old in [L for L in rw.rules if _contains(L, lead)]:
            otail = rw.drop_rule(old)
            poly = {old: Fraction(1)}
            for w, v in otail.items():
                poly[w] = poly.get(w, 0) - v
            pending.append(poly)
        rw.set_rule(lead, tail)
        for other, otail in list(rw.rules.items()):
            for l1, t1, l2, t2 in ((lead, tail, other, otail), (other, otail, lead, tail)):
                for u, v in _overlaps(l1, l2):
                    # (l1 - t1) v - u (l2 - t2) = u t2 - t1 v
                    s: dict[tuple, Fraction] = {}
                    for w, x in t2.items():
                        s[u + w] = s.get(u + w, 0) + x
                    for w, x in t1.items():
                        s[w + v] = s.get(w + v, 0) - x
                    s = {w: x for w, x in s.items() if x}
                    if s:
                        pending.append(s)
    # inter-reduce tails
    final = {}
    for lead in list(rw.rules):
        final[lead] = rw.nf_poly(rw.rules[lead])
    return ReductionSystem(quiver, final, True, cap, pres)


class AlgebraBasis:
    """Normal-form basis of ``KQ/I`` with cached structure constants.

    Basis words are ordered: trivial paths in vertex order, then the
    remaining words by the monomial order.
    """

    def __init__(self, pres: AlgebraPresentation, rs: ReductionSystem | None = None,
                 cap: int = DEFAULT_WORD_CAP):
        self.presentation = pres
        self.quiver = pres.quiver
        self.rs = rs if rs is not None else normalize(pres, cap)
        self.words: list[PathWord] = self._enumerate(cap)
        self.index: dict[PathWord, int] = {w: k for k, w in enumerate(self.words)}
        self.blocks: dict[tuple, list[int]] = defaultdict(list)
        for k, w in enumerate(self.words):
            self.blocks[(w.source, w.target)].append(k)
        self.blocks = dict(self.blocks)
        self._mul: dict[tuple[int, int], dict[int, Fraction]] = {}
        self.idem = {v: self.index[PathWord.trivial(v)] for v in self.quiver.vertices}

    def _enumerate(self, cap):
        q = self.quiver
        key = order_key(q)
        words = [PathWord.trivial(v) for v in q.vertices]
        frontier = [(a.id,) for a in q.arrows if self.rs.is_reduced_word((a.id,))]
        longer = []
        while frontier:
            longer.extend(frontier)
            nxt = []
            for w in frontier:
                if len(w) >= cap:
                    raise DimensionUnbounded(f"irreducible path longer than cap {cap}: the ideal is not admissible")
                for a in q.out_arrows(q.arrow_map[w[-1]].target):
                    w2 = w + (a.id,)
                    if self.rs.is_reduced_word(w2):
                        nxt.append(w2)
            frontier = nxt
        amap = q.arrow_map
        pw = [PathWord(amap[w[0]].source, amap[w[-1]].target, w) for w in longer]
        pw.sort(key=key)
        return words + pw

    @property
    def dimension(self) -> int:
        return len(self.words)

    def block(self, i, j) -> list[int]:
        return self.blocks.get((i, j), [])

    def block_dim(self, i, j) -> int:
        return len(self.blocks.get((i, j), ()))

    def radical_indices(self) -> list[int]:
        return [k for k, w in enumerate(self.words) if w.arrows]

    def mul(self, i: int, j: int) -> dict[int, Fraction]:
        """Structure constants of ``words[i] * words[j]`` (do not mutate the result)."""
        key = (i, j)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        a, b = self.words[i], self.words[j]
        if a.target != b.source:
            res = {}
        elif not a.arrows:
            res = {j: 1}
        elif not b.arrows:
            res = {i: 1}
        else:
            amap = self.quiver.arrow_map
            res = {}
            for w, c in self.rs.nf_word(a.arrows + b.arrows).items():
                # integral constants stay ints: much faster than Fraction arithmetic
                res[self.index[PathWord(amap[w[0]].source, amap[w[-1]].target, w)]] = (
                    int(c) if c.denominator == 1 else c)
        self._mul[key] = res
        return res

    def mul_vec(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in self.mul(i, j).items():
                    v = out.get(k, 0) + ab * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def to_vec(self, x: LinComb) -> dict[int, Fraction]:
        y = self.rs.nf(x)
        return {self.index[w]: c for w, c in y.terms.items()}

    def to_lincomb(self, v: Mapping[int, Fraction]) -> LinComb:
        return LinComb({self.words[k]: c for k, c in v.items()})

    def multiply(self, a: LinComb, b: LinComb) -> LinComb:
        return self.to_lincomb(self.mul_vec(self.to_vec(a), self.to_vec(b)))

    def cartan_matrix(self) -> list[list[int]]:
        vs = self.quiver.vertices
        return [[self.block_dim(i, j) for j in vs] for i in vs]


def basis(rs_or_pres, cap: int = DEFAULT_WORD_CAP) -> AlgebraBasis:
    """Basis from a completed :class:`ReductionSystem` (or directly from a presentation)."""
    if isinstance(rs_or_pres, AlgebraBasis):
        return rs_or_pres
    if isinstance(rs_or_pres, AlgebraPresentation):
        return AlgebraBasis(rs_or_pres, cap=cap)
    return AlgebraBasis(rs_or_pres.presentation, rs_or_pres, cap=rs_or_pres.word_cap)


def multiply(a: LinComb, b: LinComb, alg: AlgebraBasis) -> LinComb:
    return alg.multiply(a, b)
