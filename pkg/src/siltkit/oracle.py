"""Rule-based silting-discreteness verdicts.

Every decision carries a certificate: an ordered list of
``(rule id, reference, values)`` entries.  Rules are tried in a fixed
priority and the first Yes/No wins; anything weaker ends up in
``evidence``.
"""
from __future__ import annotations

import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations

from .algebra import AlgebraBasis, AlgebraPresentation, basis
from .constructions import is_gradable, truncation_data
from .errors import BadParameters, ConsistencyError, NotTriangular, SingularCartan
from .invariants import (
    clock_counts,
    coxeter_polynomial,
    gentle_check,
    nakayama_shape,
    recognize_dynkin,
    unique_cycle,
)

YES, NO, UNKNOWN = "Yes", "No", "Unknown"

REFERENCES = {
    "R1": "local algebras are silting-discrete",
    "R2": "hereditary algebras: silting-discrete iff Dynkin type",
    "R3": "gentle one-cycle algebras: silting-discrete iff the clock condition fails",
    "R4": "radical square zero with gradable quiver: silting-discrete iff Dynkin",
    "R5": "self-injective and linear Nakayama families",
    "R6": "Atilde(p,q) with commutativity: silting-discrete iff p = 2, or p = 3 and q <= 5",
    "R7": "Atilde(p,q) with both branch paths zero is not silting-discrete",
    "R8": "silting-discrete algebras have no multiple arrows",
    "R9": "idempotent truncations of silting-discrete algebras are silting-discrete",
    "R10": "silting-discrete algebras are 2-term silting finite",
    "R11": "simply-connected algebras: silting-discrete iff piecewise hereditary of Dynkin type",
    "R12": "tensor products of triangular algebras",
    "N": "N(n,r) is silting-discrete for r = 2 or r = 1 mod n; not for the listed (n, r) ranges",
    "A": "A(n,r) is silting-discrete iff r = 2; r in {3,5,6}, n <= 8; r = 4, n <= 7; r >= 7, n = r + 1",
    "GK": "graded Kronecker K(n0, ni), i < 0: silting-discrete iff n0, ni <= 1",
}

SUBSET_LIMIT = 12  # all subsets up to this many vertices under the "auto" budget


@dataclass
class Verdict:
    status: str
    certificate: list = field(default_factory=list)  # (rule, reference, values)
    evidence: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad status {self.status!r}")
        if self.status != UNKNOWN and not self.certificate:
            raise ValueError("a decided verdict needs a certificate")

    @property
    def decided(self) -> bool:
        return self.status != UNKNOWN

    @property
    def rules(self) -> list[str]:
        return [c[0] for c in self.certificate]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "certificate": [{"rule": r, "reference": ref, "values": v} for r, ref, v in self.certificate],
            "evidence": list(self.evidence),
        }


@dataclass(frozen=True)
class Assertions:
    """Facts the caller vouches for; echoed verbatim into certificates."""

    piecewise_hereditary_type: str | None = None
    simply_connected: bool | None = None
    nonlocal_: bool | None = None

    def echo(self) -> dict:
        return {k.rstrip("_"): v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class Budget:
    subsets: str = "auto"  # auto | all | windows | none
    max_subsets: int | None = None
    two_term_cap: int = 0  # 0 skips the 2-term enumeration
    threads: int | None = None


def _cert(rule: str, **values) -> tuple:
    return (rule, REFERENCES[rule], values)


def _as_basis(x) -> AlgebraBasis:
    return basis(x) if isinstance(x, AlgebraPresentation) else x


_DYNKIN_NAME = re.compile(r"^(A[1-9]\d*|D([4-9]|[1-9]\d+)|E[678])$")


def is_dynkin_name(t: str) -> bool:
    return bool(_DYNKIN_NAME.match(str(t).replace("_", "")))


# ------------------------------------------------------------ family verdicts

def nakayama_verdict(n: int, r: int) -> Verdict:
    """Self-injective Nakayama algebra ``N(n, r)`` (cyclic quiver, ``x^r = 0``)."""
    if n < 2 or r < 2:
        raise BadParameters("nakayama_verdict needs n, r > 1")
    if r == 2:
        return Verdict(YES, [_cert("N", n=n, r=r, case="r = 2")])
    if r % n == 1:
        return Verdict(YES, [_cert("N", n=n, r=r, case="r = 1 mod n")])
    witness = None
    if r in (3, 4) and n >= 11:
        witness = 9 if r == 3 else 8
    elif r in (5, 6) and n >= r + 8:
        witness = 9
    elif r >= 7 and n >= 2 * r + 1:
        witness = r + 2
    if witness is not None:
        return Verdict(NO, [_cert("N", n=n, r=r, truncation=f"A({witness},{r})")])
    return Verdict(UNKNOWN, evidence=[f"N({n},{r}) lies outside the decided ranges"])


def a_nr_verdict(n: int, r: int) -> Verdict:
    """Linear Nakayama algebra ``A(n, r) = K A_n / rad^r``."""
    if n < 1 or r < 2:
        raise BadParameters("a_nr_verdict needs n >= 1 and r >= 2")
    rr = min(r, n)
    values = {"n": n, "r": r}
    if rr != r:
        values["normalized_r"] = rr
    if rr == n:
        # no path reaches length r: the algebra is K A_n itself
        return Verdict(YES, [_cert("A", **values, case="hereditary"), _cert("R2", dynkin=f"A{n}")])
    ok = rr == 2 or (rr in (3, 5, 6) and n <= 8) or (rr == 4 and n <= 7) or (rr >= 7 and n == rr + 1)
    return Verdict(YES if ok else NO, [_cert("A", **values)])


def graded_kronecker_verdict(n0: int, i: int, ni: int) -> Verdict:
    """dg Kronecker quiver with ``n0`` arrows in degree 0 and ``ni`` in degree ``i < 0``."""
    if i >= 0:
        raise BadParameters("the second degree must be negative")
    if n0 < 0 or ni < 0:
        raise BadParameters("arrow counts must be nonnegative")
    ok = n0 <= 1 and ni <= 1
    return Verdict(YES if ok else NO, [_cert("GK", n0=n0, i=i, ni=ni)])


# ------------------------------------------------------------ shape detection

def _two_branch_paths(q):
    """``(short, long)`` arrow tuples when ``q`` is two paths from a source to a sink."""
    if len(q.arrows) != len(q.vertices) or len(q.vertices) < 3:
        return None
    src = [v for v in q.vertices if not q.in_arrows(v)]
    snk = [v for v in q.vertices if not q.out_arrows(v)]
    if len(src) != 1 or len(snk) != 1:
        return None
    s, t = src[0], snk[0]
    if len(q.out_arrows(s)) != 2 or len(q.in_arrows(t)) != 2:
        return None
    for v in q.vertices:
        if v not in (s, t) and (len(q.in_arrows(v)) != 1 or len(q.out_arrows(v)) != 1):
            return None
    paths = []
    for a in q.out_arrows(s):
        p, cur = [a.id], a.target
        while cur != t:
            if cur == s or len(p) > len(q.arrows):
                return None
            b = q.out_arrows(cur)[0]
            p.append(b.id)
            cur = b.target
        paths.append(tuple(p))
    if sum(len(p) for p in paths) != len(q.arrows):
        return None
    paths.sort(key=len)
    return paths[0], paths[1]


def _atilde_kind(alg: AlgebraBasis):
    """``("comm", p, q)``, ``("mono", p, q)`` or ``None``."""
    shape = _two_branch_paths(alg.quiver)
    if shape is None:
        return None
    pa, pb = shape
    p, q = len(pa), len(pb)
    rules = alg.rs.rules
    if len(rules) == 1 and p >= 2:
        (lead, tail), = rules.items()
        if {lead} | set(tail) == {pa, pb} and len(tail) == 1 and all(tail.values()):
            return ("comm", p, q)
    if len(rules) == 2 and p >= 2 and set(rules) == {pa, pb} and not any(rules.values()):
        return ("mono", p, q)
    return None


def _multiple_arrows(q) -> list:
    seen: dict = {}
    for a in q.arrows:
        if a.source != a.target:
            seen.setdefault((a.source, a.target), []).append(a.id)
    return [ids for ids in seen.values() if len(ids) > 1]


# ------------------------------------------------------------ local rules

def local_rules(pres) -> Verdict | None:
    """First decision among R1-R8; ``None`` when none of them applies."""
    for v in _local_decisions(pres, stop=True):
        return v
    return None


def _local_decisions(pres, stop: bool):
    alg = _as_basis(pres)
    q = alg.quiver
    n = len(q.vertices)
    if n == 1:
        yield Verdict(YES, [_cert("R1", vertices=1)])
        if stop:
            return
    hereditary = not alg.rs.rules
    if hereditary and q.is_acyclic():
        m = recognize_dynkin(q)
        ok = m.type is not None
        yield Verdict(YES if ok else NO, [_cert("R2", dynkin=m.type, detail=m.detail)])
        if stop:
            return
    if gentle_check(alg):
        cyc = unique_cycle(q)
        if cyc is not None:
            cw, ccw = clock_counts(cyc, set(alg.rs.rules))
            ok = cw != ccw
            yield Verdict(YES if ok else NO, [_cert("R3", clockwise=cw, counterclockwise=ccw,
                                                    clock_condition="violated" if ok else "satisfied")])
            if stop:
                return
    rsz = all(w.length <= 1 for w in alg.words)
    if rsz and n > 1:
        grad, _ = is_gradable(q)
        if grad:
            m = recognize_dynkin(q)
            ok = m.type is not None
            yield Verdict(YES if ok else NO, [_cert("R4", dynkin=m.type, gradable=True)])
            if stop:
                return
    nak = nakayama_shape(alg) if n > 1 else None
    if nak is not None:
        kind, nn, r = nak
        inner = nakayama_verdict(nn, r) if kind == "cyclic" else a_nr_verdict(nn, r)
        if inner.decided:
            yield Verdict(inner.status, [_cert("R5", family=kind, n=nn, r=r)] + inner.certificate)
            if stop:
                return
    at = _atilde_kind(alg)
    if at is not None:
        kind, p, qq = at
        if kind == "comm":
            ok = p == 2 or (p == 3 and qq in (3, 4, 5))
            yield Verdict(YES if ok else NO, [_cert("R6", p=p, q=qq)])
        else:
            yield Verdict(NO, [_cert("R7", p=p, q=qq)])
        if stop:
            return
    multi = _multiple_arrows(q)
    if multi:
        yield Verdict(NO, [_cert("R8", arrows=multi[0])])


# ------------------------------------------------------------ truncation search

def _window_subsets(vs: list) -> list:
    n = len(vs)
    out, seen = [], set()
    for size in range(1, n):
        for start in range(n):
            s = frozenset(vs[(start + k) % n] for k in range(size))
            if s not in seen:
                seen.add(s)
                out.append(s)
    return out, seen


def candidate_subsets(vertices, mode: str = "auto"):
    """Proper vertex subsets in canonical search order.

    Contiguous windows (cyclically, in declaration order) come first, by
    size then start; then the remaining singleton complements; then, in
    ``all`` mode, every other subset by size and lexicographic position.
    """
    vs = list(vertices)
    n = len(vs)
    if mode == "none" or n < 2:
        return
    if mode == "auto":
        mode = "all" if n <= SUBSET_LIMIT else "windows"
    if mode not in ("all", "windows"):
        raise BadParameters(f"unknown subset budget {mode!r}")
    windows, seen = _window_subsets(vs)
    yield from windows
    for v in vs:
        s = frozenset(x for x in vs if x != v)
        if s not in seen:
            seen.add(s)
            yield s
    if mode == "all":
        for size in range(1, n):
            for c in combinations(vs, size):
                s = frozenset(c)
                if s not in seen:
                    yield s


def _canonical_text(pres: AlgebraPresentation) -> str:
    q = pres.quiver
    vi = {v: k for k, v in enumerate(q.vertices)}
    ai = {a.id: k for k, a in enumerate(q.arrows)}
    parts = [str(len(q.vertices))]
    parts += [f"{vi[a.source]}>{vi[a.target]}" for a in q.arrows]
    for r in pres.relations:
        terms = sorted(f"{c}:{'.'.join(str(ai[x]) for x in w.arrows)}" for w, c in r.terms.items())
        parts.append("+".join(terms))
    return "|".join(parts)


_LOCAL_CACHE: dict = {}
_LOCAL_CACHE_SIZE = 20000


def _truncation_verdict(alg: AlgebraBasis, S) -> Verdict | None:
    data = truncation_data(alg, S)
    key = _canonical_text(data.presentation)
    if key in _LOCAL_CACHE:
        return _LOCAL_CACHE[key]
    v = local_rules(basis(data.rs))
    if len(_LOCAL_CACHE) >= _LOCAL_CACHE_SIZE:
        _LOCAL_CACHE.clear()
    _LOCAL_CACHE[key] = v
    return v


@dataclass
class TruncationHit:
    subset: list
    verdict: Verdict
    examined: int


def truncation_search(pres, budget: Budget | None = None):
    """First subset (in canonical order) whose truncation is decided No.

    Returns ``(hit or None, examined, exhausted_budget)``.
    """
    budget = budget or Budget()
    alg = _as_basis(pres)
    vs = list(alg.quiver.vertices)
    subsets = candidate_subsets(vs, budget.subsets)
    limit = budget.max_subsets
    threads = budget.threads or max(1, int(os.environ.get("SILTKIT_THREADS", "1")))
    examined = 0
    chunk = 64 if threads > 1 else 1
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while True:
            batch = []
            for s in subsets:
                batch.append(s)
                if len(batch) >= chunk:
                    break
            if limit is not None:
                batch = batch[: max(0, limit - examined)]
            if not batch:
                break
            if pool is not None:
                results = list(pool.map(lambda s: _truncation_verdict(alg, s), batch))
            else:
                results = [_truncation_verdict(alg, s) for s in batch]
            for s, v in zip(batch, results):
                examined += 1
                if v is not None and v.status == NO:
                    order = [x for x in vs if x in s]
                    return TruncationHit(order, v, examined), examined, False
            if limit is not None and examined >= limit:
                return None, examined, True
    finally:
        if pool is not None:
            pool.shutdown()
    return None, examined, False


# ------------------------------------------------------------ tensor products

def _is_linear_path_algebra(alg: AlgebraBasis) -> bool:
    q = alg.quiver
    if alg.rs.rules or len(q.arrows) != len(q.vertices) - 1:
        return False
    return nakayama_shape(alg) is not None or len(q.vertices) == 1


def tensor_verdict(A, B, asserts: Assertions | None = None, more: tuple = ()) -> Verdict:
    """Verdict for ``A (x) B (x) ...`` over triangular connected factors.

    ``asserts`` describe the factor that is not ``K A_2`` when the
    decision depends on its derived type.
    """
    asserts = asserts or Assertions()
    factors = [_as_basis(x) for x in (A, B, *more)]
    for f in factors:
        if not f.quiver.is_acyclic():
            raise NotTriangular(f"factor {f.presentation.name or '?'} has an oriented cycle")
    sizes = [len(f.quiver.vertices) for f in factors]
    nonlocal_ = [f for f, s in zip(factors, sizes) if s > 1]
    base = {"simples": sizes}
    if len(nonlocal_) >= 3:
        return Verdict(NO, [_cert("R12", **base, case="three nonlocal factors")])
    for f in factors:
        v = local_rules(f)
        if v is not None and v.status == NO:
            # a factor is an idempotent truncation of the product
            return Verdict(NO, [_cert("R12", **base, case="factor not silting-discrete",
                                      factor=f.presentation.name)] + v.certificate)
    if len(nonlocal_) <= 1:
        # triangular local factors are K
        if not nonlocal_:
            return Verdict(YES, [_cert("R12", **base, case="all factors are K"), _cert("R1", vertices=1)])
        inner = verdict(nonlocal_[0], asserts)
        if inner.decided:
            return Verdict(inner.status, [_cert("R12", **base, case="K (x) B = B")] + inner.certificate,
                           inner.evidence)
        return Verdict(UNKNOWN, evidence=["product reduces to its nonlocal factor"] + inner.evidence)
    a, b = nonlocal_
    if len(a.quiver.vertices) >= 3 and len(b.quiver.vertices) >= 3:
        return Verdict(NO, [_cert("R12", **base, case="both factors have at least 3 simples")])
    if len(a.quiver.vertices) != 2 or not _is_linear_path_algebra(a):
        a, b = b, a
    if len(a.quiver.vertices) != 2 or not _is_linear_path_algebra(a):
        return Verdict(UNKNOWN, evidence=["no factor is K A_2"])
    if _is_linear_path_algebra(b):
        r = len(b.quiver.vertices)
        return Verdict(YES if r <= 4 else NO, [_cert("R12", **base, case="commutative ladder", degree=r)])
    if b.quiver.is_acyclic() and not b.rs.rules:
        m = recognize_dynkin(b.quiver)
        kind = m.type
    else:
        kind = asserts.piecewise_hereditary_type
    if kind is None:
        return Verdict(UNKNOWN, evidence=["derived type of the second factor is not known"])
    kind = str(kind).replace("_", "")
    values = dict(base, factor_type=kind, asserted=asserts.echo())
    if kind.startswith("A") and is_dynkin_name(kind):
        r = int(kind[1:])
        return Verdict(YES if r <= 4 else NO, [_cert("R12", **values, case="ladder type", degree=r)])
    return Verdict(NO, [_cert("R12", **values, case="type is not A_r")])


# ------------------------------------------------------------ main entry

def coxeter_evidence(alg) -> list[str]:
    try:
        poly = coxeter_polynomial(alg)
    except SingularCartan:
        return ["Cartan matrix is singular"]
    m = recognize_dynkin(poly)
    if m.type is None:
        return [f"Coxeter polynomial {poly} matches no Dynkin table entry"]
    return [f"Coxeter polynomial {poly} matches {m.type} (evidence only, not a proof)"]


def _simply_connected_rule(alg: AlgebraBasis, asserts: Assertions) -> Verdict | None:
    if not asserts.simply_connected or not alg.quiver.is_acyclic():
        return None
    t = asserts.piecewise_hereditary_type
    if t is None:
        return None
    ok = t is not False and is_dynkin_name(t)
    return Verdict(YES if ok else NO, [_cert("R11", asserted=asserts.echo())])


def _decisions(pres, asserts: Assertions, budget: Budget, factors, factor_asserts, stop: bool):
    """Yields decided verdicts in rule order, plus evidence strings."""
    alg = _as_basis(pres)
    for v in _local_decisions(alg, stop):
        yield v
        if stop:
            return
    hit, examined, exhausted = truncation_search(alg, budget)
    if hit is not None:
        yield Verdict(NO, [_cert("R9", subset=hit.subset, examined=examined)] + hit.verdict.certificate)
        if stop:
            return
    else:
        note = f"{examined} truncations examined, none decided No"
        if exhausted:
            note += " (subset budget exhausted)"
        yield note
    if budget.two_term_cap > 0:
        from .explorer import two_silting_finite

        res = two_silting_finite(alg, cap=budget.two_term_cap)
        if res.finite:
            yield f"2-term silting finite with {res.count} objects (necessary condition holds)"
        else:
            yield f"2-term enumeration stopped at cap {budget.two_term_cap} (evidence only)"
    v = _simply_connected_rule(alg, asserts)
    if v is not None:
        yield v
        if stop:
            return
    if factors:
        v = tensor_verdict(factors[0], factors[1], factor_asserts, tuple(factors[2:]))
        if v.decided:
            yield v
            if stop:
                return


def verdict(pres, asserts: Assertions | None = None, budget: Budget | None = None,
            factors: tuple = (), factor_asserts: Assertions | None = None,
            audit: bool = False) -> Verdict:
    """Silting-discreteness verdict by the rules R1-R12.

    ``factors`` declares a tensor decomposition for R12.  With ``audit``
    every rule is evaluated and a Yes/No conflict raises
    :class:`ConsistencyError`.
    """
    asserts = asserts or Assertions()
    budget = budget or Budget()
    alg = _as_basis(pres)
    decided: list[Verdict] = []
    notes: list[str] = []
    for item in _decisions(alg, asserts, budget, factors, factor_asserts, stop=not audit):
        if isinstance(item, Verdict):
            decided.append(item)
            if not audit:
                break
        else:
            notes.append(item)
    if audit:
        statuses = {v.status for v in decided}
        if len(statuses) > 1:
            raise ConsistencyError("rules disagree: " + "; ".join(f"{v.rules} -> {v.status}" for v in decided))
    if decided:
        first = decided[0]
        extra = [f"also {v.status} via {'/'.join(v.rules)}" for v in decided[1:]]
        return Verdict(first.status, first.certificate, notes + extra)
    notes += coxeter_evidence(alg)
    if asserts.echo():
        notes.append(f"assertions: {asserts.echo()}")
    return Verdict(UNKNOWN, [], notes)
