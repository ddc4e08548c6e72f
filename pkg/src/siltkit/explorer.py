"""Breadth-first enumeration of silting intervals ``A >= T >= A[d-1]``."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import AlgebraBasis, AlgebraPresentation, basis
from .errors import (
    BadParameters,
    ConsistencyError,
    IncompletePoset,
    KeyCollision,
    NotWeaklySymmetric,
)
from .homotopy import (
    SiltingNode,
    base_node,
    left_mutation,
    make_node,
    nodes_isomorphic,
    silting_leq,
)

DEFAULT_CAP = int(os.environ.get("SILTKIT_CAP", "200"))


def default_threads() -> int:
    return max(1, int(os.environ.get("SILTKIT_THREADS", "1")))


@dataclass
class IntervalPoset:
    base: SiltingNode
    d: int
    nodes: list  # SiltingNode, in discovery order
    edges: list  # (source index, target index, mutated summand index)
    status: str  # "complete" | "cap_exceeded"
    cap: int
    index: dict = field(default_factory=dict, repr=False)  # fine key -> node index
    warnings: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def keys(self) -> list:
        return [n.key for n in self.nodes]

    def __len__(self) -> int:
        return len(self.nodes)


def _as_basis(x) -> AlgebraBasis:
    return basis(x) if isinstance(x, AlgebraPresentation) else x


def in_interval(alg: AlgebraBasis, top: SiltingNode, bottom: SiltingNode, T: SiltingNode) -> bool:
    return silting_leq(alg, top, T) and silting_leq(alg, T, bottom)


def _expand(alg, top, bottom, T: SiltingNode, k: int):
    U = left_mutation(alg, T, k, verify=False)
    if not in_interval(alg, top, bottom, U):
        return None
    return make_node(alg, U.summands, reuse=(T, k))


def enumerate_interval(pres, d: int = 2, cap: int = DEFAULT_CAP, threads: int | None = None) -> IntervalPoset:
    """All basic silting objects between ``A`` and ``A[d-1]`` reachable by left mutation.

    Nodes are deduplicated by their g-matrix key, refined by the degreewise
    terms of the summands.  For ``d = 2`` the g-matrix determines a two-term
    presilting object, so a collision is a repeat; otherwise a collision is
    checked by an explicit isomorphism test and a mismatch raises
    :class:`KeyCollision`.  Distinct nodes sharing a bare g-matrix are
    reported in ``warnings``.
    """
    if d < 2:
        raise BadParameters("interval width d must be at least 2")
    if cap < 1:
        raise BadParameters("cap must be at least 1")
    alg = _as_basis(pres)
    threads = threads or default_threads()
    top = base_node(alg)
    bottom = base_node(alg, d - 1)
    nodes = [top]
    index = {top.fine_key: 0}
    by_g = {top.key: 0}
    warnings: list = []
    edges: list = []
    frontier = [0]
    status = "complete"
    n = len(alg.quiver.vertices)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier and status == "complete":
            jobs = [(t, k) for t in frontier for k in range(n)]
            if pool is not None:
                results = list(pool.map(lambda job: _expand(alg, top, bottom, nodes[job[0]], job[1]), jobs))
            else:
                results = [_expand(alg, top, bottom, nodes[t], k) for t, k in jobs]
            nxt = []
            for (t, k), U in zip(jobs, results):
                if U is None:
                    continue
                hit = index.get(U.fine_key)
                if hit is None:
                    if len(nodes) >= cap:
                        status = "cap_exceeded"
                        break
                    hit = index[U.fine_key] = len(nodes)
                    nodes.append(U)
                    nxt.append(hit)
                    if U.key in by_g:
                        warnings.append(f"nodes {by_g[U.key]} and {hit} share the g-matrix {U.g_matrix}")
                    else:
                        by_g[U.key] = hit
                elif d > 2 and not nodes_isomorphic(alg, nodes[hit], U):
                    raise KeyCollision(f"key {U.fine_key} shared by non-isomorphic objects")
                edges.append((t, hit, k))
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return IntervalPoset(top, d, nodes, edges, status, cap, index, warnings)


@dataclass
class TwoSiltingResult:
    finite: bool | None  # None when the cap was hit
    count: int
    status: str


def two_silting_finite(pres, cap: int = DEFAULT_CAP, threads: int | None = None) -> TwoSiltingResult:
    poset = enumerate_interval(pres, 2, cap, threads)
    if poset.complete:
        return TwoSiltingResult(True, len(poset), "finite")
    return TwoSiltingResult(None, len(poset), "cap_exceeded")


@dataclass
class HasseGraph:
    keys: list  # g-matrix key per node
    g_matrices: list
    edges: list  # (source, target, mutated summand)

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f'digraph "{name}" {{']
        for i, g in enumerate(self.g_matrices):
            label = "\\n".join(" ".join(str(x) for x in row) for row in g)
            lines.append(f'  n{i} [label="{label}"];')
        for s, t, k in self.edges:
            lines.append(f'  n{s} -> n{t} [label="{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse(poset: IntervalPoset) -> HasseGraph:
    """Hasse quiver of a complete interval: arrows are irreducible left mutations."""
    if not poset.complete:
        raise IncompletePoset(f"enumeration stopped at cap {poset.cap}")
    edges = sorted(set(poset.edges))
    return HasseGraph(poset.keys(), [n.g_matrix for n in poset.nodes], edges)


@dataclass
class TiltingAudit:
    tilting: list  # per node
    all_tilting: bool
    none_tilting: bool

    @property
    def dichotomy_holds(self) -> bool:
        return self.all_tilting or self.none_tilting


def component_tilting_audit(pres, poset: IntervalPoset) -> TiltingAudit:
    """Check that a weakly symmetric algebra's component is all tilting or has no tilting member."""
    from .invariants import structure_flags

    p = pres.presentation if isinstance(pres, AlgebraBasis) else pres
    if not structure_flags(p).is_weakly_symmetric:
        raise NotWeaklySymmetric("the audit needs a weakly symmetric algebra")
    if not poset.complete:
        raise IncompletePoset(f"enumeration stopped at cap {poset.cap}")
    flags = [n.is_tilting for n in poset.nodes]
    audit = TiltingAudit(flags, all(flags), not any(flags))
    if not audit.dichotomy_holds:
        raise ConsistencyError("component mixes tilting and non-tilting members")
    return audit
