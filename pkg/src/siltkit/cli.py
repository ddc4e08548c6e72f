"""Command-line front end: ``siltkit <verb> [--fixture ID | FILE] [options]``.

Exit codes: 0 on any computed result (an Unknown verdict included), 1 on
input errors, 2 on internal consistency failures.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import time
from dataclasses import asdict, dataclass, field

from . import constructions as cons
from .algebra import AlgebraBasis, AlgebraPresentation, basis
from .dsl import parse_dsl, print_dsl
from .errors import BadParameters, ConsistencyError, InputError, UnknownIdentifier, UnsupportedFormat
from .explorer import DEFAULT_CAP, component_tilting_audit, default_threads, enumerate_interval, hasse
from .fixtures import fixture, fixture_list, make_standard
from .homotopy import (
    ProjComplex,
    base_node,
    direct_sum,
    from_resolution,
    hom_profile,
    left_mutation,
    presilting_profile,
    right_mutation,
    stalk,
)
from .invariants import (
    ae_cohomology,
    cartan,
    coxeter_polynomial,
    is_stratifying,
    recognize_dynkin,
    structure_flags,
)
from .modules import min_proj_resolution, simple
from .oracle import Assertions, Budget, verdict
from .report import Report, export

VERBS = ("basis", "cartan", "coxeter", "flags", "truncate", "quotient", "tensor", "stratify",
         "ae-cohomology", "hom", "mutate", "enumerate", "audit", "oracle", "fixture-list")


@dataclass
class Command:
    verb: str
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors exit with 1, not argparse's 2
        raise InputError(message)


def _add_source(p):
    g = p.add_argument_group("algebra")
    g.add_argument("file", nargs="?", help="algebra in the text format")
    g.add_argument("--fixture", help="built-in algebra id (see fixture-list)")
    g.add_argument("--standard", help='standard family, e.g. "nakayama_cyclic(12,4)"')


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="siltkit", description="Silting computations over bound quiver algebras.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("--format", default="json", help="json (default) or dot")
        p.add_argument("--stable", action="store_true", help="omit timings so output is reproducible")
        if verb != "fixture-list":
            _add_source(p)
        if verb in ("truncate", "quotient", "stratify", "ae-cohomology"):
            p.add_argument("--vertices", required=True, help="comma-separated vertex ids")
        if verb in ("stratify", "ae-cohomology"):
            p.add_argument("--tor-cap", type=int, default=12)
        if verb == "tensor":
            p.add_argument("--with", dest="other", required=True, help="fixture id or file of the second factor")
        if verb == "hom":
            p.add_argument("--source", required=True, help='object such as "P1+S2[1]"')
            p.add_argument("--target", required=True)
        if verb == "mutate":
            p.add_argument("--steps", default="L0", help="comma-separated L<k>/R<k> mutations from A")
        if verb in ("enumerate", "audit"):
            p.add_argument("--d", type=int, default=2)
            p.add_argument("--cap", type=int, default=DEFAULT_CAP)
            p.add_argument("--threads", type=int, default=None)
        if verb == "oracle":
            p.add_argument("--type", dest="ph_type", help="asserted piecewise hereditary type, e.g. E6")
            p.add_argument("--simply-connected", action="store_true")
            p.add_argument("--nonlocal", action="store_true")
            p.add_argument("--subsets", default="auto", help="auto, all, windows or none")
            p.add_argument("--max-subsets", type=int)
            p.add_argument("--two-term-cap", type=int, default=0)
            p.add_argument("--factor", action="append", default=[], help="declared tensor factor (repeat)")
            p.add_argument("--factor-type", help="asserted type of the factor other than K A_2")
            p.add_argument("--audit", action="store_true", help="evaluate every rule and check agreement")
            p.add_argument("--threads", type=int, default=None)
    return ap


# ------------------------------------------------------------------ inputs

def load_algebra(opts: dict) -> AlgebraPresentation:
    given = [k for k in ("file", "fixture", "standard") if opts.get(k)]
    if len(given) != 1:
        raise BadParameters("give exactly one of FILE, --fixture or --standard")
    if opts.get("fixture"):
        return fixture(opts["fixture"])
    if opts.get("standard"):
        return make_standard(opts["standard"])
    return _read_file(opts["file"])


def _read_file(path: str) -> AlgebraPresentation:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_dsl(fh.read())
    except OSError as e:
        raise BadParameters(f"cannot read {path}: {e.strerror}") from None


def _load_factor(ref: str) -> AlgebraPresentation:
    if os.path.exists(ref):
        return _read_file(ref)
    return fixture(ref)


def _vertices(alg: AlgebraBasis, text: str) -> list:
    by_name = {str(v): v for v in alg.quiver.vertices}
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok not in by_name:
            raise UnknownIdentifier(f"unknown vertex {tok!r}")
        out.append(by_name[tok])
    if not out:
        raise BadParameters("empty vertex list")
    return out


_SUMMAND = re.compile(r"([PS])(.+?)(?:\[(-?\d+)\])?")


def parse_object(alg: AlgebraBasis, text: str) -> list[ProjComplex]:
    """``P<v>`` projective, ``S<v>`` simple (via its resolution), ``A`` all projectives; ``[n]`` shifts."""
    parts = []
    for tok in (t.strip() for t in text.split("+")):
        m = re.fullmatch(r"A(?:\[(-?\d+)\])?", tok)
        if m:
            n = int(m.group(1) or 0)
            parts.extend(stalk([v]).shift(n) for v in alg.quiver.vertices)
            continue
        m = _SUMMAND.fullmatch(tok)
        if m is None:
            raise BadParameters(f"cannot read object {tok!r}")
        kind, v, n = m.group(1), _vertices(alg, m.group(2))[0], int(m.group(3) or 0)
        if kind == "P":
            X = stalk([v])
        else:
            res = min_proj_resolution(alg, simple(alg, v))
            if res.truncated:
                raise BadParameters(f"S{v} has no finite projective resolution within the cap")
            X = from_resolution(res)
        parts.append(X.shift(n))
    return parts


def _node_payload(alg, node) -> dict:
    return {
        "g_matrix": [list(r) for r in node.g_matrix],
        "hom_profile": node.hom_profile,
        "tilting": node.is_tilting,
        "caveat": node.caveat,
        "summands": [X.describe(alg) for X in node.summands],
    }


# ------------------------------------------------------------------ verbs

def run(cmd: Command) -> Report:
    """Dispatch a parsed command and build its report."""
    verb, opts = cmd.verb, dict(cmd.options)
    if verb not in VERBS:
        raise UnknownIdentifier(f"unknown verb {verb!r}")
    echo = {"verb": verb, "options": {k: v for k, v in sorted(opts.items()) if v not in (None, [], False)}}
    warnings: list[str] = []
    certificate: list = []
    dot = None
    t0 = time.perf_counter()
    if verb == "fixture-list":
        result = [{"id": i, "description": d} for i, d in fixture_list()]
        name = None
    else:
        pres = load_algebra(opts)
        name = pres.name
        alg = basis(pres)
        result, certificate, dot = _dispatch(verb, opts, pres, alg, warnings)
    ms = round((time.perf_counter() - t0) * 1000, 3)
    return Report(echo, name, result, certificate, None if opts.get("stable") else ms, warnings, dot)


def _dispatch(verb, opts, pres, alg, warnings):
    certificate: list = []
    dot = None
    if verb == "basis":
        result = {"dimension": alg.dimension, "words": [str(w) for w in alg.words],
                  "rules": {".".join(k): {".".join(t): c for t, c in v.items()} for k, v in alg.rs.rules.items()}}
    elif verb == "cartan":
        cd = cartan(alg)
        result = {"vertices": list(cd.vertices), "matrix": cd.C, "determinant": cd.detC}
    elif verb == "coxeter":
        poly = coxeter_polynomial(alg)
        m = recognize_dynkin(poly)
        result = {"polynomial": str(poly), "coefficients": list(poly.coefficients),
                  "self_reciprocal": poly.is_self_reciprocal(), "table_match": m.type, "grade": m.grade}
        if m.type:
            warnings.append("a Coxeter polynomial match is evidence, not a derived equivalence")
    elif verb == "flags":
        f = asdict(structure_flags(alg))
        result = f
    elif verb in ("truncate", "quotient"):
        S = _vertices(alg, opts["vertices"])
        out = cons.truncate_idempotent(alg, S) if verb == "truncate" else cons.quotient_idempotent(pres, S)
        result = {"presentation": print_dsl(out), "dimension": basis(out).dimension}
    elif verb == "tensor":
        out = cons.tensor(pres, _load_factor(opts["other"]))
        result = {"presentation": print_dsl(out), "dimension": basis(out).dimension}
    elif verb == "stratify":
        r = is_stratifying(alg, _vertices(alg, opts["vertices"]), opts.get("tor_cap") or 12)
        result = {"status": r.status, "witness_degree": r.witness_degree, "cohomology": r.cohomology}
        if r.status == "yes_up_to_cap":
            warnings.append("Tor computation stopped at the cap")
    elif verb == "ae-cohomology":
        result = {"cohomology": ae_cohomology(alg, _vertices(alg, opts["vertices"]), opts.get("tor_cap") or 12)}
    elif verb == "hom":
        X = direct_sum(parse_object(alg, opts["source"]))
        Y = direct_sum(parse_object(alg, opts["target"]))
        result = {"profile": hom_profile(alg, X, Y)}
        if opts["source"] == opts["target"]:
            result.update({k: v for k, v in presilting_profile(alg, parse_object(alg, opts["source"])).items()
                           if k != "profile"})
    elif verb == "mutate":
        node = base_node(alg)
        steps = []
        for tok in (t.strip() for t in opts.get("steps", "L0").split(",") if t.strip()):
            m = re.fullmatch(r"([LR])(\d+)", tok)
            if m is None:
                raise BadParameters(f"bad mutation step {tok!r}")
            k = int(m.group(2))
            if k >= len(node.summands):
                raise BadParameters(f"summand index {k} out of range")
            node = (left_mutation if m.group(1) == "L" else right_mutation)(alg, node, k)
            steps.append({"step": tok, **_node_payload(alg, node)})
            if node.caveat:
                warnings.append(f"after {tok}: a summand has End/rad of dimension > 1 over Q")
        result = {"steps": steps}
    elif verb == "enumerate":
        poset = enumerate_interval(alg, opts.get("d") or 2, opts.get("cap") or DEFAULT_CAP,
                                   opts.get("threads") or default_threads())
        result = {"status": poset.status, "count": len(poset), "d": poset.d,
                  "nodes": [[list(r) for r in n.g_matrix] for n in poset.nodes],
                  "edges": sorted(set(poset.edges))}
        warnings.extend(poset.warnings)
        if poset.complete:
            dot = hasse(poset).to_dot(pres.name or "hasse")
        else:
            warnings.append(f"cap {poset.cap} reached; the interval may be infinite")
    elif verb == "audit":
        poset = enumerate_interval(alg, opts.get("d") or 2, opts.get("cap") or DEFAULT_CAP,
                                   opts.get("threads") or default_threads())
        audit = component_tilting_audit(pres, poset)
        result = {"count": len(poset), "tilting": audit.tilting, "all_tilting": audit.all_tilting,
                  "none_tilting": audit.none_tilting}
    elif verb == "oracle":
        asserts = Assertions(opts.get("ph_type"), True if opts.get("simply_connected") else None,
                             True if opts.get("nonlocal") else None)
        budget = Budget(opts.get("subsets") or "auto", opts.get("max_subsets"),
                        opts.get("two_term_cap") or 0, opts.get("threads"))
        factors = tuple(_load_factor(f) for f in opts.get("factor") or ())
        if factors and len(factors) < 2:
            raise BadParameters("declare at least two tensor factors")
        fa = Assertions(opts.get("factor_type")) if opts.get("factor_type") else None
        v = verdict(pres, asserts, budget, factors, fa, audit=bool(opts.get("audit")))
        result = {"status": v.status, "evidence": v.evidence}
        certificate = v.to_dict()["certificate"]
    else:  # pragma: no cover - guarded by VERBS
        raise UnknownIdentifier(verb)
    return result, certificate, dot


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
        opts = {k: v for k, v in vars(ns).items() if k not in ("verb", "format")}
        fmt = ns.format
        if fmt not in ("json", "dot"):
            raise UnsupportedFormat(f"unknown output format {fmt!r}")
        report = run(Command(ns.verb, opts))
        sys.stdout.write(export(report, fmt))
        return 0
    except InputError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ConsistencyError as e:
        print(f"internal consistency error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
