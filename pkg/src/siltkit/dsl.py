"""Line-oriented input language for bound quiver algebras.

::

    algebra N23           # name
    vertex 1 2
    arrow x1 : 1 -> 2
    arrow x2 : 2 -> 1 deg -1
    rel x1*x2*x1
    rel 2*a*b - 1/2 c*d

Paths are written left to right.  A term is an optional rational
coefficient followed by a ``*``-separated path; terms are joined by
``+`` and ``-``.  Numeric vertex ids are read as integers.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraPresentation, Arrow, LinComb, PathWord, Quiver, basis
from .errors import DSLSyntaxError, NonAdmissibleRelation, NonParallelRelation, UnknownIdentifier

_IDENT = re.compile(r"[A-Za-z0-9_'.]+")
_NUMBER = re.compile(r"\d+(/\d+)?")
_TERM_TOKEN = re.compile(r"\s*([+-]|[A-Za-z0-9_'./*]+)")


def _vertex(tok: str):
    return int(tok) if tok.isdigit() else tok


def _split(line: str) -> tuple[str, int]:
    """Strip a trailing comment; returns the text and its leading offset."""
    text = line.split("#", 1)[0].rstrip()
    stripped = text.lstrip()
    return stripped, len(text) - len(stripped)


def _parse_relation(body: str, col0: int, lineno: int, amap: dict) -> LinComb:
    terms: dict = {}
    pos = 0
    sign = None
    pending = None  # coefficient written as a separate token
    expect_term = True
    while pos < len(body):
        m = _TERM_TOKEN.match(body, pos)
        if m is None or not m.group(1):
            if body[pos:].strip() == "":
                break
            raise DSLSyntaxError(f"unexpected character {body[pos]!r}", lineno, col0 + pos + 1)
        tok = m.group(1)
        col = col0 + m.start(1) + 1
        pos = m.end()
        if tok in "+-":
            if pending is not None or (not expect_term and sign is not None):
                raise DSLSyntaxError("sign without a term", lineno, col)
            if sign is not None:
                raise DSLSyntaxError("two signs in a row", lineno, col)
            sign = -1 if tok == "-" else 1
            expect_term = True
            continue
        if not expect_term:
            raise DSLSyntaxError("missing '+' or '-' between terms", lineno, col)
        factors = tok.split("*")
        if any(f == "" for f in factors):
            raise DSLSyntaxError("empty factor in a path", lineno, col)
        coeff = Fraction(1)
        if _NUMBER.fullmatch(factors[0]):
            if pending is not None:
                raise DSLSyntaxError("two coefficients on one term", lineno, col)
            coeff = Fraction(factors[0])
            factors = factors[1:]
            if not factors:
                pending = coeff
                continue
        if pending is not None:
            coeff *= pending
            pending = None
        for f in factors:
            if _NUMBER.fullmatch(f):
                raise DSLSyntaxError("coefficient must lead the term", lineno, col)
            if f not in amap:
                raise UnknownIdentifier(f"unknown arrow {f!r} (line {lineno}, column {col})")
        for a, b in zip(factors, factors[1:]):
            if amap[a].target != amap[b].source:
                raise DSLSyntaxError(f"arrows {a} and {b} do not compose", lineno, col)
        w = PathWord(amap[factors[0]].source, amap[factors[-1]].target, tuple(factors))
        terms[w] = terms.get(w, 0) + (sign or 1) * coeff
        sign = None
        expect_term = False
    if pending is not None or sign is not None:
        raise DSLSyntaxError("relation ends without a term", lineno, col0 + len(body) + 1)
    if not terms:
        raise DSLSyntaxError("empty relation", lineno, col0 + 1)
    rel = LinComb(terms)
    if not rel.is_parallel():
        raise NonParallelRelation(f"relation on line {lineno} mixes paths with different endpoints")
    return rel


def parse_dsl(text: str, check: bool = True) -> AlgebraPresentation:
    """Parse a presentation; with ``check`` the algebra must be finite dimensional."""
    name = ""
    vertices: list = []
    arrows: list[Arrow] = []
    rel_lines: list = []
    seen_v: set = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, off = _split(raw)
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest_off = off + len(head) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if head == "algebra":
            if not rest or " " in rest:
                raise DSLSyntaxError("expected 'algebra <id>'", lineno, off + 1)
            name = rest
        elif head == "vertex":
            if not rest:
                raise DSLSyntaxError("expected at least one vertex id", lineno, off + 1)
            for m in re.finditer(r"\S+", rest):
                tok = m.group(0)
                if not _IDENT.fullmatch(tok):
                    raise DSLSyntaxError(f"bad vertex id {tok!r}", lineno, rest_off + m.start() + 1)
                v = _vertex(tok)
                if v in seen_v:
                    raise DSLSyntaxError(f"vertex {tok} declared twice", lineno, rest_off + m.start() + 1)
                seen_v.add(v)
                vertices.append(v)
        elif head == "arrow":
            m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)(?:\s+deg\s+(-?\d+))?", rest)
            if m is None:
                raise DSLSyntaxError("expected 'arrow <id> : <v> -> <w> [deg <int>]'", lineno, rest_off + 1)
            aid, s, t, deg = m.groups()
            if not _IDENT.fullmatch(aid) or _NUMBER.fullmatch(aid):
                raise DSLSyntaxError(f"bad arrow id {aid!r}", lineno, rest_off + 1)
            if any(a.id == aid for a in arrows):
                raise DSLSyntaxError(f"arrow {aid} declared twice", lineno, rest_off + 1)
            for v in (s, t):
                if _vertex(v) not in seen_v:
                    raise UnknownIdentifier(f"unknown vertex {v!r} (line {lineno})")
            arrows.append(Arrow(aid, _vertex(s), _vertex(t), int(deg) if deg else 0))
        elif head == "rel":
            if not rest:
                raise DSLSyntaxError("expected a relation", lineno, off + 1)
            rel_lines.append((lineno, rest_off, rest))
        else:
            raise DSLSyntaxError(f"unknown keyword {head!r}", lineno, off + 1)
    if not vertices:
        raise DSLSyntaxError("no vertices declared", 1, 1)
    quiver = Quiver(tuple(vertices), tuple(arrows))
    amap = quiver.arrow_map
    rels = []
    for lineno, col0, body in rel_lines:
        rel = _parse_relation(body, col0, lineno, amap)
        if any(w.length < 2 for w in rel.terms):
            raise NonAdmissibleRelation(f"relation on line {lineno} has a term of length < 2")
        rels.append(rel)
    pres = AlgebraPresentation(quiver, tuple(rels), name)
    if check:
        basis(pres)  # raises DimensionUnbounded for non-admissible input
    return pres


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_dsl(pres: AlgebraPresentation) -> str:
    q = pres.quiver
    name = re.sub(r"[^A-Za-z0-9_'.]", "_", pres.name) if pres.name else ""
    lines = []
    if name:
        lines.append(f"algebra {name}")
    lines.append("vertex " + " ".join(str(v) for v in q.vertices))
    for a in q.arrows:
        deg = f" deg {a.degree}" if a.degree else ""
        lines.append(f"arrow {a.id} : {a.source} -> {a.target}{deg}")
    for r in pres.relations:
        parts = []
        for k, (w, c) in enumerate(r.terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else _coeff_text(a) + "*"
            body = coef + "*".join(w.arrows)
            parts.append(("- " if sign == "-" else "") + body if k == 0 else f"{sign} {body}")
        lines.append("rel " + " ".join(parts))
    return "\n".join(lines) + "\n"
