"""Exact linear algebra over Q on sparse ``{col: value}`` rows.

The elimination kernel comes from the compiled ``_echelon`` extension when it
is importable, otherwise from the pure-Python ``_echelon_py``.  Set
``SILTKIT_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from fractions import Fraction

if os.environ.get("SILTKIT_PURE"):
    from ._echelon_py import Echelon, to_int_row
    BACKEND = "python"
else:
    try:
        from ._echelon import Echelon, to_int_row  # type: ignore[import-not-found]
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        from ._echelon_py import Echelon, to_int_row
        BACKEND = "python"

__all__ = [
    "BACKEND",
    "Echelon",
    "to_int_row",
    "rank",
    "nullspace",
    "Subspace",
    "solve_in_span",
    "remainder",
    "back_substitute",
]

_MARK = 1 << 62  # tracking column, larger than any real column index


def rank(rows) -> int:
    e = Echelon()
    for r in rows:
        if r:
            e.add(to_int_row(r))
    return e.rank


def nullspace(rows, ncols: int) -> list[dict[int, Fraction]]:
    """Kernel basis of the matrix whose rows are given (``row . x = 0``)."""
    e = Echelon()
    for r in rows:
        if r:
            e.add(to_int_row(r))
    return e.nullspace(ncols)


class Subspace:
    """Span of sparse vectors supporting membership and complements.

    Keeps the original spanning vectors for independent members so that
    coordinates can be recovered with :meth:`coordinates`.
    """

    def __init__(self, vectors=()):
        self._ech = Echelon()
        self.basis: list[dict] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return self._ech.rank

    def add(self, vec) -> bool:
        if not vec:
            return False
        if self._ech.add(to_int_row(vec)) is None:
            return False
        self.basis.append(vec)
        return True

    def contains(self, vec) -> bool:
        return not vec or self._ech.contains(to_int_row(vec))


def solve_in_span(vectors, target) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i vectors[i] == target``; ``None`` if none.

    Works on the transposed system; the solution returned is the one with
    free coefficients set to zero.
    """
    n = len(vectors)
    if not target:
        return [Fraction(0)] * n
    # columns: one per vector, plus the right-hand side at index n
    eqs: dict = {}
    for i, v in enumerate(vectors):
        for k, x in v.items():
            eqs.setdefault(k, {})[i] = x
    for k, x in target.items():
        eqs.setdefault(k, {})[n] = -Fraction(x)
    e = Echelon()
    for row in eqs.values():
        r = {c: x for c, x in row.items() if x}
        if r:
            e.add(to_int_row(r))
    red = e.rref()
    if n in red:
        return None
    sol = [Fraction(0)] * n
    for c, row in red.items():
        sol[c] = -row.get(n, Fraction(0))
    return sol


def remainder(ech: Echelon, vec) -> dict[int, Fraction]:
    """Exact ``vec`` minus its projection along the pivots of ``ech``.

    The echelon kernel works up to scalars, so a marker column records the
    scale and is divided back out.
    """
    if not vec:
        return {}
    row = to_int_row(dict(vec))
    k0 = next(iter(row))  # recovers the factor applied by to_int_row
    scale = Fraction(row[k0]) / Fraction(vec[k0])
    row[_MARK] = 1
    red = ech.reduce(row)
    m = Fraction(red.pop(_MARK)) * scale
    return {k: Fraction(v) / m for k, v in red.items()}


def back_substitute(ech: Echelon, fixed: dict) -> dict[int, Fraction]:
    """Kernel vector with prescribed values on non-pivot columns.

    ``fixed`` maps free columns to values; pivot columns are solved from the
    stored rows, highest pivot first.
    """
    x = {k: Fraction(v) for k, v in fixed.items() if v}
    for c in sorted(ech.pivots, reverse=True):
        row = ech.pivots[c]
        acc = Fraction(0)
        for k, v in row.items():
            if k != c:
                xv = x.get(k)
                if xv:
                    acc += v * xv
        if acc:
            x[c] = -acc / row[c]
    return x
