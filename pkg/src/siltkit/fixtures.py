"""Named algebras with stable ids."""
from __future__ import annotations

from typing import Callable

from .algebra import AlgebraPresentation, Arrow, LinComb, Quiver, make_path
from .constructions import (
    atilde_comm,
    atilde_monomial,
    extended_canonical_246,
    ladder,
    linear_path,
    nakayama_cyclic,
    nakayama_linear,
    path_algebra,
    rad_square_zero,
    tensor,
)
from .errors import BadParameters, UnknownIdentifier


def _pres(vertices, arrows, rels, name) -> AlgebraPresentation:
    q = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
    out = []
    for r in rels:
        out.append(LinComb({make_path(q, w.split("*")): c for w, c in r.items()}))
    return AlgebraPresentation(q, tuple(out), name)


def point() -> AlgebraPresentation:
    return _pres([1], [], [], "K")


def dual_numbers() -> AlgebraPresentation:
    return _pres([1], [("x", 1, 1)], [{"x*x": 1}], "K[x]/(x^2)")


def kronecker(n: int = 2) -> AlgebraPresentation:
    return _pres([1, 2], [(f"a{i}", 1, 2) for i in range(1, n + 1)], [], f"Kronecker({n})")


def example_kronecker() -> AlgebraPresentation:
    """Triangle ``beta: 1->3, gamma: 3->2, alpha: 1->2`` with ``beta*gamma = 0``."""
    return _pres([1, 2, 3], [("alpha", 1, 2), ("beta", 1, 3), ("gamma", 3, 2)],
                 [{"beta*gamma": 1}], "triangle-zero")


def example_y() -> AlgebraPresentation:
    """``1 -> 2 -> 3 -> 4`` with ``2 -> 5`` and ``6 -> 3``; ``alpha*beta*gamma = 0``."""
    return _pres(
        [1, 2, 3, 4, 5, 6],
        [("alpha", 1, 2), ("beta", 2, 3), ("gamma", 3, 4), ("eta", 2, 5), ("theta", 6, 3)],
        [{"alpha*beta*gamma": 1}],
        "E6-piecewise",
    )


def gamma_e7() -> AlgebraPresentation:
    """Seven vertices; ``beta*alpha = delta*alpha = gamma*eps = 0``, ``gamma*beta = y*x``."""
    return _pres(
        [1, 2, 3, 4, 5, 6, 7],
        [("alpha", 2, 1), ("beta", 3, 2), ("gamma", 4, 3), ("delta", 5, 2), ("eps", 3, 6),
         ("y", 4, 7), ("x", 7, 2)],
        [{"beta*alpha": 1}, {"delta*alpha": 1}, {"gamma*eps": 1}, {"gamma*beta": 1, "y*x": -1}],
        "Gamma",
    )


def gamma_sub5() -> AlgebraPresentation:
    """Full subquiver of :func:`gamma_e7` on 2, 3, 4, 5, 7 (``gamma*beta = y*x``)."""
    return _pres(
        [2, 3, 4, 5, 7],
        [("beta", 3, 2), ("gamma", 4, 3), ("delta", 5, 2), ("y", 4, 7), ("x", 7, 2)],
        [{"gamma*beta": 1, "y*x": -1}],
        "Gamma-sub5",
    )


def gamma_sub4() -> AlgebraPresentation:
    return _pres(
        [2, 3, 4, 7],
        [("beta", 3, 2), ("gamma", 4, 3), ("y", 4, 7), ("x", 7, 2)],
        [{"gamma*beta": 1, "y*x": -1}],
        "Gamma-sub4",
    )


def bongartz_fails() -> AlgebraPresentation:
    """``alpha: 1->2``, ``beta, gamma: 2->3``, ``delta: 3->1``; ``alpha*beta = gamma*delta = delta*alpha = 0``."""
    return _pres(
        [1, 2, 3],
        [("alpha", 1, 2), ("beta", 2, 3), ("gamma", 2, 3), ("delta", 3, 1)],
        [{"alpha*beta": 1}, {"gamma*delta": 1}, {"delta*alpha": 1}],
        "gldim4",
    )


def double_kronecker_squares() -> AlgebraPresentation:
    """``2 => 1 => 3`` (arrows x, y twice) with ``x*x = y*y = 0``."""
    return _pres(
        [2, 1, 3],
        [("x1", 2, 1), ("y1", 2, 1), ("x2", 1, 3), ("y2", 1, 3)],
        [{"x1*x2": 1}, {"y1*y2": 1}],
        "double-kronecker",
    )


def triangle_c() -> AlgebraPresentation:
    """``1 -> 2 <-> 3`` with ``gamma*beta = 0`` (beta: 2->3, gamma: 3->2)."""
    return _pres([1, 2, 3], [("alpha", 1, 2), ("beta", 2, 3), ("gamma", 3, 2)],
                 [{"gamma*beta": 1}], "C")


def a3_zero_relation() -> AlgebraPresentation:
    return nakayama_linear(3, 2)


def star_rsz(arms: int = 4) -> AlgebraPresentation:
    """Radical-square-zero algebra on a star; the first half of the arms point inward."""
    vs = ["c"] + [f"l{i}" for i in range(1, arms + 1)]
    half = arms // 2
    arrows = tuple(Arrow(f"s{i}", f"l{i}", "c") if i <= half else Arrow(f"s{i}", "c", f"l{i}")
                   for i in range(1, arms + 1))
    return rad_square_zero(Quiver(tuple(vs), arrows), f"star{arms}-rsz")


def star_branch_path(p: int, q: int) -> AlgebraPresentation:
    """Path algebra ``. -> ... -> * <- ... <- .`` with arms of p-1 and q-1 arrows."""
    vs = [f"u{i}" for i in range(1, p)] + ["star"] + [f"v{i}" for i in range(1, q)]
    arrows = []
    chain = [f"u{i}" for i in range(1, p)] + ["star"]
    for i in range(len(chain) - 1):
        arrows.append(Arrow(f"a{i + 2}", chain[i], chain[i + 1]))
    chain = [f"v{i}" for i in range(1, q)] + ["star"]
    for i in range(len(chain) - 1):
        arrows.append(Arrow(f"b{i + 2}", chain[i], chain[i + 1]))
    return path_algebra(Quiver(tuple(vs), tuple(arrows)), f"branch({p},{q})")


def graded_kronecker_model(depth: int = 1) -> AlgebraPresentation:
    """Radical-square-zero algebra on ``0 -> 1 -> ... -> depth -> t`` plus ``0 -> t``."""
    vs = list(range(0, depth + 2))
    arrows = [Arrow(f"c{i}", i, i + 1) for i in range(depth + 1)]
    arrows.append(Arrow("long", 0, depth + 1))
    return rad_square_zero(Quiver(tuple(vs), tuple(arrows)), f"gk-model({depth})")


def commutative_square() -> AlgebraPresentation:
    return _pres([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)],
                 [{"a*b": 1, "c*d": -1}], "comm-square")


FIXTURES: dict[str, tuple[Callable[[], AlgebraPresentation], str]] = {
    "k": (point, "the field K"),
    "dual-numbers": (dual_numbers, "K[x]/(x^2)"),
    "a2-path": (lambda: linear_path(2), "path algebra of 1 -> 2"),
    "a3-path": (lambda: linear_path(3), "path algebra of 1 -> 2 -> 3"),
    "a4-path": (lambda: linear_path(4), "path algebra of linear A4"),
    "a3-rad2": (a3_zero_relation, "1 -> 2 -> 3 with the length-two path zero"),
    "kronecker-2": (kronecker, "Kronecker quiver, two parallel arrows"),
    "example-kronecker": (example_kronecker, "triangle 1->3->2, 1->2 with one zero relation"),
    "example-y": (example_y, "E6-shaped quiver with a length-three zero relation"),
    "gamma-sec2-5": (gamma_e7, "seven-vertex algebra with Coxeter polynomial of type E7"),
    "gamma-e7": (gamma_e7, "alias of gamma-sec2-5"),
    "gamma-sub5": (gamma_sub5, "five-vertex subalgebra of gamma-sec2-5 (type D5 polynomial)"),
    "gamma-sub4": (gamma_sub4, "commutative square inside gamma-sec2-5"),
    "bongartz-fails": (bongartz_fails, "three vertices, double arrow, global dimension 4"),
    "double-kronecker": (double_kronecker_squares, "2 => 1 => 3 with x^2 = y^2 = 0"),
    "triangle-c": (triangle_c, "1 -> 2 <-> 3 with one zero relation"),
    "atilde2-2-2": (lambda: atilde_monomial(2, 2), "two length-two paths, both zero"),
    "atilde-comm-2-2": (lambda: atilde_comm(2, 2), "commutative square as Atilde(2,2)"),
    "atilde-comm-3-3": (lambda: atilde_comm(3, 3), "Atilde(3,3) with commutative relation"),
    "atilde-comm-3-6": (lambda: atilde_comm(3, 6), "Atilde(3,6) with commutative relation"),
    "branch-3-4": (lambda: star_branch_path(3, 4), "two arms meeting at a sink"),
    "extended-canonical-246": (extended_canonical_246, "extended canonical algebra of type <2,4,6>"),
    "commutative-square": (commutative_square, "KA2 (x) KA2"),
    "ladder-3": (lambda: ladder(3), "commutative ladder of degree 3"),
    "ladder-4": (lambda: ladder(4), "commutative ladder of degree 4"),
    "ladder-5": (lambda: ladder(5), "commutative ladder of degree 5"),
    "a3-tensor-a3": (lambda: tensor(linear_path(3), linear_path(3)), "KA3 (x) KA3"),
    "star4-rsz": (star_rsz, "radical-square-zero star, two arms in and two out"),
    "gk-model-1": (graded_kronecker_model, "rsz model of the graded Kronecker K(1,1)"),
    "n-2-2": (lambda: nakayama_cyclic(2, 2), "N(2,2)"),
    "n-2-3": (lambda: nakayama_cyclic(2, 3), "N(2,3)"),
    "n-3-2": (lambda: nakayama_cyclic(3, 2), "N(3,2)"),
    "n-3-4": (lambda: nakayama_cyclic(3, 4), "N(3,4)"),
    "n-11-3": (lambda: nakayama_cyclic(11, 3), "N(11,3)"),
    "n-12-4": (lambda: nakayama_cyclic(12, 4), "N(12,4)"),
    "a-9-3": (lambda: nakayama_linear(9, 3), "A(9,3)"),
    "a-8-3": (lambda: nakayama_linear(8, 3), "A(8,3)"),
}


def fixture(fid: str) -> AlgebraPresentation:
    try:
        make, _ = FIXTURES[fid]
    except KeyError:
        raise UnknownIdentifier(f"unknown fixture {fid!r}") from None
    return make()


def fixture_list() -> list[tuple[str, str]]:
    return [(k, d) for k, (_, d) in FIXTURES.items()]


_STANDARD: dict[str, Callable[..., AlgebraPresentation]] = {
    "nakayama_cyclic": nakayama_cyclic,
    "nakayama_linear": nakayama_linear,
    "path": path_algebra,
    "rad_square_zero": rad_square_zero,
    "ladder": ladder,
    "atilde_comm": atilde_comm,
    "atilde_monomial": atilde_monomial,
    "extended_canonical_246": lambda: extended_canonical_246(),
    "linear_path": linear_path,
    "example_fixture": fixture,
}


def _parse_call(text: str):
    text = text.strip()
    if "(" not in text:
        return text, ()
    if not text.endswith(")"):
        raise BadParameters(f"cannot read standard algebra {text!r}")
    head, _, args = text[:-1].partition("(")
    out = []
    for a in (x.strip() for x in args.split(",")):
        if not a:
            continue
        out.append(int(a) if a.lstrip("-").isdigit() else a)
    return head.strip(), tuple(out)


def make_standard(spec) -> AlgebraPresentation:
    """Named family member, e.g. ``"nakayama_linear(9,3)"`` or ``("ladder", 4)``."""
    if isinstance(spec, str):
        name, args = _parse_call(spec)
    else:
        name, *rest = spec
        args = tuple(rest)
    make = _STANDARD.get(name)
    if make is None:
        raise UnknownIdentifier(f"unknown standard family {name!r}")
    try:
        return make(*args)
    except TypeError as e:
        raise BadParameters(f"{name}: {e}") from None
