import pytest

from siltkit import basis, fixture, parse_dsl, print_dsl
from siltkit.algebra import normalize
from siltkit.errors import (
    DimensionUnbounded,
    DSLSyntaxError,
    NonAdmissibleRelation,
    NonParallelRelation,
    UnknownIdentifier,
)
from siltkit.fixtures import fixture_list

N23 = """
algebra N23    # cyclic Nakayama
vertex 1 2
arrow x1 : 1 -> 2
arrow x2 : 2 -> 1
rel x1*x2*x1
rel x2*x1*x2
"""


def test_parse_nakayama():
    pres = parse_dsl(N23)
    assert pres.name == "N23"
    assert pres.quiver.vertices == (1, 2)
    assert basis(pres).dimension == 6


def test_coefficients_and_degrees():
    text = """vertex a b
arrow p : a -> b deg -1
arrow q : a -> b
arrow s : b -> b
rel 2*p*s - 1/2 q*s
rel s*s
"""
    pres = parse_dsl(text)
    assert pres.quiver.arrow_map["p"].degree == -1
    rel = pres.relations[0]
    assert sorted(rel.terms.values()) == [-0.5, 2]


@pytest.mark.parametrize("fid", [f for f, _ in fixture_list()])
def test_round_trip(fid):
    pres = fixture(fid)
    again = parse_dsl(print_dsl(pres))
    assert again.quiver.vertices == pres.quiver.vertices
    assert [(a.id, a.source, a.target, a.degree) for a in again.quiver.arrows] == \
        [(a.id, a.source, a.target, a.degree) for a in pres.quiver.arrows]
    assert basis(again).dimension == basis(pres).dimension
    assert normalize(again).rule_list() == normalize(pres).rule_list()


@pytest.mark.parametrize("text,err", [
    ("vertex 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrel a - b\n", NonParallelRelation),
    ("vertex 1\narrow a : 1 -> 1\nrel a\n", NonAdmissibleRelation),
    ("vertex 1\narrow a : 1 -> 1\n", DimensionUnbounded),
    ("vertex 1\narrow a : 1 -> 3\n", UnknownIdentifier),
    ("vertex 1\narrow a : 1 -> 1\nrel a*c\n", UnknownIdentifier),
    ("vertex 1 2\narrow a : 1 -> 2\nrel a*a\n", DSLSyntaxError),
    ("vertex 1\nfrobnicate\n", DSLSyntaxError),
    ("vertex 1 1\n", DSLSyntaxError),
    ("vertex 1\narrow a 1 -> 1\n", DSLSyntaxError),
    ("vertex 1\narrow a : 1 -> 1\nrel a*a +\n", DSLSyntaxError),
    ("vertex 1\narrow a : 1 -> 1\nrel a*a a*a\n", DSLSyntaxError),
    ("", DSLSyntaxError),
])
def test_errors(text, err):
    with pytest.raises(err):
        parse_dsl(text)


def test_error_position():
    with pytest.raises(DSLSyntaxError) as e:
        parse_dsl("vertex 1\narrow a : 1 -> 1\nrel a*a ! a\n")
    assert e.value.line == 3


def test_unchecked_parse_allows_infinite():
    pres = parse_dsl("vertex 1\narrow a : 1 -> 1\n", check=False)
    assert len(pres.quiver.arrows) == 1
