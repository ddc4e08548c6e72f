import pytest

from siltkit import fixture
from siltkit.algebra import basis
from siltkit.constructions import linear_path, nakayama_cyclic, truncate_idempotent
from siltkit.errors import BadParameters, NotTriangular
from siltkit.oracle import (
    NO,
    UNKNOWN,
    YES,
    Assertions,
    Budget,
    Verdict,
    a_nr_verdict,
    candidate_subsets,
    graded_kronecker_verdict,
    local_rules,
    nakayama_verdict,
    tensor_verdict,
    truncation_search,
    verdict,
)

EXPECTED = {
    "example-kronecker": (YES, "R3"),
    "k": (YES, "R1"),
    "dual-numbers": (YES, "R1"),
    "a3-path": (YES, "R2"),
    "kronecker-2": (NO, "R2"),
    "star4-rsz": (NO, "R4"),
    "gk-model-1": (YES, "R3"),
    "atilde2-2-2": (NO, "R3"),
    "atilde-comm-2-2": (YES, None),
    "atilde-comm-3-6": (NO, "R6"),
    "n-12-4": (NO, "R5"),
    "n-2-3": (YES, "R5"),
    "a-9-3": (NO, None),
    "a-8-3": (YES, None),
    "bongartz-fails": (NO, "R8"),
    "double-kronecker": (NO, "R8"),
    "ladder-5": (NO, "R9"),
    "a3-tensor-a3": (NO, "R9"),
    "gamma-e7": (UNKNOWN, None),
    "example-y": (UNKNOWN, None),
}


@pytest.mark.parametrize("fid", sorted(EXPECTED))
def test_fixture_verdicts(fid):
    status, rule = EXPECTED[fid]
    v = verdict(fixture(fid))
    assert v.status == status
    if rule is not None:
        assert v.rules[0] == rule
    if status == UNKNOWN:
        assert any("Coxeter" in e for e in v.evidence)


@pytest.mark.parametrize("fid", sorted(EXPECTED))
def test_audit_mode_has_no_conflicts(fid):
    assert verdict(fixture(fid), audit=True).status == EXPECTED[fid][0]


def test_nakayama_examples():
    assert nakayama_verdict(11, 3).status == NO
    assert nakayama_verdict(5, 2).status == YES
    assert nakayama_verdict(9, 3).status == UNKNOWN
    assert nakayama_verdict(3, 4).status == YES  # 4 = 1 mod 3
    with pytest.raises(BadParameters):
        nakayama_verdict(1, 3)


def test_a_nr_examples():
    assert a_nr_verdict(9, 8).status == YES
    v = a_nr_verdict(4, 9)
    assert v.status == YES and v.certificate[0][2]["normalized_r"] == 4
    with pytest.raises(BadParameters):
        a_nr_verdict(3, 1)


def test_graded_kronecker():
    assert graded_kronecker_verdict(1, -1, 1).status == YES
    assert graded_kronecker_verdict(2, -1, 0).status == NO
    assert graded_kronecker_verdict(1, -3, 2).status == NO
    with pytest.raises(BadParameters):
        graded_kronecker_verdict(1, 0, 1)


def test_tensor_examples():
    a2, a3, a4, a5 = (linear_path(n) for n in (2, 3, 4, 5))
    assert tensor_verdict(a3, a3).status == NO
    assert tensor_verdict(a2, a4).status == YES
    assert tensor_verdict(a2, a5).status == NO
    assert tensor_verdict(a2, a2, more=(a2,)).status == NO
    assert tensor_verdict(linear_path(1), a3).status == YES
    # asserted derived type for a factor that is not a path algebra
    b = fixture("example-kronecker")
    assert tensor_verdict(a2, b).status == UNKNOWN
    assert tensor_verdict(a2, b, Assertions("A3")).status == YES
    assert tensor_verdict(a2, b, Assertions("D4")).status == NO
    with pytest.raises(NotTriangular):
        tensor_verdict(a2, nakayama_cyclic(2, 2))


def test_n_12_4_truncation_chain():
    hit, examined, exhausted = truncation_search(nakayama_cyclic(12, 4))
    assert hit.subset == list(range(1, 9))
    assert not exhausted and examined >= 1
    trunc = truncate_idempotent(nakayama_cyclic(12, 4), hit.subset)
    assert local_rules(trunc).status == NO  # replay of the certificate
    assert a_nr_verdict(8, 4).status == NO


def test_rsz_nakayama_agrees_with_gentle_rule():
    from siltkit.oracle import _local_decisions

    for n in range(2, 8):
        decided = list(_local_decisions(basis(nakayama_cyclic(n, 2)), stop=False))
        assert {v.status for v in decided} == {YES}
        assert {"R3", "R5"} <= {v.rules[0] for v in decided}


def test_subset_order_and_budget():
    subs = list(candidate_subsets([1, 2, 3, 4], "windows"))
    assert subs[:4] == [frozenset({1}), frozenset({2}), frozenset({3}), frozenset({4})]
    assert frozenset({1, 2}) in subs and frozenset({1, 3}) not in subs
    assert frozenset({1, 3}) in set(candidate_subsets([1, 2, 3, 4], "all"))
    assert list(candidate_subsets([1, 2, 3], "none")) == []
    with pytest.raises(BadParameters):
        list(candidate_subsets([1, 2], "most"))
    hit, examined, exhausted = truncation_search(nakayama_cyclic(12, 4), Budget(max_subsets=5))
    assert hit is None and examined == 5 and exhausted
    v = verdict(nakayama_cyclic(9, 3), budget=Budget(max_subsets=3))
    assert v.status == UNKNOWN and any("budget exhausted" in e for e in v.evidence)


def test_simply_connected_rule():
    g = fixture("gamma-e7")
    v = verdict(g, Assertions("E7", True))
    assert v.status == YES and v.rules == ["R11"]
    assert v.certificate[0][2]["asserted"] == {"piecewise_hereditary_type": "E7", "simply_connected": True}
    assert verdict(g, Assertions("D~5", True)).status == NO
    assert verdict(g, Assertions(None, True)).status == UNKNOWN


def test_two_term_evidence():
    v = verdict(fixture("example-y"), budget=Budget(two_term_cap=500))
    assert v.status == UNKNOWN
    assert any("2-term" in e for e in v.evidence)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(YES)
    with pytest.raises(ValueError):
        Verdict("Maybe")
    d = verdict(fixture("kronecker-2")).to_dict()
    assert d["status"] == NO and d["certificate"][0]["rule"] == "R2"
    assert all(set(c) == {"rule", "reference", "values"} for c in d["certificate"])
