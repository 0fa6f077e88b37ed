import pytest

from lckcalc.models import hopf_surface, kodaira_surface, torus4
from lckcalc.theorems import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    THEOREM_ORDER,
    THEOREMS,
    run_theorems,
)


@pytest.fixture(scope="module")
def torus_verdicts():
    return {v.theorem_id: v for v in run_theorems(torus4())}


@pytest.fixture(scope="module")
def hopf_verdicts():
    return {v.theorem_id: v for v in run_theorems(hopf_surface())}


@pytest.fixture(scope="module")
def kodaira_verdicts():
    return {v.theorem_id: v for v in run_theorems(kodaira_surface())}


def test_every_theorem_has_a_checker():
    assert set(THEOREM_ORDER) == set(THEOREMS)
    assert len(THEOREM_ORDER) == 21


def test_no_catalog_failures(torus_verdicts, hopf_verdicts, kodaira_verdicts):
    for verdicts in (torus_verdicts, hopf_verdicts, kodaira_verdicts):
        for v in verdicts.values():
            assert v.status != FAIL, (v.theorem_id, v.model, v.details)


def test_torus_routing(torus_verdicts):
    general = {"T2", "C2", "P5", "L3", "SL2", "L1"}
    for tid, v in torus_verdicts.items():
        if tid in general:
            assert v.status == PASS, tid
        else:
            assert v.status == NOT_APPLICABLE, tid
            assert "violated_hypothesis" in v.details


def test_torus_T3_branch_reports_harmonic_dims(torus_verdicts):
    v = torus_verdicts["T3"]
    assert v.status == NOT_APPLICABLE
    assert v.details["S_dims"] == [1, 4, 6, 4, 1]


def test_hopf_all_pass(hopf_verdicts):
    for tid, v in hopf_verdicts.items():
        assert v.status == PASS, (tid, v.details)


def test_kodaira_all_pass_except_C4(kodaira_verdicts):
    for tid, v in kodaira_verdicts.items():
        if tid == "C4":
            assert v.status == NOT_APPLICABLE  # b^2 = 4 is neither 0 nor 2
        else:
            assert v.status == PASS, (tid, v.details)


def test_hopf_T3_vanishing(hopf_verdicts):
    assert hopf_verdicts["T3"].details["S_dims"] == [0, 0, 0, 0, 0]


def test_hopf_T4_dimensions(hopf_verdicts):
    v = hopf_verdicts["T4"]
    assert v.details["h_box_by_degree"] == [0, 0, 0, 0, 0]
    assert v.details["h_box_00"] == 0


def test_hopf_T6_dimension_chain(hopf_verdicts):
    v = hopf_verdicts["T6"]
    assert v.details["s_k"] == [1, 0]
    assert v.details["b"] == [1, 1]  # b^0 = s_0, b^1 = s_1 + s_0


def test_hopf_C4_branch(hopf_verdicts):
    assert hopf_verdicts["C4"].details["branch"] == "b_n = 0"


def test_kodaira_T8_dimensions(kodaira_verdicts):
    details = kodaira_verdicts["T8"].details
    assert details["1,0"] == {"h_box": 1, "s": 1}
    assert details["0,1"] == {"h_box": 1, "s": 1}


def test_kodaira_T9_dimensions(kodaira_verdicts):
    details = kodaira_verdicts["T9"].details
    assert details["2,0"] == {"h_box": 1, "s_sum": 1, "h_dbar": 1, "h_d": 1}
    assert details["1,1"] == {"h_box": 2, "s_sum": 2, "h_dbar": 2, "h_d": 2}
    assert details["0,2"] == {"h_box": 1, "s_sum": 1, "h_dbar": 1, "h_d": 1}
    assert details["degree_n"] == {"b_n": 4, "h_box_n": 4}


def test_kodaira_T10_explanation(kodaira_verdicts):
    v = kodaira_verdicts["T10"]
    assert v.details["b_n"] == 4
    assert v.details["two_s_n_minus_1"] == 4
    assert v.details["chi"] == 0
    assert "b2 = 4 = 2*s_1" in v.explanation


def test_kodaira_C1_chain(kodaira_verdicts):
    details = kodaira_verdicts["C1"].details
    assert details == {"h_n0": 1, "h_n_minus_1_0": 1, "s_n_minus_1_0": 1}


def test_kodaira_P4_table(kodaira_verdicts):
    details = kodaira_verdicts["P4"].details
    assert details["1,0"] == {"lhs": 1, "h_box": 1}
    assert details["1,1"] == {"lhs": 2, "h_box": 2}


def test_unknown_theorem_id():
    with pytest.raises(KeyError):
        run_theorems(torus4(), ["T99"])


def test_single_theorem_invocation():
    verdicts = run_theorems(kodaira_surface(), ["T10"])
    assert len(verdicts) == 1
    assert verdicts[0].theorem_id == "T10"
    assert verdicts[0].status == PASS


def test_verdicts_deterministic():
    a = run_theorems(hopf_surface(), ["T9"])[0]
    b = run_theorems(hopf_surface(), ["T9"])[0]
    assert a.details == b.details
    assert a.status == b.status
