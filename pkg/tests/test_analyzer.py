import itertools

import pytest
from hypothesis import given, settings

import dpdn.analyzer as analyzer
from dpdn.analyzer import (
    EnumerationLimitError,
    Violation,
    check_depth_uniform,
    check_early_propagation,
    check_fully_connected,
    check_function,
    depth_by_assignment,
    discharge_set,
    energy_report,
    evaluation_depth,
    full_report,
)
from dpdn.boolexpr import parse_expression
from dpdn.enhancer import insert_pass_gates
from dpdn.fcsynth import fc_from_expr
from dpdn.switchnet import PRECHARGE, build_genuine, renumber

import helpers
from conftest import nnf_expressions


@pytest.fixture
def and_nand():
    e = parse_expression("A & B")
    return {
        "expr": e,
        "genuine": build_genuine(e),
        "fc": fc_from_expr(e),
        "enhanced": insert_pass_gates(fc_from_expr(e)),
    }


class TestCheckFunction:
    def test_fc_output_passes(self, and_nand):
        assert check_function(and_nand["fc"], and_nand["expr"]) == []

    def test_wrong_function_witnessed(self, and_nand):
        violations = check_function(and_nand["fc"], parse_expression("A | B"))
        assignments = {v.assignment for v in violations}
        assert assignments == {(("A", 0), ("B", 1)), (("A", 1), ("B", 0))}
        assert all(v.kind == "wrong_function" for v in violations)

    def test_genuine_oai22_passes(self):
        e = parse_expression("(A | B) & (C | D)")
        assert check_function(build_genuine(e), e) == []

    def test_input_mismatch_raises(self, and_nand):
        with pytest.raises(ValueError, match="inputs"):
            check_function(and_nand["fc"], parse_expression("A & C"))

    def test_violations_sorted_deterministically(self, and_nand):
        violations = check_function(and_nand["fc"], parse_expression("A | B"))
        assert violations == sorted(violations, key=lambda v: (tuple(str(x) for _, x in v.assignment), v.kind))


class TestCheckFullyConnected:
    def test_genuine_and_nand_memory_effect(self, and_nand):
        violations = check_fully_connected(and_nand["genuine"])
        assert violations == [Violation("floating_node", (("A", 0), ("B", 0)), "W0")]

    def test_fc_and_nand_passes(self, and_nand):
        assert check_fully_connected(and_nand["fc"]) == []

    def test_no_internal_nodes_vacuous(self):
        assert check_fully_connected(fc_from_expr(parse_expression("A"))) == []

    def test_isomorphism_invariant(self, and_nand):
        assert check_fully_connected(renumber(and_nand["genuine"])) == check_fully_connected(
            and_nand["genuine"]
        )
        assert check_fully_connected(renumber(and_nand["fc"])) == []


class TestDischargeSet:
    def test_fc_discharges_everything(self, and_nand):
        fc = and_nand["fc"]
        assert discharge_set(fc, {"A": 1, "B": 1}) == frozenset(("X", "Y", "Z", "W0"))
        assert discharge_set(fc, {"A": 0, "B": 1}) == frozenset(("X", "Y", "Z", "W0"))

    def test_genuine_floats_internal_at_00(self, and_nand):
        assert discharge_set(and_nand["genuine"], {"A": 0, "B": 0}) == frozenset(("X", "Y", "Z"))

    def test_matches_bfs_oracle(self, and_nand):
        for network in (and_nand["genuine"], and_nand["fc"], and_nand["enhanced"]):
            for bits in itertools.product((0, 1), repeat=2):
                assignment = dict(zip(network.inputs, bits))
                assert discharge_set(network, assignment) == helpers.discharge_oracle(network, assignment)

    @given(nnf_expressions(max_literals=6))
    @settings(max_examples=30, deadline=None)
    def test_monotone_in_closed_switches(self, e):
        network = fc_from_expr(e)
        inputs = network.inputs
        for bits in itertools.product((0, 1), repeat=len(inputs)):
            full = dict(zip(inputs, bits))
            partial = dict(full)
            partial[inputs[0]] = PRECHARGE
            assert discharge_set(network, partial) <= discharge_set(network, full)


class TestEnergyReport:
    def test_genuine_and_nand_leaks(self, and_nand):
        report = energy_report(and_nand["genuine"])
        assert report.per_assignment == {(0, 0): 3, (0, 1): 4, (1, 0): 4, (1, 1): 4}
        assert report.mean == 3.75
        assert report.variance == 0.1875
        assert (report.min_energy, report.max_energy) == (3, 4)

    def test_fc_and_nand_constant(self, and_nand):
        report = energy_report(and_nand["fc"])
        assert set(report.per_assignment.values()) == {4}
        assert report.variance == 0

    def test_single_literal_constant_three(self):
        report = energy_report(fc_from_expr(parse_expression("A")))
        assert set(report.per_assignment.values()) == {3}
        assert report.variance == 0

    def test_covers_all_assignments(self, and_nand):
        report = energy_report(and_nand["enhanced"])
        assert sorted(report.per_assignment) == sorted(itertools.product((0, 1), repeat=2))
        assert report.variance >= 0


class TestEvaluationDepth:
    def test_fc_and_nand_varies(self, and_nand):
        fc = and_nand["fc"]
        assert evaluation_depth(fc, {"A": 1, "B": 1}) == 2
        assert evaluation_depth(fc, {"A": 0, "B": 0}) == 1

    def test_enhanced_and_nand_constant_two(self, and_nand):
        assert set(depth_by_assignment(and_nand["enhanced"]).values()) == {2}

    def test_no_conduction_raises(self, and_nand):
        with pytest.raises(ValueError, match="neither output"):
            evaluation_depth(and_nand["fc"], {"A": PRECHARGE, "B": PRECHARGE})

    def test_check_depth_uniform_flags_fc(self, and_nand):
        violations = check_depth_uniform(and_nand["fc"])
        assert {v.kind for v in violations} == {"unequal_depth"}
        assert check_depth_uniform(and_nand["enhanced"]) == []


class TestEarlyPropagation:
    def test_enhanced_passes_all_partials(self, and_nand):
        assert check_early_propagation(and_nand["enhanced"]) == []

    def test_fc_and_nand_violates(self, and_nand):
        violations = check_early_propagation(and_nand["fc"])
        assert (("A", PRECHARGE), ("B", 0)) in {v.assignment for v in violations}
        witnessed = {v.assignment: v.witness for v in violations}
        assert witnessed[(("A", PRECHARGE), ("B", 0))] == ("Y", "Z")

    def test_sweep_size(self, and_nand):
        # 3^2 - 2^2 partials, none all-complementary
        seen = {v.assignment for v in check_early_propagation(and_nand["fc"])}
        assert all(PRECHARGE in dict(a).values() for a in seen)


class TestFullReport:
    def test_fc_all_pass_except_early_propagation(self, and_nand):
        report = full_report(and_nand["fc"], and_nand["expr"])
        assert report.verdicts == {
            "function": True,
            "fully_connected": True,
            "early_propagation": False,
            "constant_energy": True,
            "constant_depth": False,
        }

    def test_enhanced_all_pass(self, and_nand):
        report = full_report(and_nand["enhanced"], and_nand["expr"])
        assert all(report.verdicts.values())
        assert report.pass_gate_count == 2
        assert report.device_count == 6

    def test_genuine_fails_connectivity_and_energy(self, and_nand):
        report = full_report(and_nand["genuine"], and_nand["expr"])
        assert report.verdicts["fully_connected"] is False
        assert report.verdicts["constant_energy"] is False
        assert report.verdicts["function"] is True

    @given(nnf_expressions(max_literals=6))
    @settings(max_examples=20, deadline=None)
    def test_constant_energy_iff_fully_connected_corpus(self, e):
        network = fc_from_expr(e)
        report = full_report(network, e)
        assert report.verdicts["fully_connected"]
        assert report.verdicts["constant_energy"]
        everything = frozenset(network.nodes())
        for bits in itertools.product((0, 1), repeat=len(network.inputs)):
            assert discharge_set(network, dict(zip(network.inputs, bits))) == everything


class TestEnumerationCaps:
    def test_env_override_hard_cap(self, monkeypatch, and_nand):
        monkeypatch.setenv("DPDN_MAX_INPUTS", "1")
        with pytest.raises(EnumerationLimitError):
            energy_report(and_nand["fc"])
        with pytest.raises(EnumerationLimitError):
            check_early_propagation(and_nand["fc"])

    def test_env_override_must_be_integer(self, monkeypatch, and_nand):
        monkeypatch.setenv("DPDN_MAX_INPUTS", "lots")
        with pytest.raises(ValueError, match="DPDN_MAX_INPUTS"):
            energy_report(and_nand["fc"])

    def test_warning_thresholds(self, monkeypatch, and_nand):
        monkeypatch.setattr(analyzer, "WARN_SWEEP_INPUTS", 1)
        with pytest.warns(RuntimeWarning, match="2\\^2"):
            energy_report(and_nand["fc"])
        monkeypatch.setattr(analyzer, "WARN_PARTIAL_INPUTS", 1)
        with pytest.warns(RuntimeWarning, match="3\\^2"):
            check_early_propagation(and_nand["enhanced"])
