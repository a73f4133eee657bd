import itertools

import pytest
from hypothesis import given

from dpdn.boolexpr import (
    And,
    Lit,
    Literal,
    Or,
    ParseError,
    complement,
    eval_truth,
    format_expression,
    input_set,
    literal_count,
    parse_expression,
)

from conftest import nnf_expressions


def lit(name, negated=False):
    return Lit(Literal(name, negated))


class TestParse:
    def test_simple_and(self):
        assert parse_expression("A & B") == And(lit("A"), lit("B"))

    def test_negated_group_pushes_de_morgan(self):
        assert parse_expression("!(A & B)") == Or(lit("A", True), lit("B", True))

    def test_or_of_ands(self):
        assert parse_expression("(A | B) & (C | D)") == And(
            Or(lit("A"), lit("B")), Or(lit("C"), lit("D"))
        )

    def test_and_binds_tighter_than_or(self):
        assert parse_expression("A | B & C") == Or(lit("A"), And(lit("B"), lit("C")))

    def test_nary_chains_binarize_right_deep(self):
        assert parse_expression("A & B & C") == And(lit("A"), And(lit("B"), lit("C")))
        assert parse_expression("A | B | C") == Or(lit("A"), Or(lit("B"), lit("C")))

    def test_negated_literal(self):
        assert parse_expression("!A") == lit("A", True)

    def test_double_negation_via_group(self):
        assert parse_expression("!(!A)") == lit("A")

    def test_whitespace_insignificant(self):
        assert parse_expression(" A&B ") == parse_expression("A & B")

    def test_deterministic(self):
        text = "!(A & (B | !C)) | D"
        assert parse_expression(text) == parse_expression(text)

    @pytest.mark.parametrize(
        "text",
        ["", "   ", "A &", "& A", "(A", "A)", "A ~ B", "!", "! & B", "A B", "!!A"],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse_expression(text)

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as excinfo:
            parse_expression("A @ B")
        assert excinfo.value.position == 2

    @pytest.mark.parametrize("text", ["true", "FALSE", "A & true"])
    def test_constants_rejected(self, text):
        with pytest.raises(ParseError):
            parse_expression(text)


class TestComplement:
    def test_and_becomes_or_of_negations(self):
        assert complement(And(lit("A"), lit("B"))) == Or(lit("A", True), lit("B", True))

    def test_single_literal(self):
        assert complement(lit("A")) == lit("A", True)

    def test_nested_structure_mirrors(self):
        e = And(Or(lit("A"), lit("B")), Or(lit("C"), lit("D")))
        expected = Or(And(lit("A", True), lit("B", True)), And(lit("C", True), lit("D", True)))
        assert complement(e) == expected
        # oracle: truth tables of complement(e) and not-e agree on all 16 rows
        for bits in itertools.product((0, 1), repeat=4):
            assignment = dict(zip("ABCD", bits))
            assert eval_truth(complement(e), assignment) == (not eval_truth(e, assignment))

    @given(nnf_expressions())
    def test_involution(self, e):
        assert complement(complement(e)) == e

    @given(nnf_expressions())
    def test_complement_negates_exhaustively(self, e):
        inputs = input_set(e)
        for bits in itertools.product((0, 1), repeat=len(inputs)):
            assignment = dict(zip(inputs, bits))
            assert eval_truth(complement(e), assignment) == (not eval_truth(e, assignment))


class TestEval:
    def test_and_true(self):
        assert eval_truth(And(lit("A"), lit("B")), {"A": 1, "B": 1}) is True

    def test_or_of_negations_false(self):
        assert eval_truth(Or(lit("A", True), lit("B", True)), {"A": 1, "B": 1}) is False

    def test_nested(self):
        e = And(Or(lit("A"), lit("B")), Or(lit("C"), lit("D")))
        assert eval_truth(e, {"A": 1, "B": 0, "C": 0, "D": 0}) is False

    def test_unassigned_input(self):
        with pytest.raises(ValueError, match="no value"):
            eval_truth(And(lit("A"), lit("B")), {"A": 1})

    def test_bad_value(self):
        with pytest.raises(ValueError):
            eval_truth(lit("A"), {"A": "precharge"})


class TestInputSet:
    def test_order_of_first_appearance(self):
        assert input_set(And(lit("A"), lit("B"))) == ["A", "B"]
        assert input_set(Or(lit("B", True), lit("A", True))) == ["B", "A"]

    def test_deduplicates(self):
        assert input_set(And(lit("A"), lit("A", True))) == ["A"]

    def test_literal_count(self):
        assert literal_count(parse_expression("A & B | B & C | C & A")) == 6


class TestFormat:
    @given(nnf_expressions())
    def test_round_trip(self, e):
        assert parse_expression(format_expression(e)) == e

    def test_parenthesizes_or_under_and(self):
        assert format_expression(parse_expression("(A | B) & C")) == "(A | B) & C"
