import pytest
from hypothesis import given, settings

from desc_entropy.syntax import (
    FO, GMLU, MLU, And, Atom, Box, Dia, Eq, Exists, FormulaError, Lit, Or, Vocabulary,
    check_well_formed, dual_negate, free_vars, is_global, parse, render, size, type_formula,
)
from formula_strategies import first_order, modal

V2 = Vocabulary.modal(2)
V1 = Vocabulary.modal(1)
DIGRAPH = Vocabulary.relational([2])


def test_parse_diamond_conjunction():
    assert parse("<1>(p1 & !p2)", V2, GMLU) == Dia(1, And(Lit(1), Lit(2, False)))


def test_parse_graded_box():
    assert parse("[3](p1 | p2)", V2, GMLU) == Box(3, Or(Lit(1), Lit(2)))


def test_unguarded_literal_rejected():
    with pytest.raises(FormulaError):
        parse("p1 & <1>p1", V1, GMLU)


def test_mlu_rejects_grades():
    with pytest.raises(FormulaError):
        parse("<2>p1", V1, MLU)
    assert parse("<>p1", V1, MLU) == Dia(1, Lit(1))


@pytest.mark.parametrize("text, pos", [("<1>(p1 &", None), ("<1>p1 $ p1", 6), ("<1>p3", None)])
def test_parse_errors(text, pos):
    with pytest.raises(FormulaError) as info:
        parse(text, V2, GMLU)
    if pos is not None:
        assert info.value.pos == pos


def test_fo_parse_and_free_vars():
    f = parse("E x1 R1(x1,x1)", DIGRAPH, FO)
    assert f == Exists(1, Atom(1, (1, 1)))
    assert free_vars(f) == frozenset()
    assert free_vars(Eq(1, 2)) == {1, 2}
    with pytest.raises(FormulaError):
        parse("E x1 R1(x1)", DIGRAPH, FO)


def test_sizes():
    assert size(Lit(1)) == 1
    assert size(Dia(3, Lit(1))) == 4
    assert size(And(Lit(1), Lit(2, False))) == 3
    assert size(Exists(1, Atom(1, (1, 1)))) == 2


def test_dual_negate_basic():
    assert dual_negate(Dia(1, Lit(1))) == Box(1, Lit(1, False))


@given(modal(2, max_grade=4))
def test_dual_negate_involution(f):
    assert dual_negate(dual_negate(f)) == f
    assert size(dual_negate(f)) == size(f)


def test_type_formula():
    assert type_formula(2, 0b10) == And(Lit(1), Lit(2, False))
    assert type_formula(1, 0) == Lit(1)
    for k in range(1, 5):
        for mask in range(1 << k):
            assert size(type_formula(k, mask)) == 2 * k - 1


def test_render_examples():
    assert render(Dia(2, Lit(1))) == "<2>p1"
    assert render(Box(1, Or(Lit(1), Lit(1, False)))) == "[1](p1 | !p1)"


@settings(max_examples=1000)
@given(modal(2, max_grade=5))
def test_round_trip_modal(f):
    assert is_global(f)
    check_well_formed(f, V2, GMLU)
    assert parse(render(f), V2, GMLU) == f


@settings(max_examples=300)
@given(first_order())
def test_round_trip_fo(f):
    assert parse(render(f), DIGRAPH, FO) == f


def test_custom_names_render():
    vocab = Vocabulary(propositions=("rain", "sun"))
    f = parse("<1>(rain & !sun)", vocab, GMLU)
    assert render(f, vocab) == "<1>(rain & !sun)"


def test_vocabulary_validation():
    with pytest.raises(ValueError):
        Vocabulary(propositions=("p", "p"))
    with pytest.raises(ValueError):
        Vocabulary.modal(0)
