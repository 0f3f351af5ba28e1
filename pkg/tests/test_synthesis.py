import pytest
from hypothesis import given, settings, strategies as st

from desc_entropy.models import CapExceeded, compositions
from desc_entropy.semantics import denotation, fo_universe, gmlu_universe, mlu_universe
from desc_entropy.synthesis import (
    at_least_formula, exact_count_formula, typeset_defining_formula, exhaustive_min_sizes, gmlu_lower_bound,
    min_separating_size, min_size_fo, min_size_gmlu, min_size_mlu, modal_size_table, at_least_formula_size,
    exact_count_formula_size, typeset_defining_size, propositional_table,
)
from desc_entropy.syntax import GMLU, MLU, Box, Dia, FO, Lit, Vocabulary, check_well_formed, render, size


def test_propositional_table_sizes():
    table = propositional_table(2, 9)
    assert table[0b0001][0] == 3           # p1 & p2
    assert table[0b0011][0] == 1           # p2 (masks 0 and 1 both have p2)
    assert table[0b1111][0] == 3           # p1 | !p1
    assert 0 not in table or table[0][0] == 3


def test_mlu_full_class_k1():
    u = mlu_universe(1, 2)
    s, w = min_size_mlu(1, 2, u.bitset([0b11]), 10)
    assert s == 5 and size(w) == 5 and denotation(w, u) == u.bitset([0b11])


def test_mlu_classes_with_p_type():
    u = mlu_universe(1, 2)
    s, w = min_size_mlu(1, 2, u.bitset([0b01, 0b11]), 10)
    assert (s, render(w)) == (2, "<1>p1")


def test_budget_one_gives_nothing():
    u = mlu_universe(1, 2)
    assert min_size_mlu(1, 2, u.bitset([0b01]), 1) is None
    g = gmlu_universe(1, 3)
    assert min_size_gmlu(1, 3, g.bitset([(2, 1)]), 1) is None


def test_gmlu_examples():
    u = gmlu_universe(1, 3)
    s, w = min_size_gmlu(1, 3, u.bitset([(3, 0)]), 10)
    assert s == 2 and isinstance(w, Box)
    assert min_size_gmlu(1, 3, u.bitset([(2, 1)]), 10)[0] == 6


@pytest.mark.parametrize("n, expected", [
    (2, [2, 5, 2]), (3, [2, 6, 6, 2]), (4, [2, 6, 7, 6, 2]), (5, [2, 6, 8, 8, 6, 2]),
    (6, [2, 6, 8, 9, 8, 6, 2]),
])
def test_gmlu_class_sizes_frozen(n, expected):
    u = gmlu_universe(1, n)
    got = [min_size_gmlu(1, n, u.bitset([c]), 14)[0] for c in u.classes]
    assert got == expected


def test_mlu_k2_full_class_is_hardest():
    u = mlu_universe(2, 5)
    sizes = {c: min_size_mlu(2, 5, u.bitset([c]), 24)[0] for c in u.classes}
    assert sizes[15] == 19 == max(sizes.values())


@pytest.mark.parametrize("dialect, k, n, budget", [
    (MLU, 1, 2, 8), (MLU, 1, 3, 8), (MLU, 1, 4, 8), (MLU, 1, 5, 8),
    (GMLU, 1, 1, 8), (GMLU, 1, 2, 8), (GMLU, 1, 3, 7), (MLU, 2, 2, 6),
])
def test_dp_matches_exhaustive(dialect, k, n, budget):
    u = mlu_universe(k, n) if dialect == MLU else gmlu_universe(k, n)
    table = modal_size_table(u, budget)
    brute = exhaustive_min_sizes(u, budget)
    dp = {den: table.min_size(den) for den in range(1 << len(u)) if table.min_size(den) is not None}
    assert dp == brute


@settings(max_examples=60)
@given(st.integers(2, 4), st.data())
def test_witnesses_are_sound(n, data):
    u = gmlu_universe(1, n)
    target = data.draw(st.integers(1, u.full))
    found = min_size_gmlu(1, n, target, 12)
    if found is not None:
        s, w = found
        assert size(w) == s
        assert denotation(w, u) == target
        check_well_formed(w, Vocabulary.modal(1), GMLU)


def test_separating_size():
    u = mlu_universe(1, 3)
    s, w = min_separating_size(u, [0b01], [0b10], 5)
    assert s == 2
    assert min_separating_size(u, [0b01], [0b10], 1) is None


def test_caps():
    with pytest.raises(CapExceeded):
        min_size_mlu(3, 4, 1, 10)
    with pytest.raises(CapExceeded):
        min_size_gmlu(1, 7, 1, 10)


def test_typeset_formula_sizes():
    assert size(typeset_defining_formula(1, 0b01)) == 5
    assert size(typeset_defining_formula(1, 0b11)) == 5
    assert size(typeset_defining_formula(2, 0b1111)) == 19
    for k in (1, 2, 3):
        for ts in range(1, 1 << (1 << k)):
            m = bin(ts).count("1")
            expected = k * 2 ** (k + 1) + (2 ** k - 1 if m == 2 ** k else m)
            assert size(typeset_defining_formula(k, ts)) == typeset_defining_size(k, ts) == expected


def test_typeset_formula_defines_its_class():
    for k in (1, 2):
        u = mlu_universe(k, 1 << k)
        for ts in u.classes:
            assert denotation(typeset_defining_formula(k, ts), u) == u.bitset([ts])


def test_at_least_formula_examples():
    assert render(at_least_formula(1, (2, 1))) == "<2>p1 & <1>!p1"
    assert size(at_least_formula(1, (2, 1))) == 6
    for n in range(1, 7):
        assert render(at_least_formula(1, (n, 0))) == f"<{n}>p1"
        assert at_least_formula_size(1, (n, 0)) == n + 1


def test_constructions_define_their_class():
    for k, n in ((1, 2), (1, 3), (1, 5), (2, 2), (2, 3)):
        u = gmlu_universe(k, n)
        for c in u.classes:
            for build, closed in ((at_least_formula, at_least_formula_size), (exact_count_formula, exact_count_formula_size)):
                f = build(k, c)
                assert denotation(f, u) == u.bitset([c])
                assert size(f) == closed(k, c)


def test_exact_count_formula_closed_form():
    assert exact_count_formula_size(1, (2, 1)) == 2 * (3 - 2) + 6 + 2 + 1
    assert exact_count_formula_size(1, (3, 0)) == 2


def test_lower_bound():
    assert gmlu_lower_bound((2, 1)) == 2
    assert gmlu_lower_bound((3, 3)) == 6
    assert gmlu_lower_bound((5, 0)) == 0


def test_sandwich_k1():
    for n in range(2, 7):
        u = gmlu_universe(1, n)
        for c in compositions(n, 2):
            exact = min_size_gmlu(1, n, u.bitset([c]), 14)[0]
            assert gmlu_lower_bound(c) <= exact <= min(at_least_formula_size(1, c), exact_count_formula_size(1, c))


def test_fo_examples():
    u = fo_universe((2,), 1)
    loop = next(c for c, rep in zip(u.classes, u.representatives) if rep.relations[0])
    s, w = min_size_fo((2,), 1, u.bitset([loop]), 4)
    assert s == 2
    assert render(w) in ("E x1 R1(x1,x1)", "E x2 R1(x2,x2)", "A x1 R1(x1,x1)", "A x2 R1(x2,x2)")
    s, w = min_size_fo((2,), 1, u.full, 4)
    assert s == 2
    assert min_size_fo((2,), 1, u.full, 1) is None


def test_fo_witnesses_sound():
    u = fo_universe((2,), 2)
    for target in range(1, 40):
        found = min_size_fo((2,), 2, target, 6)
        if found:
            check_well_formed(found[1], Vocabulary.relational([2]), FO)
            assert denotation(found[1], u) == target
            assert size(found[1]) == found[0]


def test_fo_cap():
    with pytest.raises(CapExceeded):
        min_size_fo((2,), 3, 1, 5)


def test_modal_atom_shapes():
    # grade-d modality costs d
    assert size(Dia(3, Lit(1))) == 4
