import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from desc_entropy import entropy as ent
from desc_entropy.models import classify, enumerate_kripke
from desc_entropy.syntax import GMLU, MLU


def brute_sizes(k, n, which):
    return Counter(classify(m)[which] for m in enumerate_kripke(k, n))


@pytest.mark.parametrize("k, n", [(1, 1), (1, 3), (1, 5), (2, 2), (2, 3), (3, 2)])
def test_partitions_match_enumeration(k, n):
    for dialect, which in ((MLU, 0), (GMLU, 1)):
        p = ent.partition_for(dialect, k, n)
        assert dict(p.classes) == dict(brute_sizes(k, n, which))


def test_mlu_class_sizes():
    p = ent.mlu_partition(1, 3)
    assert p.size_of(0b11) == 6 and p.size_of(0b01) == 1 and p.size_of(0b10) == 1
    assert sum(p.sizes()) == 8
    assert len(ent.mlu_partition(1, 5).classes) == 3
    assert len(ent.mlu_partition(2, 5).classes) == 15


def test_multinomial():
    assert ent.multinomial((1, 2)) == 3
    assert ent.multinomial((5, 0)) == 1
    assert ent.multinomial((1, 1, 1, 1)) == 24


def test_entropy_example():
    st_ = ent.entropy_stats(ent.gmlu_partition(1, 2))
    assert sorted(ent.gmlu_partition(1, 2).sizes()) == [1, 1, 2]
    assert st_.shannon == pytest.approx(1.5, abs=1e-12)
    assert st_.expected_boltzmann == pytest.approx(0.5, abs=1e-12)
    assert st_.log_universe == 2


def test_extreme_partitions():
    one = ent.Partition("custom", 1, 3, 8, (("all", 8),))
    s = ent.entropy_stats(one)
    assert s.shannon == 0 and s.expected_boltzmann == 3
    singletons = ent.Partition("custom", 1, 3, 8, tuple((i, 1) for i in range(8)))
    s = ent.entropy_stats(singletons)
    assert s.shannon == pytest.approx(3) and s.expected_boltzmann == 0


def test_partition_validation():
    with pytest.raises(ValueError):
        ent.Partition("custom", 1, 2, 4, (("a", 3),))


@given(st.sampled_from([MLU, GMLU]), st.integers(1, 3), st.integers(1, 12))
def test_identity(dialect, k, n):
    p = ent.partition_for(dialect, k, n)
    assert sum(p.sizes()) == 2 ** (k * n)
    assert abs(ent.entropy_stats(p).residual) < 1e-9


def test_boltzmann_ratio_trend():
    r = [ent.expected_boltzmann_ratio(1, n) for n in (10, 20, 30)]
    assert r[0] < r[1] < r[2] and r[2] >= 0.85
    assert all(ent.expected_boltzmann_ratio(k, n) < 1 for k in (1, 2) for n in range(1, 15))
    assert r[2] == pytest.approx(0.8833, abs=1e-4)


def test_even_split_mass():
    assert ent.even_split_mass(1, 7, 1) == 1
    assert ent.even_split_mass(2, 5, 2) == 1
    for n in (5, 20, 40):
        masses = [ent.even_split_mass(1, n, d) for d in (0.02, 0.05, 0.1, 0.2, 0.5)]
        assert masses == sorted(masses)
    assert ent.even_split_threshold(1, 0.1) == 62
    assert ent.even_split_mass(1, 62, 0.1) > Fraction(9, 10)


def test_even_split_mass_brute_force():
    for k, n in ((1, 6), (2, 4)):
        ell = 1 << k
        hits = sum(
            all(abs(c / n - 1 / ell) < 0.2 for c in classify(m)[1]) for m in enumerate_kripke(k, n)
        )
        assert ent.even_split_mass(k, n, Fraction(1, 5)) == Fraction(hits, 2 ** (k * n))


def test_type_entropy_floor():
    for k in (1, 2, 3):
        assert ent.type_entropy_floor(k, 0.0) == k
        assert abs(ent.type_entropy_floor(k, 1e-6) - k) < 1e-4
        grid = [i / 100 * 2 ** -k for i in range(1, 100)]
        assert all(ent.type_entropy_floor(k, d) < k for d in grid)
    with pytest.raises(ValueError):
        ent.type_entropy_floor(1, 0.5)


def test_missing_type_probability():
    assert ent.missing_type_probability(1, 1)[0] == 1
    assert ent.missing_type_probability(1, 3)[0] == Fraction(1, 4)
    for k in (1, 2, 3):
        for n in range(1, 41):
            exact, union = ent.missing_type_probability(k, n)
            assert float(exact) <= union + 1e-12


def test_largest_class_threshold():
    n0 = ent.largest_class_threshold(2)
    for n in range(n0, 30):
        p = ent.mlu_partition(2, n)
        assert p.size_of(15) == max(p.sizes())
        assert p.sizes().count(max(p.sizes())) == 1


def test_stirling_gap():
    assert ent.stirling_gap(2) == pytest.approx(1 - (2 - 2 * math.log2(math.e)))
    assert ent.stirling_gap(2) == pytest.approx(1.885, abs=1e-3)
    for n in [4, 5, 10, 100, 1000, 10 ** 4, 10 ** 5, 10 ** 6]:
        g = ent.stirling_gap(n)
        assert g > 0
        assert 0.4 <= g / math.log2(n) <= 2.0
    # summed-logarithm oracle
    assert ent.stirling_gap(50) == pytest.approx(
        sum(math.log2(i) for i in range(1, 51)) - (50 * math.log2(50) - 50 * math.log2(math.e)))


@given(st.integers(4, 10 ** 6))
def test_stirling_gap_bounds_property(n):
    assert 0.4 <= ent.stirling_gap(n) / math.log2(n) <= 2.0


def test_lln_demo():
    dev = ent.lln_demo(1, 10 ** 4, 100, seed=11)
    assert dev < 0.02
    assert ent.lln_demo(1, 10 ** 4, 100, seed=11) == dev
    assert ent.lln_demo(2, 3, 50, seed=1) <= 0.75


def test_caps():
    with pytest.raises(ValueError):
        ent.mlu_partition(0, 3)
