from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hmatch.classify import (LARGE, RHM_K, SMALL, HmClass, group_letter, ha_class, hm_class,
                             hm_index, in_class_one, rhm_group)

D20 = 1 << 20


@pytest.mark.parametrize("x,K,expected", [
    (0.30, 10, HmClass(2, SMALL)),
    (0.70, 10, HmClass(2, LARGE)),
    (0.95, 10, HmClass(10, LARGE)),
])
def test_hm_class_examples(x, K, expected):
    assert hm_class(round(x * D20), D20, K) == expected


@pytest.mark.parametrize("x,expected", [(0.6, 1), (0.5, 2), (0.01, 7)])
def test_ha_class_examples(x, expected):
    assert ha_class(round(x * 1000), 1000, 7) == expected


@pytest.mark.parametrize("num,D,expected", [(37, 96, "a"), (55, 100, "c"), (62, 100, "d"), (38, 96, "b"),
                                            (48, 96, "b"), (49, 96, "c"), (59, 96, "c"), (60, 96, "d"),
                                            (64, 96, "d")])
def test_rhm_group_examples(num, D, expected):
    assert rhm_group(num, D).group == expected
    assert group_letter(num, D) == expected


def test_rhm_group_outside_window():
    # class 1 of either side lies inside (1/3, 2/3], so outside it starts at 2
    g = rhm_group(32, 96)
    assert g.group == "other" and g.cls == HmClass(2, SMALL)
    assert rhm_group(65, 96).cls == HmClass(2, LARGE)
    assert rhm_group(1, 1000).cls.index == RHM_K


def _hm_index_by_definition(num, D, K):
    x = Fraction(num, D)
    if x > Fraction(1, 2):
        for i in range(1, K):
            if Fraction(i, i + 1) < x <= Fraction(i + 1, i + 2):
                return i
        return K
    for i in range(1, K):
        if Fraction(1, i + 2) < x <= Fraction(1, i + 1):
            return i
    return K


@given(st.integers(1, 5000).flatmap(lambda D: st.tuples(st.integers(1, D), st.just(D))),
       st.integers(1, 25))
def test_hm_index_matches_interval_definition(nd, K):
    num, D = nd
    assert hm_index(num, D, K) == _hm_index_by_definition(num, D, K)


@given(st.integers(1, 5000).flatmap(lambda D: st.tuples(st.integers(1, D), st.just(D))),
       st.integers(1, 25))
def test_ha_class_is_harmonic_interval(nd, K):
    num, D = nd
    k = ha_class(num, D, K)
    x = Fraction(num, D)
    if k < K:
        assert Fraction(1, k + 1) < x <= Fraction(1, k)
    else:
        assert x <= Fraction(1, K)


@given(st.integers(1, 5000).flatmap(lambda D: st.tuples(st.integers(1, D), st.just(D))),
       st.integers(1, 25))
def test_hm_small_class_equals_next_harmonic_class(nd, K):
    # small intervals of HM_K coincide with classes 2..K+1 of HA_{K+1}
    num, D = nd
    if 2 * num <= D:
        assert hm_index(num, D, K) + 1 == ha_class(num, D, K + 1)


def test_class_pairs_have_equal_length():
    for i in range(1, 30):
        small = Fraction(1, i + 1) - Fraction(1, i + 2)
        large = Fraction(i + 1, i + 2) - Fraction(i, i + 1)
        assert small == large


def test_in_class_one():
    assert not in_class_one(32, 96) and in_class_one(33, 96)
    assert in_class_one(64, 96) and not in_class_one(65, 96)
