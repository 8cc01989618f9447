import pytest
from hypothesis import given, strategies as st

from newman_lab.digits import (
    BaseBNumeral,
    ResidueClass,
    base_digits,
    ceiling_in_Ab,
    count_below,
    digit_sum,
    enumerate_Ab,
    is_member_Ab,
    rebase,
    transplant,
)
from newman_lab.errors import DomainError

bases = st.integers(2, 12)


def test_digit_sum_examples():
    assert digit_sum(0, 2) == 0
    assert digit_sum(5, 4) == 2
    for b in range(2, 9):
        for k in range(6):
            assert digit_sum(b**k, b) == 1


def test_invalid_base():
    with pytest.raises(DomainError):
        digit_sum(3, 1)
    with pytest.raises(DomainError):
        is_member_Ab(3, 0)


def test_membership():
    assert is_member_Ab(5, 4)
    assert not is_member_Ab(8, 4)
    assert all(is_member_Ab(n, 2) for n in range(500))


def test_ceiling_examples():
    assert ceiling_in_Ab(5, 4).value == 5
    assert ceiling_in_Ab(6, 4).value == 16
    assert all(ceiling_in_Ab(n, 2).value == n for n in range(1, 300))
    with pytest.raises(DomainError):
        ceiling_in_Ab(0, 3)


def test_rebase_examples():
    assert rebase(5, 4).value == 17
    assert rebase(0, 7).value == 0
    assert rebase(7, 6).value == 43


def test_enumerate_examples():
    assert [x.value for x in enumerate_Ab(4, 16)] == [0, 1, 4, 5]
    assert [x.value for x in enumerate_Ab(2, 4)] == [0, 1, 2, 3]


@given(bases, st.integers(1, 5000))
def test_ceiling_is_least_member_above(b, N):
    c = ceiling_in_Ab(N, b).value
    assert c >= N and is_member_Ab(c, b)
    assert not any(is_member_Ab(n, b) for n in range(N, c))


@given(bases, st.integers(0, 4000))
def test_count_below_matches_enumeration(b, N):
    assert count_below(N, b) == sum(is_member_Ab(n, b) for n in range(N))


@given(bases, st.integers(0, 1 << 20))
def test_numeral_round_trip(b, j):
    x = rebase(j, b)
    assert BaseBNumeral.from_int(x.value, b) == x
    assert x.binary_index == j
    assert int(x) == x.value


@given(bases, st.integers(0, 1 << 16))
def test_rebase_preserves_digit_count(b, n):
    assert digit_sum(rebase(n, b).value, b) == digit_sum(n, 2) == rebase(n, b).digit_count


@given(bases, st.integers(0, 1 << 10), st.integers(0, 4))
def test_adding_higher_power_adds_one_digit(b, j, extra):
    n = rebase(j, b).value
    k = j.bit_length() + extra
    assert digit_sum(n + b**k, b) == digit_sum(n, b) + 1


@pytest.mark.parametrize("d,b", [(3, 8), (5, 14), (5, 4)])
def test_transplant_preserves_residue(d, b):
    src = d - 1
    for x in enumerate_Ab(src, src**8):
        assert x.value % d == transplant(x.value, src, b) % d


def test_numeral_validation_and_str():
    with pytest.raises(DomainError):
        BaseBNumeral(4, (1, 3))
    with pytest.raises(DomainError):
        BaseBNumeral.from_int(8, 4)
    assert str(BaseBNumeral(4, (2, 0))) == "101_4"
    assert BaseBNumeral(4, (2, 0)).length == 3
    assert base_digits(17, 4) == [1, 0, 1]


def test_residue_class_normalizes():
    assert ResidueClass.of(-1, 5).value == 4
    with pytest.raises(DomainError):
        ResidueClass(5, 5)
