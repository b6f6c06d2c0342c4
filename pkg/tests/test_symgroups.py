import math
from fractions import Fraction

import pytest

from heisencalc.fock import partitions_of
from heisencalc.symgroups import (
    GroupAlgElem,
    Perm,
    column_antisymmetrizer,
    conjugate,
    dimension,
    dominates,
    hook_lengths,
    kostka,
    parse_cycles,
    row_symmetrizer,
    verify_symmetrizers,
    young_symmetrizer,
)

from oracles import count_ssyt as oracle_ssyt
from oracles import count_syt


def test_perm_basics():
    s = Perm((2, 1, 3))
    t = Perm((1, 3, 2))
    assert (s * t).images == (2, 3, 1)  # t first: 1->1->2, 2->3->3, 3->2->1
    assert s.inverse() == s
    assert s.sign() == -1
    assert Perm.identity(3).sign() == 1
    assert Perm((2, 3, 1)).sign() == 1


def test_perm_rejects_bad_images():
    with pytest.raises(ValueError):
        Perm((1, 1, 3))


def test_cycle_notation():
    s = parse_cycles("(1 2)(3 4 5)", 5)
    assert s.images == (2, 1, 4, 5, 3)
    assert s.render() == "(1 2)(3 4 5)"
    assert parse_cycles("()", 4) == Perm.identity(4)
    assert Perm.identity(4).render() == "()"
    with pytest.raises(ValueError):
        parse_cycles("(1 7)", 3)


def test_group_algebra_product():
    n = 3
    x = GroupAlgElem(n, {parse_cycles("(1 2)", n): Fraction(1)})
    y = GroupAlgElem(n, {parse_cycles("(1 3)", n): Fraction(1)})
    assert (x * y).coeff(parse_cycles("(1 3 2)", n)) == 1


def test_young_symmetrizer_small_shapes():
    n = 2
    ident = Perm.identity(n)
    swap = parse_cycles("(1 2)", n)
    assert young_symmetrizer((2,)) == GroupAlgElem(
        n, {ident: Fraction(1, 2), swap: Fraction(1, 2)}
    )
    assert young_symmetrizer((1, 1)) == GroupAlgElem(
        n, {ident: Fraction(1, 2), swap: Fraction(-1, 2)}
    )


def test_young_symmetrizer_2_1():
    e = young_symmetrizer((2, 1))
    third = Fraction(1, 3)
    assert e == GroupAlgElem(
        3,
        {
            Perm.identity(3): third,
            parse_cycles("(1 2)", 3): third,
            parse_cycles("(1 3)", 3): -third,
            parse_cycles("(1 3 2)", 3): -third,
        },
    )


@pytest.mark.parametrize("n", range(1, 6))
def test_symmetrizers_idempotent(n):
    for lam in partitions_of(n):
        e = young_symmetrizer(lam)
        assert e * e == e, lam


def test_row_and_column_sizes():
    a = row_symmetrizer((3, 1))
    b = column_antisymmetrizer((3, 1))
    assert len(dict(a.items())) == 6
    assert len(dict(b.items())) == 2


def test_hook_lengths_and_dimension():
    assert hook_lengths((2, 1)) == [[3, 1], [1]]
    assert dimension((2, 1)) == 2
    assert hook_lengths((2, 2)) == [[3, 2], [2, 1]]
    assert dimension((2, 2)) == 2
    assert dimension((1,)) == 1
    assert dimension((5,)) == 1
    assert dimension((1, 1, 1, 1)) == 1


def test_conjugate():
    assert conjugate((3, 1, 1)) == (3, 1, 1)
    assert conjugate((4, 2)) == (2, 2, 1, 1)
    assert conjugate(()) == ()


@pytest.mark.parametrize("n", range(1, 7))
def test_dimension_squares_sum_to_factorial(n):
    assert sum(dimension(lam) ** 2 for lam in partitions_of(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_dimension_equals_syt_count(n):
    for lam in partitions_of(n):
        assert dimension(lam) == count_syt(lam), lam


def test_kostka_small_values():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((2, 1), (2, 1)) == 1
    assert kostka((1, 1), (2,)) == 0
    assert kostka((3,), (1, 1, 1)) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_kostka_matches_oracle(n):
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            assert kostka(lam, mu) == oracle_ssyt(lam, mu), (lam, mu)


@pytest.mark.parametrize("n", range(1, 7))
def test_kostka_unitriangular(n):
    for lam in partitions_of(n):
        assert kostka(lam, lam) == 1
        for mu in partitions_of(n):
            if kostka(lam, mu) != 0:
                assert dominates(lam, mu), (lam, mu)


def test_dominance():
    assert dominates((3, 1), (2, 2))
    assert not dominates((2, 2), (3, 1))
    assert dominates((2, 1), (2, 1))
    assert not dominates((2, 1), (1, 1))  # different sizes


def test_verify_symmetrizers_records():
    records = verify_symmetrizers(n_max=3, dims_n_max=4)
    assert all(r.status == "pass" for r in records)
    ids = [r.id for r in records]
    assert "symmetrizer-idempotent[2,1]" in ids
    assert "dimension-squares-sum[4]" in ids
    assert "kostka-unitriangular[4]" in ids
