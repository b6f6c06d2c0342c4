import pytest

from heisencalc.fock import (
    FockElem,
    act_p,
    act_q,
    act_q_split,
    act_tilde_p,
    add_horizontal_strips,
    add_vertical_strips,
    apply_ncpoly,
    parse_partition,
    partition,
    partitions_of,
    partitions_up_to,
    remove_horizontal_strips,
    render_partition,
    verify_q_split,
)
from heisencalc.heisenberg import p, q
from heisencalc.scalars import LaurentPoly, qint

from oracles import is_horizontal_strip, is_vertical_strip, partitions_brute


def vac():
    return FockElem.vacuum()


def basis(*parts):
    return FockElem.basis(parts)


def test_partition_validation():
    assert partition([3, 1, 1]) == (3, 1, 1)
    assert partition([]) == ()
    with pytest.raises(ValueError):
        partition([1, 2])
    with pytest.raises(ValueError):
        partition([2, 0])


def test_partition_literals():
    assert parse_partition("[3,1,1]") == (3, 1, 1)
    assert parse_partition("[]") == ()
    assert parse_partition("∅") == ()
    assert render_partition((3, 1, 1)) == "[3,1,1]"
    assert render_partition(()) == "[]"


def test_partitions_of_reverse_lex():
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions_of(0) == [()]
    assert len(partitions_of(6)) == 11


@pytest.mark.parametrize("n", range(0, 9))
def test_partitions_of_matches_brute_force(n):
    got = partitions_of(n)
    assert set(got) == partitions_brute(n)
    assert got == sorted(got, reverse=True)


def test_partitions_up_to_ordering():
    ps = partitions_up_to(3)
    assert ps == [(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]


@pytest.mark.parametrize("lam", [(), (1,), (2, 1), (3, 2, 1), (2, 2)])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_strips_match_oracle(lam, m):
    n = sum(lam)
    bigger = [mu for mu in partitions_of(n + m) if is_horizontal_strip(mu, lam)]
    assert set(add_horizontal_strips(lam, m)) == set(bigger)
    assert len(add_horizontal_strips(lam, m)) == len(bigger)
    smaller = [mu for mu in partitions_of(n - m) if is_horizontal_strip(lam, mu)] if n >= m else []
    assert set(remove_horizontal_strips(lam, m)) == set(smaller)
    vert = [mu for mu in partitions_of(n + m) if is_vertical_strip(mu, lam)]
    assert set(add_vertical_strips(lam, m)) == set(vert)
    assert len(add_vertical_strips(lam, m)) == len(vert)


def test_act_p_examples():
    assert act_p(1, vac()) == basis(1)
    assert act_p(1, basis(1)) == basis(2) + basis(1, 1)
    assert act_p(2, basis(2, 1)) == (
        basis(4, 1) + basis(3, 2) + basis(3, 1, 1) + basis(2, 2, 1)
    )


def test_act_q_examples():
    assert act_q(1, basis(1)) == vac().scale(qint(2))
    assert act_q(2, basis(2)) == vac().scale(qint(3))
    assert act_q(3, basis(1)).is_zero()
    assert act_q(2, basis(1, 1)) == vac().scale(LaurentPoly.t())


def test_act_q_split():
    q1, q2 = act_q_split(basis(2, 1))
    assert q1 == basis(2) + basis(1, 1)
    assert q2 == (basis(2) + basis(1, 1)).scale(LaurentPoly.t())
    assert q1 + q2 == act_q(1, basis(2, 1))


def test_apply_ncpoly_vacuum_examples():
    assert apply_ncpoly(q(1) * p(1), vac()) == vac().scale(qint(2))
    assert apply_ncpoly(p(1) * q(1), vac()).is_zero()
    assert apply_ncpoly(p(2) * p(1), vac()) == act_p(2, act_p(1, vac()))


def test_act_p_raises_size_by_m():
    for lam in partitions_up_to(4):
        for m in (1, 2, 3):
            for mu, _ in act_p(m, FockElem.basis(lam)).items():
                assert sum(mu) == sum(lam) + m
            for mu, _ in act_tilde_p(m, FockElem.basis(lam)).items():
                assert sum(mu) == sum(lam) + m


def test_act_q_lowers_and_coeff_degree_bounded():
    for lam in partitions_up_to(5):
        for n in (1, 2, 3):
            for mu, coeff in act_q(n, FockElem.basis(lam)).items():
                assert sum(mu) == sum(lam) - n
                assert all(e >= 0 for e, _ in coeff.items())
                assert max(e for e, _ in coeff.items()) <= n


def test_q_split_commutators():
    records = verify_q_split(6)
    assert [r.status for r in records] == ["pass"] * 3


def test_deformed_straightening_as_operators():
    # q_n p_m = sum_k [k+1] p_{m-k} q_{n-k} acting on every partition
    for n in range(1, 4):
        for m in range(1, 4):
            for lam in partitions_up_to(5):
                x = FockElem.basis(lam)
                lhs = act_q(n, act_p(m, x))
                rhs = FockElem.zero()
                for k in range(0, min(n, m) + 1):
                    y = act_q(n - k, x) if n > k else x
                    y = act_p(m - k, y) if m > k else y
                    rhs = rhs + y.scale(qint(k + 1))
                assert lhs == rhs, (n, m, lam)


def specialize_fock(x, value):
    out = {}
    for lam, coeff in x.items():
        c = coeff.substitute(value)
        if c != 0:
            out[lam] = LaurentPoly.const(c)
    return FockElem(out)


def test_classical_straightening_at_t_zero():
    for n in range(1, 4):
        for m in range(1, 4):
            for lam in partitions_up_to(4):
                x = FockElem.basis(lam)
                lhs = specialize_fock(act_q(n, act_p(m, x)), 0)
                rhs = FockElem.zero()
                for k in range(0, min(n, m) + 1):
                    y = act_q(n - k, x) if n > k else x
                    y = act_p(m - k, y) if m > k else y
                    rhs = rhs + y
                assert lhs == specialize_fock(rhs, 0), (n, m, lam)


def test_dual_straightening_at_t_zero():
    # q_n tp_m = tp_m q_n + tp_{m-1} q_{n-1} classically
    for n in range(1, 4):
        for m in range(1, 4):
            for lam in partitions_up_to(4):
                x = FockElem.basis(lam)
                lhs = specialize_fock(act_q(n, act_tilde_p(m, x)), 0)
                rhs = act_tilde_p(m, specialize_fock(act_q(n, x), 0))
                second = specialize_fock(act_q(n - 1, x), 0) if n > 1 else x
                second = act_tilde_p(m - 1, second) if m > 1 else second
                rhs = specialize_fock(rhs + second, 0)
                assert lhs == rhs, (n, m, lam)


def test_h1_squared_is_h2_plus_e2():
    for lam in partitions_up_to(8):
        x = FockElem.basis(lam)
        assert act_p(1, act_p(1, x)) == act_p(2, x) + act_tilde_p(2, x)


def test_render():
    elem = basis(3) + basis(2, 1).scale(qint(2))
    assert elem.render() == "(1+t)*[2,1] + [3]"
    assert vac().render() == "[]"
    assert FockElem.zero().render() == "0"
