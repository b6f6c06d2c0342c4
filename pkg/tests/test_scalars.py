from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heisencalc.scalars import (
    ExtScalar,
    LaurentPoly,
    ext_mul,
    ext_trace,
    qint,
    render_coeff_factor,
)


def test_laurent_basic_arithmetic():
    one = LaurentPoly.one()
    t = LaurentPoly.t()
    assert (one + t) * (one + t) == LaurentPoly({0: 1, 1: 2, 2: 1})
    assert (one - t) + (t - one) == LaurentPoly.zero()
    assert t * LaurentPoly.t(-1) == one
    assert (one + t) ** 0 == one


def test_laurent_render():
    assert LaurentPoly({0: 1, 1: 2, 2: 1}).render() == "1 + 2*t + t^2"
    assert LaurentPoly({0: 1, 1: 2, 2: 1}).render(compact=True) == "1+2*t+t^2"
    assert LaurentPoly({0: 1, 1: -1}).render() == "1 - t"
    assert LaurentPoly({-1: 1}).render() == "t^-1"
    assert LaurentPoly.zero().render() == "0"


def test_render_coeff_factor():
    assert render_coeff_factor(LaurentPoly.one()) == ""
    assert render_coeff_factor(LaurentPoly.const(2)) == "2*"
    assert render_coeff_factor(LaurentPoly({0: 1, 1: 1})) == "(1+t)*"
    assert render_coeff_factor(LaurentPoly({1: 1})) == "(t)*"


def test_qint_values():
    assert qint(0) == LaurentPoly.zero()
    assert qint(1) == LaurentPoly.one()
    assert qint(3) == LaurentPoly({0: 1, 1: 1, 2: 1})
    assert qint(3).render() == "1 + t + t^2"


def test_qint_recursion_up_to_64():
    t = LaurentPoly.t()
    for k in range(0, 65):
        assert qint(k + 1) == t * qint(k) + LaurentPoly.one()


def test_qint_rejects_negative():
    with pytest.raises(ValueError):
        qint(-1)


def test_substitute():
    poly = LaurentPoly({0: 1, 1: 1})
    assert poly.substitute(0) == 1
    assert poly.substitute(2) == 3
    assert poly.substitute(Fraction(1, 2)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        LaurentPoly.t(-1).substitute(0)


def test_divexact():
    a = LaurentPoly({0: 1, 1: 2, 2: 1})
    b = LaurentPoly({0: 1, 1: 1})
    assert a.divexact(b) == b
    with pytest.raises(ValueError):
        LaurentPoly({0: 1, 2: 1}).divexact(b)


small_polys = st.dictionaries(
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-5, max_value=5),
    max_size=4,
).map(LaurentPoly)


@given(small_polys, small_polys, small_polys)
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(small_polys, small_polys, st.integers(min_value=1, max_value=5))
def test_substitute_is_a_ring_map(a, b, value):
    assert (a * b).substitute(value) == a.substitute(value) * b.substitute(value)
    assert (a + b).substitute(value) == a.substitute(value) + b.substitute(value)


def test_ext_mul_example():
    # (2 + v)(3 + v) = 6 + 5v since v*v = 0
    assert ext_mul(ExtScalar(2, 1), ExtScalar(3, 1)) == ExtScalar(6, 5)


def test_ext_v_squares_to_zero():
    v = ExtScalar.v()
    assert ext_mul(v, v) == ExtScalar(0, 0)


def test_ext_trace_gram_matrix_is_swap():
    basis = [ExtScalar.one(), ExtScalar.v()]
    gram = [[ext_trace(ext_mul(x, y)) for y in basis] for x in basis]
    assert gram == [[0, 1], [1, 0]]
