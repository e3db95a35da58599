from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from psl2lift import ExtElement, make_field, with_i
from psl2lift.errors import (DivisionByZero, InputError, NotASquare,
                             OrderMismatch, PrecisionExhausted,
                             UnsupportedExtension)
from psl2lift.finite_field import GF, is_prime
from psl2lift.local_field import field_from_header


def residue(x, k):
    """Integer oracle: x mod p^k for an integral p-adic element."""
    p = x.field.p
    if x.is_zero_like():
        return 0
    return sum(d * p ** (x.val + i) for i, d in enumerate(x.digits()) if x.val + i < k) % p ** k


def series(x, k):
    """Coefficient list of a power series element below t^k (r = 1)."""
    out = [0] * k
    if x.is_zero_like():
        return out
    for e, c in x.expansion(k):
        out[e] = c
    return out


def naive_mul(a, b, p, k):
    out = [0] * k
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < k:
                out[i + j] = (out[i + j] + x * y) % p
    return out


# -- finite fields ------------------------------------------------------------

def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 2), (2, 3), (7, 1)])
def test_finite_field_axioms(p, r):
    F = GF(p, r)
    q = p ** r
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, q - 1) == 1
    squares = {F.mul(a, a) for a in range(1, q)}
    for a in range(1, q):
        assert F.is_square(a) == (a in squares)
        if F.is_square(a):
            s = F.sqrt(a)
            assert F.mul(s, s) == a


def test_generator_has_full_order():
    F = GF(3, 2)
    assert F.order(F.generator) == 8


# -- Q_p ----------------------------------------------------------------------

def test_small_qp_example():
    K = make_field(5, 4)
    x = K(6) - 1
    assert x.valuation() == 1
    assert x.digits() == [1, 0, 0, 0]
    assert x.prec == 3


@settings(max_examples=200, deadline=None)
@given(st.integers(-10 ** 12, 10 ** 12), st.integers(-10 ** 12, 10 ** 12))
def test_qp_ring_matches_integers(a, b):
    K = make_field(3, 20)
    k = 15
    assert residue(K(a) + K(b), k) == (a + b) % 3 ** k
    assert residue(K(a) * K(b), k) == (a * b) % 3 ** k
    assert residue(K(a) - K(b), k) == (a - b) % 3 ** k


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10 ** 9), st.integers(1, 10 ** 9))
def test_qp_division_matches_fractions(a, b):
    K = make_field(7, 24)
    x = K(Fraction(a, b))
    assert (x * b).equals(a)


def test_fraction_oracle_value():
    K = make_field(5, 10)
    x = K(Fraction(1, 3))
    # 1/3 mod 5^10 via pow
    assert residue(x, 10) == pow(3, -1, 5 ** 10)


def test_valuation_and_uniformizer():
    K = make_field(5, 8)
    u = K.uniformizer()
    assert (u ** 3).valuation() == 3
    assert K(250).valuation() == 3
    assert K(Fraction(1, 25)).valuation() == -2
    assert K.zero().valuation() == float("inf")


def test_cancellation_gives_zero_at_precision():
    K = make_field(5, 6)
    x = K(1) + K.u_power(10)  # the tail is lost at 6 digits
    d = x - 1
    assert d.is_zero_like()
    with pytest.raises(PrecisionExhausted):
        d.valuation()
    with pytest.raises(PrecisionExhausted):
        d.inverse()


def test_division_by_exact_zero():
    K = make_field(5, 6)
    with pytest.raises(DivisionByZero):
        K(1) / K.zero()


def test_equality_is_digit_equality():
    K = make_field(7, 16)
    assert K(Fraction(2, 3)) * 3 == K(2)
    assert K(1) != K(2)
    # a difference at digit 3 is decisive
    assert not K(1).equals(K(1) + K.u_power(3))


def test_json_round_trip():
    K = make_field(5, 8)
    x = K(Fraction(7, 50))
    assert K.element_from_json(x.to_json()).equals(x)
    y = K(3) - K(3)
    assert y.is_exact_zero() or y.is_zero_like()


def test_field_header_round_trip():
    K = make_field(3, 12, r=2, char=3)
    assert field_from_header(K.header()) == K


def test_bad_fields():
    with pytest.raises(InputError):
        make_field(4)
    with pytest.raises(InputError):
        make_field(5, 8, r=2)
    with pytest.raises(InputError):
        make_field(2, 8, char=2)
    with pytest.raises(InputError):
        make_field(5, 8, char=3)


# -- F_q((t)) -----------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=10),
       st.lists(st.integers(0, 6), min_size=1, max_size=10))
def test_laurent_mul_matches_convolution(a, b):
    K = make_field(7, 12, char=7)
    x = K.from_expansion([(i, c) for i, c in enumerate(a) if c]) if any(a) else K.zero()
    y = K.from_expansion([(i, c) for i, c in enumerate(b) if c]) if any(b) else K.zero()
    k = 10
    prod = x * y
    if prod.is_exact_zero():
        assert naive_mul(a, b, 7, k) == [0] * k
        return
    try:
        got = series(prod, k)
    except PrecisionExhausted:
        return
    assert got == naive_mul(a, b, 7, k)


def test_laurent_inverse_of_one_minus_t():
    K = make_field(5, 10, char=5)
    t = K.uniformizer()
    x = (1 - t).inverse()
    assert series(x, 10) == [1] * 10


def test_laurent_characteristic():
    K = make_field(3, 10, char=3)
    assert K(3).is_exact_zero()
    s = K(1) + 1 + 1
    assert s.is_zero_like() and s.absprec == K.N
    assert s.equals(0)


def test_extension_residue_field():
    K = make_field(3, 8, r=2, char=3)
    assert K.q == 9
    a = K.residue_lift(K.residue_field.generator)
    assert (a ** 8).equals(1)
    assert not (a ** 4).equals(1)


# -- squares --------------------------------------------------------------------

def test_squares_in_q5():
    K = make_field(5, 16)
    assert K.is_square(K(6))
    assert not K.is_square(K(2))
    s = K.sqrt(K(6))
    assert (s * s).equals(6)
    with pytest.raises(NotASquare):
        K.sqrt(K(2))


def test_squares_in_q2():
    K = make_field(2, 24)
    assert K.is_square(K(17))
    assert not K.is_square(K(5))
    assert not K.is_square(K(2))
    assert K.is_square(K(4 * 9))
    s = K.sqrt(K(17))
    assert (s * s).equals(17)


def test_sqrt_in_laurent_series():
    K = make_field(7, 16, char=7)
    t = K.uniformizer()
    x = 1 + t
    s = K.sqrt(x)
    assert (s * s).equals(x)
    assert s.is_positive()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10 ** 8), st.integers(0, 3))
def test_square_of_anything_is_square(a, k):
    K = make_field(3, 20)
    x = K(a) * K.u_power(k)
    assert K.is_square(x * x)
    s = K.sqrt(x * x)
    assert s.equals(x) or s.equals(-x)


# -- Teichmuller lifts and K(i) -------------------------------------------------

def test_teichmuller_order():
    K = make_field(7, 16)
    w = K.teichmuller(2, order_check=3)
    assert (w ** 3).equals(1)
    assert not w.equals(1)
    with pytest.raises(OrderMismatch):
        K.teichmuller(3, order_check=3)


def test_teichmuller_in_laurent_is_constant():
    K = make_field(3, 8, r=2, char=3)
    g = K.residue_field.generator
    w = K.teichmuller(g)
    assert w.expansion(8) == ((0, g),)


def test_i_in_q5_and_q7():
    K5 = make_field(5, 16)
    F, i = with_i(K5)
    assert F is K5
    assert (i * i).equals(-1)
    K7 = make_field(7, 16)
    F, i = with_i(K7)
    assert F is not K7
    assert (i * i).equals(-1)
    assert ((1 + i) * (1 - i)).equals(2)
    assert (F(7) + i * 7).valuation() == 1
    assert isinstance(i, ExtElement)


def test_ext_inverse():
    F, i = with_i(make_field(3, 12))
    x = F(2) + i * 5
    assert (x * x.inverse()).equals(1)


def test_no_i_over_q2():
    with pytest.raises(UnsupportedExtension):
        with_i(make_field(2, 16))
