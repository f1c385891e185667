# tests/test_polycore.py
from fractions import Fraction

import pytest

from rootiso.services.bounds import cauchy_bound
from rootiso.services.errors import PolynomialError
from rootiso.services.oracle import sturm_count
from rootiso.services.polycore import (
    IntPoly,
    content,
    derivative,
    eval_at,
    eval_sign,
    exact_div,
    gcd,
    homothety_pow2,
    mul,
    negate_odd,
    power,
    primitive_part,
    pseudo_remainder,
    reverse,
    shift_down,
    sign_variation,
    square_free_part,
    taylor_shift_1,
)
from tests.conftest import poly, random_int_poly


def test_trailing_zeros_are_stripped():
    P = IntPoly((1, 2, 0, 0))
    assert P.coeffs == (1, 2)
    assert P.degree == 1
    assert IntPoly((0, 0)).is_zero
    assert IntPoly().degree == -1


def test_sign_variation():
    assert sign_variation([1, -1, 1]) == 2
    assert sign_variation([1, 0, 0, -1]) == 1
    assert sign_variation([3, 2, 1]) == 0
    assert sign_variation(poly(-2, 1, 1)) == 1
    assert sign_variation([]) == 0


def test_taylor_shift():
    # (x+1)^2 = x^2 + 2x + 1
    assert taylor_shift_1(poly(0, 0, 1)) == poly(1, 2, 1)
    # x^2 + x - 2 -> x^2 + 3x
    assert taylor_shift_1(poly(-2, 1, 1)) == poly(0, 3, 1)
    assert taylor_shift_1(poly(7)) == poly(7)


def test_taylor_shift_matches_evaluation(rng):
    for _ in range(20):
        P = random_int_poly(rng, rng.randint(1, 12), bits=10)
        T = taylor_shift_1(P)
        for q in (Fraction(0), Fraction(1, 3), Fraction(-5, 2), Fraction(4)):
            assert eval_at(T, q) == eval_at(P, q + 1)


def test_reverse():
    assert reverse(poly(-2, 1, 1)) == poly(1, 1, -2)
    # 낮은 차수의 0 은 최고차 쪽으로 가서 사라짐
    assert reverse(poly(0, 0, 1, 3)) == poly(3, 1)
    with pytest.raises(PolynomialError):
        reverse(IntPoly())


def test_homothety_pow2():
    assert homothety_pow2(poly(1, 1, 1), 1) == poly(1, 2, 4)
    assert homothety_pow2(poly(-3, 5), 0) == poly(-3, 5)
    with pytest.raises(PolynomialError):
        homothety_pow2(poly(1, 1), -1)


def test_shift_down():
    assert shift_down(poly(0, 2, 3)) == poly(2, 3)
    with pytest.raises(PolynomialError):
        shift_down(poly(1, 1))


def test_negate_odd():
    assert negate_odd(poly(1, 2, 3, 4)) == poly(1, -2, 3, -4)


def test_eval_sign_is_exact():
    P = poly(-2, 0, 1)  # x^2 - 2
    assert eval_sign(P, Fraction(141421356, 100000000)) == -1
    assert eval_sign(P, Fraction(141421357, 100000000)) == 1
    assert eval_sign(poly(-2, 1, 1), 1) == 0
    assert eval_sign(poly(-2, 1, 1), -2) == 0
    assert eval_sign(IntPoly(), 5) == 0


def test_derivative():
    assert derivative(poly(5, 3, 0, 2)) == poly(3, 0, 6)
    assert derivative(poly(5)).is_zero


def test_ring_operations():
    P, Q = poly(1, 1), poly(-1, 1)
    assert P + Q == poly(0, 2)
    assert P - Q == poly(2)
    assert P * Q == poly(-1, 0, 1)
    assert -P == poly(-1, -1)
    assert power(P, 3) == poly(1, 3, 3, 1)
    assert power(P, 0) == poly(1)


def test_exact_div():
    assert exact_div(poly(-1, 0, 1), poly(1, 1)) == poly(-1, 1)
    with pytest.raises(PolynomialError):
        exact_div(poly(1, 0, 1), poly(1, 1))
    with pytest.raises(PolynomialError):
        exact_div(poly(1, 1), IntPoly())


def test_content_and_primitive_part():
    assert content(poly(4, -6, 8)) == 2
    assert primitive_part(poly(4, -6, 8)) == poly(2, -3, 4)
    assert primitive_part(poly(-4, -6)) == poly(-2, -3)


def test_pseudo_remainder_keeps_sign():
    # 2(x^2 - 2) - x·(2x) = -4
    assert pseudo_remainder(poly(-2, 0, 1), poly(0, 2)) == poly(-4)
    # 최고차 계수가 음수여도 양의 배수만 곱한다
    assert pseudo_remainder(poly(-2, 0, 1), poly(0, -2)) == poly(-4)


def test_gcd():
    A = mul(poly(-1, 1), poly(2, 1))   # (x-1)(x+2)
    B = mul(poly(-1, 1), poly(-3, 1))  # (x-1)(x-3)
    assert gcd(A, B) == poly(-1, 1)
    assert gcd(poly(2, 4), poly(3, 6)) == poly(1, 2)
    assert gcd(poly(1, 1), poly(-1, 1)) == poly(1)
    with pytest.raises(PolynomialError):
        gcd(IntPoly(), IntPoly())


def test_square_free_part():
    # (x-1)^2 (x+2)
    P = mul(power(poly(-1, 1), 2), poly(2, 1))
    assert square_free_part(P) == poly(-2, 1, 1)
    assert square_free_part(-P) == poly(2, -1, -1)
    assert square_free_part(poly(-2, 0, 1)) == poly(-2, 0, 1)
    with pytest.raises(PolynomialError):
        square_free_part(poly(3))


def test_worked_examples():
    # 2(x+1)^3 - (x+1)
    assert taylor_shift_1(poly(0, -1, 0, 2)) == poly(1, 5, 6, 2)
    assert reverse(poly(1, 2, 3)) == poly(3, 2, 1)
    assert reverse(poly(1, -2, 0, 1)) == poly(1, 0, -2, 1)
    assert homothety_pow2(poly(-1, 0, 0, 1), 2) == poly(-1, 0, 0, 64)
    # x^3 - 3x + 2 = (x-1)^2 (x+2)
    assert gcd(poly(2, -3, 0, 1), poly(-3, 0, 3)) == poly(-1, 1)
    assert square_free_part(poly(2, -3, 0, 1)) == poly(-2, 1, 1)
    assert square_free_part(poly(0, 0, 1)) == poly(0, 1)


def test_reverse_is_an_involution(rng):
    checked = 0
    for _ in range(50):
        P = random_int_poly(rng, rng.randint(0, 15), bits=16, zero_ratio=0.3)
        if P.coeffs[0] == 0:
            continue
        assert reverse(reverse(P)) == P
        checked += 1
    assert checked > 0


def test_homothety_pow2_composes(rng):
    for _ in range(20):
        P = random_int_poly(rng, rng.randint(0, 10), bits=12)
        j, k = rng.randint(0, 4), rng.randint(0, 4)
        assert homothety_pow2(homothety_pow2(P, j), k) == homothety_pow2(P, j + k)
        assert eval_at(homothety_pow2(P, k), Fraction(3, 7)) == eval_at(P, Fraction(3 << k, 7))


def test_square_free_part_properties(rng):
    for _ in range(25):
        A = random_int_poly(rng, rng.randint(1, 3), bits=4)
        B = random_int_poly(rng, rng.randint(1, 3), bits=4)
        P = mul(power(A, rng.randint(1, 3)), B)
        S = square_free_part(P)
        exact_div(P, S)  # 나누어떨어지지 않으면 PolynomialError
        assert gcd(S, derivative(S)).degree == 0
        for q in (Fraction(0), Fraction(1, 2), Fraction(-3), Fraction(5, 3)):
            if eval_sign(P, q) == 0:
                assert eval_sign(S, q) == 0


def test_descartes_rule_against_sturm(rng):
    for _ in range(60):
        P = square_free_part(random_int_poly(rng, rng.randint(1, 12), bits=10))
        if P.coeffs[0] == 0:
            continue
        positive = sturm_count(P, 0, cauchy_bound(P))
        v = sign_variation(P)
        assert v >= positive
        assert (v - positive) % 2 == 0
