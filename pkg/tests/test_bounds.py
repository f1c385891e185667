# tests/test_bounds.py
from fractions import Fraction

import pytest

from rootiso.services.bounds import (
    UNCERTIFIED_UP_BOUND,
    BoundAlgorithm,
    asv_bound,
    cauchy_bound,
    certificate_holds,
    compute_bound,
    less_than_one,
    lower_bound,
    up_bound,
    up_bound_traced,
)
from rootiso.services.errors import PolynomialError
from rootiso.services.polycore import eval_sign, sign_variation
from tests.conftest import poly, random_int_poly


def _random_with_variation(rng, count, max_degree=30):
    out = []
    while len(out) < count:
        P = random_int_poly(rng, rng.randint(1, max_degree), bits=20, zero_ratio=0.3)
        if sign_variation(P) > 0:
            out.append(P)
    return out


def test_certificate_examples():
    P = poly(-2, 1, 1)  # x^2 + x - 2
    assert certificate_holds(P, 1)
    assert not certificate_holds(P, Fraction(1, 2))
    assert certificate_holds(poly(-1, 1), 1)
    assert not certificate_holds(poly(-4, 1), 2)
    with pytest.raises(PolynomialError):
        certificate_holds(P, -1)


def test_less_than_one():
    assert less_than_one(poly(-2, 1, 1))
    assert not less_than_one(poly(-4, 0, 1))
    with pytest.raises(PolynomialError):
        less_than_one(poly(1, 1))


def test_up_bound_examples():
    assert up_bound(poly(-2, 1, 1)) == 1
    assert up_bound(poly(-1, 1)) == 1
    assert up_bound(poly(-1, 4)) == Fraction(1, 4)
    # 1 에서도 certificate 가 없으면 보증되지 않은 2
    assert up_bound(poly(-4, 1)) == UNCERTIFIED_UP_BOUND
    with pytest.raises(PolynomialError):
        up_bound(poly(1, 2, 3))


def test_up_bound_sign_of_leading_coefficient_is_irrelevant():
    assert up_bound(poly(1, -4)) == Fraction(1, 4)


def test_up_bound_is_tight_power_of_two(rng):
    for P in _random_with_variation(rng, 500):
        u = up_bound(P)
        if u > 1:
            assert u == UNCERTIFIED_UP_BOUND
            assert not certificate_holds(P, 1)
            continue
        assert u.numerator == 1 and u.denominator & (u.denominator - 1) == 0
        assert certificate_holds(P, u)
        assert not certificate_holds(P, u / 2)


def test_up_bound_trace_rounds_and_touches(rng):
    value, trace = up_bound_traced(poly(-1, 4))
    assert value == Fraction(1, 4)
    assert trace.rounds == 3

    for P in _random_with_variation(rng, 100):
        value, trace = up_bound_traced(P)
        if value > 1:
            assert trace.rounds == 0
            continue
        assert value == Fraction(1, 1 << (trace.rounds - 1))
        # 각 패스에서 계수마다 두 포인터가 한 번씩만 지나간다
        assert trace.max_touches <= 2
        assert len(trace.pass_touches) == trace.rounds


def test_certificate_is_monotone(rng):
    polys = _random_with_variation(rng, 100, max_degree=15)
    for P in polys:
        u = Fraction(rng.randint(0, 1 << 20), rng.randint(1, 1 << 10))
        if certificate_holds(P, u):
            assert certificate_holds(P, u + Fraction(1, rng.randint(1, 100)))
            assert certificate_holds(P, 2 * u)


def test_lower_bound():
    # R(x^2 - x - 2) = -2x^2 - x + 1, 양의 근 1/2
    result = lower_bound(poly(-2, -1, 1))
    assert result.certified
    assert result.value == 2

    # 양의 근 1/4 < 1 이므로 보증 불가
    result = lower_bound(poly(-1, 4))
    assert not result.certified
    assert result.value is None

    with pytest.raises(PolynomialError):
        lower_bound(poly(1, 0, 1))


def test_asv_bound():
    assert asv_bound(poly(-2, 1, 1)) == 2
    assert asv_bound(poly(-1, 1)) == 1
    with pytest.raises(PolynomialError):
        asv_bound(poly(1, 1))


def test_asv_bound_satisfies_certificate(rng):
    for P in _random_with_variation(rng, 500):
        u = asv_bound(P)
        assert u.numerator & (u.numerator - 1) == 0 and u.denominator & (u.denominator - 1) == 0
        assert certificate_holds(P, u)


def test_cauchy_bound():
    assert cauchy_bound(poly(-2, 0, 1)) == 3
    assert cauchy_bound(poly(1, 2)) == Fraction(3, 2)
    assert cauchy_bound(poly(7)) == 1
    with pytest.raises(PolynomialError):
        cauchy_bound(poly())


def test_compute_bound():
    assert compute_bound(poly(-2, 1, 1), BoundAlgorithm.LOGCF) == (1, True)
    assert compute_bound(poly(-4, 1), BoundAlgorithm.LOGCF) == (2, False)
    assert compute_bound(poly(-2, 1, 1), "asv") == (2, True)
    assert compute_bound(poly(-2, 0, 1), BoundAlgorithm.CAUCHY) == (3, True)
    assert compute_bound(poly(-2, -1, 1), BoundAlgorithm.LOGCF, lower=True) == (2, True)
    assert compute_bound(poly(-1, 4), BoundAlgorithm.LOGCF, lower=True) == (None, False)
    with pytest.raises(PolynomialError):
        compute_bound(poly(-2, 1, 1), BoundAlgorithm.ASV, lower=True)


def test_certificate_bounds_every_positive_root(rng):
    polys = _random_with_variation(rng, 150, max_degree=20)
    for P in polys:
        lc_sign = 1 if P.lc > 0 else -1
        candidates = [asv_bound(P), Fraction(rng.randint(0, 1 << 12), rng.randint(1, 1 << 6))]
        if up_bound(P) <= 1:
            candidates.append(up_bound(P))
        for u in candidates:
            if not certificate_holds(P, u):
                continue
            for _ in range(5):
                q = u + Fraction(rng.randint(1, 10000), 1000)
                assert eval_sign(P, q) == lc_sign


def _smallest_certified(P, steps=64):
    # certificate 가 성립하는 가장 작은 u 를 [0, 1] 에서 이분 탐색 (hi 쪽을 돌려줌)
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if certificate_holds(P, mid):
            hi = mid
        else:
            lo = mid
    return hi


def _ceil_log2_inverse(u):
    e = 0
    while u * (1 << e) < 1:
        e += 1
    return e


def test_up_bound_rounds_follow_logarithm_of_smallest_bound(rng):
    checked = 0
    for P in _random_with_variation(rng, 80, max_degree=20):
        value, trace = up_bound_traced(P)
        if value > 1:
            continue
        u1 = _smallest_certified(P)
        assert certificate_holds(P, u1)
        assert trace.rounds <= _ceil_log2_inverse(u1) + 1
        checked += 1
    assert checked > 0
