# rootiso/services/polycore.py
"""
정수 계수 다항식 코어
- 계수는 오름차순 (a_0, a_1, ..., a_n), 최고차 계수는 0이 아님
- Descartes 부호 변화, Taylor shift, 역순, 2^k 배율, x 나누기
- 정확한 부호 평가, 미분, gcd, square-free 부분
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from math import gcd as int_gcd
from typing import Iterable, Sequence, Tuple, Union

from .errors import PolynomialError

RationalLike = Union[int, Fraction]


def _strip(coeffs: Sequence[int]) -> Tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class IntPoly:
    """
    정수 계수 다항식 (불변)

    coeffs[i] 는 x^i 의 계수. 생성 시 뒤쪽 0 은 제거되므로
    영다항식은 빈 튜플.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip([int(c) for c in self.coeffs]))

    @classmethod
    def _raw(cls, coeffs: Sequence[int]) -> "IntPoly":
        # 이미 int 인 계수 전용 (hot path)
        poly = object.__new__(cls)
        object.__setattr__(poly, "coeffs", _strip(coeffs))
        return poly

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "IntPoly":
        if exponent < 0:
            raise PolynomialError(f"음수 차수의 단항식은 만들 수 없습니다: {exponent}")
        return cls._raw([0] * exponent + [int(coefficient)])

    @classmethod
    def constant(cls, value: int) -> "IntPoly":
        return cls._raw([int(value)])

    @property
    def degree(self) -> int:
        """차수 (영다항식은 -1)"""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        """최고차 계수 (영다항식은 0)"""
        return self.coeffs[-1] if self.coeffs else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return add(self, other)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return sub(self, other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return mul(self, other)

    def __neg__(self) -> "IntPoly":
        return negate(self)


ZERO = IntPoly()
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def _require_nonzero(P: IntPoly, op: str) -> None:
    if P.is_zero:
        raise PolynomialError(f"{op}: 영다항식은 허용되지 않습니다")


# ========= 부호 / 부호 변화 =========

def sign(v: RationalLike) -> int:
    return (v > 0) - (v < 0)


def sign_variation(coeffs: Union[IntPoly, Iterable[int]]) -> int:
    """
    계수열의 부호 변화 횟수 (0 은 건너뜀)

    Args:
        coeffs: IntPoly 또는 정수 시퀀스

    Returns:
        인접한 0이 아닌 계수 쌍 중 부호가 다른 쌍의 개수
    """
    count = 0
    prev = 0
    for c in coeffs:
        if c:
            if (c > 0) != (prev > 0) and prev:
                count += 1
            prev = c
    return count


# ========= Möbius 변환용 기본 변환 =========

def taylor_shift_1(P: IntPoly) -> IntPoly:
    """
    T(P)(x) = P(x + 1), 고전적인 Horner 방식 O(n^2)

    i 번째 패스는 a_i..a_n 을 뒤에서부터 누적합으로 바꾼다.
    """
    a = list(P.coeffs)
    n = len(a)
    for i in range(n - 1):
        a[i:] = list(accumulate(reversed(a[i:])))[::-1]
    return IntPoly._raw(a)


def reverse(P: IntPoly) -> IntPoly:
    """R(P)(x) = x^deg P · P(1/x). 낮은 차수의 0 계수는 결과에서 사라진다."""
    _require_nonzero(P, "reverse")
    return IntPoly._raw(P.coeffs[::-1])


def homothety_pow2(P: IntPoly, k: int) -> IntPoly:
    """H_{2^k}(P)(x) = P(2^k · x), 즉 a_i ← a_i · 2^(k·i)"""
    if k < 0:
        raise PolynomialError(f"homothety_pow2: k 는 0 이상이어야 합니다 (k={k})")
    if k == 0:
        return P
    return IntPoly._raw([c << (k * i) for i, c in enumerate(P.coeffs)])


def shift_down(P: IntPoly) -> IntPoly:
    """P / x. 상수항이 0 이어야 한다."""
    if P.is_zero:
        return P
    if P.coeffs[0] != 0:
        raise PolynomialError("shift_down: 상수항이 0 이 아닙니다")
    return IntPoly._raw(P.coeffs[1:])


def negate_odd(P: IntPoly) -> IntPoly:
    """P(-x): 홀수 차수 계수의 부호를 뒤집는다"""
    return IntPoly._raw([-c if i & 1 else c for i, c in enumerate(P.coeffs)])


# ========= 평가 =========

def eval_sign(P: IntPoly, q: RationalLike) -> int:
    """
    P(q) 의 정확한 부호

    q = p/r (r > 0) 일 때 r^n · P(q) = Σ a_i p^i r^(n-i) 를 정수로 계산.
    """
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    acc = 0
    den_pow = 1
    for c in reversed(P.coeffs):
        acc = acc * num + c * den_pow
        den_pow *= den
    return sign(acc)


def eval_at(P: IntPoly, q: RationalLike) -> Fraction:
    """P(q) 의 정확한 유리수 값"""
    q = Fraction(q)
    acc = Fraction(0)
    for c in reversed(P.coeffs):
        acc = acc * q + c
    return acc


def derivative(P: IntPoly) -> IntPoly:
    return IntPoly._raw([i * c for i, c in enumerate(P.coeffs)][1:])


# ========= 환 연산 =========

def add(P: IntPoly, Q: IntPoly) -> IntPoly:
    a, b = P.coeffs, Q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return IntPoly._raw(out)


def negate(P: IntPoly) -> IntPoly:
    return IntPoly._raw([-c for c in P.coeffs])


def sub(P: IntPoly, Q: IntPoly) -> IntPoly:
    return add(P, negate(Q))


def scale(P: IntPoly, k: int) -> IntPoly:
    return IntPoly._raw([k * c for c in P.coeffs])


def mul(P: IntPoly, Q: IntPoly) -> IntPoly:
    a, b = P.coeffs, Q.coeffs
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return IntPoly._raw(out)


def power(P: IntPoly, e: int) -> IntPoly:
    if e < 0:
        raise PolynomialError(f"음수 지수는 허용되지 않습니다: {e}")
    result = ONE
    base = P
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def exact_div(P: IntPoly, Q: IntPoly) -> IntPoly:
    """
    정수 위에서 나누어떨어지는 나눗셈 P / Q

    Raises:
        PolynomialError: Q 가 영다항식이거나 몫/나머지가 정수 다항식이 아닐 때
    """
    _require_nonzero(Q, "exact_div")
    rem = list(P.coeffs)
    db = Q.degree
    lb = Q.lc
    if len(rem) - 1 < db:
        if rem:
            raise PolynomialError("exact_div: 나누어떨어지지 않습니다")
        return ZERO
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if top % lb:
            raise PolynomialError("exact_div: 정수 몫이 아닙니다")
        q = top // lb
        quot[k] = q
        if q:
            for j, c in enumerate(Q.coeffs):
                rem[k + j] -= q * c
    if any(rem[:db]):
        raise PolynomialError("exact_div: 나머지가 0 이 아닙니다")
    return IntPoly._raw(quot)


# ========= content / primitive part / gcd =========

def content(P: IntPoly) -> int:
    """계수들의 양의 gcd (영다항식은 0)"""
    g = 0
    for c in P.coeffs:
        g = int_gcd(g, c)
        if g == 1:
            break
    return g


def primitive_part(P: IntPoly) -> IntPoly:
    """양의 content 로 나눈 다항식 (부호 유지)"""
    g = content(P)
    if g <= 1:
        return P
    return IntPoly._raw([c // g for c in P.coeffs])


def pseudo_remainder(P: IntPoly, Q: IntPoly) -> IntPoly:
    """
    |lc(Q)|^m · P 를 Q 로 나눈 나머지

    양의 배수만 곱하므로 결과는 유리수 나머지의 양의 배수이고,
    Sturm 열의 부호를 보존한다.
    """
    _require_nonzero(Q, "pseudo_remainder")
    r = list(P.coeffs)
    db = Q.degree
    lb = Q.lc
    mult = abs(lb)
    sgn = 1 if lb > 0 else -1
    q_coeffs = Q.coeffs
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [mult * c for c in r]
        f = sgn * lr
        for j, c in enumerate(q_coeffs):
            r[shift + j] -= f * c
        r = list(_strip(r))
    return IntPoly._raw(r)


def gcd(P: IntPoly, Q: IntPoly) -> IntPoly:
    """
    유리수체 위의 gcd (primitive PRS)

    Returns:
        양의 최고차 계수를 가진 primitive 다항식
    """
    if P.is_zero and Q.is_zero:
        raise PolynomialError("gcd: 두 다항식이 모두 0 입니다")
    a, b = primitive_part(P), primitive_part(Q)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = pseudo_remainder(a, b)
        a, b = b, primitive_part(r)
    if a.degree == 0:
        return ONE
    return negate(a) if a.lc < 0 else a


def square_free_part(P: IntPoly) -> IntPoly:
    """
    P / gcd(P, P') 의 primitive 부분 (P 의 최고차 계수 부호 유지)

    각 근이 중복도 1 로 남는다.
    """
    if P.degree < 1:
        raise PolynomialError("square_free_part: 차수가 1 이상이어야 합니다")
    g = gcd(P, derivative(P))
    base = primitive_part(P)
    if g.degree == 0:
        return base
    return exact_div(base, g)
