# rootiso/services/vas.py
"""
연분수(continued fraction) 기반 실근 분리 엔진
- cf_positive: 양의 근을 Möbius 변환 스택으로 분리
- isolate: square-free 처리, 0 근, 음의 근(P(-x)), x^k 치환까지 포함한 전체 흐름
- early_split_check: V(P) = 2 일 때 P(1) 부호로 바로 나누는 검사
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd as int_gcd
from typing import Callable, List, NamedTuple, Optional, Tuple, Union

from sympy import integer_nthroot

from .. import config
from .bounds import cauchy_bound, lower_bound
from .errors import InvariantViolation, PolynomialError
from .polycore import (
    IntPoly,
    eval_sign,
    homothety_pow2,
    negate_odd,
    reverse,
    shift_down,
    sign,
    sign_variation,
    square_free_part,
    taylor_shift_1,
)

logger = logging.getLogger(__name__)


# ========= 타입 =========

class Mobius(NamedTuple):
    """x ↦ (a·x + b) / (c·x + d), 모두 0 이상의 정수"""

    a: int
    b: int
    c: int
    d: int

    def image(self, t: Fraction) -> Fraction:
        return Fraction(self.a * t + self.b) / (self.c * t + self.d)


IDENTITY = Mobius(1, 0, 0, 1)


@dataclass
class CFNode:
    """작업 스택 원소: 변환, 변환된 다항식, 부호 변화 상한(svar)"""

    mobius: Mobius
    poly: IntPoly
    svar: int


@dataclass(frozen=True, order=True)
class RootInterval:
    """
    분리 구간
    - exact: lo == hi == 근
    - open: (lo, hi) 안에 근이 정확히 하나, 양 끝점은 근이 아님
    """

    lo: Fraction
    hi: Fraction
    kind: str = "open"

    @classmethod
    def exact(cls, root: Fraction) -> "RootInterval":
        root = Fraction(root)
        return cls(root, root, "exact")

    @classmethod
    def open(cls, lo: Fraction, hi: Fraction) -> "RootInterval":
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise InvariantViolation(f"열린 구간의 끝점 순서가 잘못되었습니다: ({lo}, {hi})")
        return cls(lo, hi, "open")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def contains(self, q: Fraction) -> bool:
        if self.is_exact:
            return q == self.lo
        return self.lo < q < self.hi

    def mirrored(self) -> "RootInterval":
        """x ↦ -x 로 뒤집은 구간"""
        if self.is_exact:
            return RootInterval.exact(-self.lo)
        return RootInterval.open(-self.hi, -self.lo)


@dataclass(frozen=True)
class IsolateOptions:
    substitution: bool = config.SUBSTITUTION_DEFAULT
    early_split: bool = config.EARLY_SPLIT_DEFAULT
    paranoid: bool = config.PARANOID_DEFAULT


@dataclass
class IsolationStats:
    """엔진 계측값 (대부분의 시간은 Taylor shift 에 쓰인다)"""

    nodes: int = 0
    taylor_shifts: int = 0
    bound_calls: int = 0
    certified_shifts: int = 0
    early_splits: int = 0
    emitted: int = 0
    exact_roots: int = 0
    substitution_k: int = 1

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class EarlySplit(str, enum.Enum):
    SPLIT_CERTAIN = "split_certain"
    ROOT_AT_ONE = "root_at_one"
    INCONCLUSIVE = "inconclusive"


# ========= 구간 =========

def intvl(a: int, b: int, c: int, d: int, cap: Fraction) -> RootInterval:
    """
    (0, ∞) 의 Möbius 상(image)에 해당하는 열린 구간

    c·d ≠ 0 이면 a/c 와 b/d 사이. 한쪽 끝이 ∞ 이면 cap 으로 자른다.
    """
    if c and d:
        p, q = Fraction(a, c), Fraction(b, d)
        return RootInterval.open(min(p, q), max(p, q))
    if c:
        return RootInterval.open(Fraction(a, c), cap)
    if d:
        return RootInterval.open(Fraction(b, d), cap)
    raise PolynomialError("intvl: c 와 d 가 모두 0 입니다")


def early_split_check(P: IntPoly) -> EarlySplit:
    """
    V(P) = 2 일 때만 사용. P(1) 이 최고차 계수와 부호가 반대면
    (0,1) 과 (1,∞) 에 근이 정확히 하나씩 있다.
    """
    if sign_variation(P) != 2:
        raise PolynomialError("early_split_check: V(P) = 2 인 다항식만 허용됩니다")
    at_one = sign(sum(P.coeffs))
    if at_one == 0:
        return EarlySplit.ROOT_AT_ONE
    if at_one != sign(P.lc):
        return EarlySplit.SPLIT_CERTAIN
    return EarlySplit.INCONCLUSIVE


# ========= 양의 근 분리 =========

PolyOrFactory = Union[IntPoly, Callable[[], IntPoly]]


class _PositiveRootSearch:
    """cf_positive 한 번 실행할 때의 상태"""

    def __init__(self, F: IntPoly, options: IsolateOptions, stats: IsolationStats, zero_root: bool = False):
        self.F = F
        self.options = options
        self.stats = stats
        self.zero_root = zero_root
        self.cap = cauchy_bound(F)
        self.out: List[RootInterval] = []

    def _is_root(self, q: Fraction) -> bool:
        # F 에서 미리 떼어낸 0 근도 근으로 본다
        return (self.zero_root and q == 0) or eval_sign(self.F, q) == 0

    def _shift(self, P: IntPoly) -> IntPoly:
        self.stats.taylor_shifts += 1
        return taylor_shift_1(P)

    def _stripped(self, P: IntPoly) -> IntPoly:
        return shift_down(P) if P.coeffs[0] == 0 else P

    def _record_exact(self, root: Fraction) -> None:
        self.stats.exact_roots += 1
        self.out.append(RootInterval.exact(root))

    def _emit(self, m: Mobius, poly: PolyOrFactory) -> None:
        self.stats.emitted += 1
        iv = intvl(m.a, m.b, m.c, m.d, self.cap)
        if not (self._is_root(iv.lo) or self._is_root(iv.hi)):
            self.out.append(iv)
            return
        # 끝점이 다른 곳에서 기록된 정확한 근이면 노드 다항식의 근 범위로 좁힌다
        Q = poly if isinstance(poly, IntPoly) else poly()
        t_lo = 1 / cauchy_bound(reverse(Q))
        t_hi = cauchy_bound(Q)
        ends = sorted((m.image(t_lo), m.image(t_hi)))
        tightened = RootInterval.open(ends[0], ends[1])
        if self._is_root(tightened.lo) or self._is_root(tightened.hi):
            raise InvariantViolation(f"구간 끝점이 근입니다: {tightened}")
        logger.debug("구간 끝점 보정: %s -> %s", iv, tightened)
        self.out.append(tightened)

    def run(self) -> List[RootInterval]:
        F = self.F
        s = sign_variation(F)
        if s == 0:
            return []
        stack = [CFNode(IDENTITY, F, s)]
        opts = self.options
        stats = self.stats

        while stack:
            node = stack.pop()
            stats.nodes += 1
            a, b, c, d = node.mobius
            P = node.poly
            s = node.svar
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug("노드 pop: depth=%d deg=%d svar=%d", len(stack), P.degree, s)

            stats.bound_calls += 1
            lb = lower_bound(P)
            if lb.certified and lb.value >= 1:
                k = lb.value.numerator.bit_length() - 1
                if k:
                    P = homothety_pow2(P, k)
                    a, c = a << k, c << k
                P = self._shift(P)
                b, d = a + b, c + d
                stats.certified_shifts += 1
                if P.coeffs[0] == 0:
                    self._record_exact(Fraction(b, d))
                    P = shift_down(P)
                s = sign_variation(P)
                if s == 0:
                    continue
                if s == 1:
                    self._emit(Mobius(a, b, c, d), P)
                    continue

            m1 = Mobius(a, a + b, c, c + d)
            m2 = Mobius(b, a + b, d, c + d)

            if opts.early_split and s == 2:
                verdict = early_split_check(P)
                logger.debug("early split: %s", verdict.value)
                if verdict is EarlySplit.SPLIT_CERTAIN:
                    stats.early_splits += 1
                    base = P
                    self._emit(m1, lambda: self._stripped(self._shift(base)))
                    self._emit(m2, lambda: self._stripped(self._shift(reverse(base))))
                    continue

            P1 = self._shift(P)
            r = 0
            if P1.coeffs[0] == 0:
                self._record_exact(Fraction(a + b, c + d))
                P1 = shift_down(P1)
                r = 1
            s1 = sign_variation(P1)
            s2 = s - s1 - r
            if s2 < 0:
                raise InvariantViolation(f"음수 budget: s={s}, s1={s1}, r={r}")

            P2: Optional[IntPoly] = None
            if s2 > 1 or (s2 == 1 and opts.paranoid):
                P2 = self._stripped(self._shift(reverse(P)))
                v2 = sign_variation(P2)
                if s2 == 1 and v2 != 1:
                    raise InvariantViolation(f"budget 1 자식의 V(P2) = {v2}")
                s2 = v2

            if s1 == 1:
                self._emit(m1, P1)
            elif s1 > 1:
                stack.append(CFNode(m1, P1, s1))

            if s2 == 1:
                base = P
                self._emit(m2, P2 if P2 is not None else (lambda: self._stripped(self._shift(reverse(base)))))
            elif s2 > 1:
                assert P2 is not None
                stack.append(CFNode(m2, P2, s2))

        return sorted(self.out)


def cf_positive(
    F: IntPoly,
    options: Optional[IsolateOptions] = None,
    stats: Optional[IsolationStats] = None,
    zero_root: bool = False,
) -> List[RootInterval]:
    """
    F 의 양의 실근 분리

    Args:
        F: square-free, F(0) ≠ 0 인 정수 다항식
        options: IsolateOptions (early_split, paranoid 사용)
        stats: 계측값을 누적할 객체
        zero_root: 원래 다항식에서 0 근을 떼어냈으면 True (0 을 끝점으로 쓰지 않음)

    Returns:
        lo 기준으로 정렬된 RootInterval 리스트
    """
    if F.is_zero:
        raise PolynomialError("cf_positive: 영다항식입니다")
    if F.coeffs[0] == 0:
        raise PolynomialError("cf_positive: F(0) = 0 인 다항식은 먼저 x 로 나눠야 합니다")
    search = _PositiveRootSearch(F, options or IsolateOptions(), stats or IsolationStats(), zero_root)
    return search.run()


# ========= x^k 치환 =========

def detect_power_substitution(P: IntPoly) -> Tuple[IntPoly, int]:
    """
    P(x) = P1(x^k) 인 P1 과, 0 이 아닌 계수의 지수들의 gcd k

    상수 다항식이면 (P, 1).
    """
    k = 0
    for e, c in enumerate(P.coeffs):
        if c:
            k = int_gcd(k, e)
    if k <= 1:
        return P, 1
    return IntPoly._raw(P.coeffs[::k]), k


def _contract(P: IntPoly, k: int) -> IntPoly:
    if any(c for e, c in enumerate(P.coeffs) if e % k):
        raise PolynomialError(f"P 는 x^{k} 의 다항식이 아닙니다")
    return IntPoly._raw(P.coeffs[::k])


def _root_up(q: Fraction, k: int, bits: int) -> Fraction:
    # (m/2^bits)^k >= q 인 가장 작은 m
    n = -((-q.numerator << (bits * k)) // q.denominator)
    m, is_exact = integer_nthroot(n, k)
    m = int(m)
    return Fraction(m if is_exact else m + 1, 1 << bits)


def _root_down(q: Fraction, k: int, bits: int) -> Fraction:
    n = (q.numerator << (bits * k)) // q.denominator
    m, _ = integer_nthroot(n, k)
    return Fraction(int(m), 1 << bits)


def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    p, p_exact = integer_nthroot(q.numerator, k)
    r, r_exact = integer_nthroot(q.denominator, k)
    if p_exact and r_exact:
        return Fraction(int(p), int(r))
    return None


def _lift_positive(P1: IntPoly, ylo: Fraction, yhi: Fraction, k: int) -> RootInterval:
    """
    P1 의 근이 정확히 하나 있는 (ylo, yhi), 0 <= ylo 에 대해
    그 근의 양의 k 제곱근을 담는 x 구간을 만든다.
    """
    s_lo, s_hi = eval_sign(P1, ylo), eval_sign(P1, yhi)
    if not s_lo or not s_hi or s_lo == s_hi:
        raise PolynomialError(f"근을 하나 포함하는 y 구간이 아닙니다: ({ylo}, {yhi})")
    bits = 8
    while True:
        lo, hi = _root_up(ylo, k, bits), _root_down(yhi, k, bits)
        if lo < hi:
            sl, sh = eval_sign(P1, lo ** k), eval_sign(P1, hi ** k)
            if sl == 0:
                return RootInterval.exact(lo)
            if sh == 0:
                return RootInterval.exact(hi)
            if sl == s_lo and sh == s_hi:
                return RootInterval.open(lo, hi)
        mid = (ylo + yhi) / 2
        sm = eval_sign(P1, mid)
        if sm == 0:
            root = _exact_root(mid, k)
            if root is not None:
                return RootInterval.exact(root)
            ylo, yhi = (ylo + mid) / 2, (mid + yhi) / 2
        elif sm == s_lo:
            ylo = mid
        else:
            yhi = mid
        bits += 4


def _positive_branch(P1: IntPoly, items: List[RootInterval], k: int) -> List[RootInterval]:
    """양의 y 근 구간들(정렬됨)을 양의 x 근 구간들로"""
    out: List[RootInterval] = []
    for idx, iv in enumerate(items):
        if not iv.is_exact:
            out.append(_lift_positive(P1, iv.lo, iv.hi, k))
            continue
        r = iv.lo
        root = _exact_root(r, k)
        if root is not None:
            out.append(RootInterval.exact(root))
            continue
        # 이웃 구간 사이의 근 없는 영역에서 끝점을 고른다
        ylo = r / 2
        if idx > 0:
            ylo = max(ylo, (items[idx - 1].hi + r) / 2)
        yhi = r + 1
        if idx + 1 < len(items):
            yhi = min(yhi, (items[idx + 1].lo + r) / 2)
        out.append(_lift_positive(P1, ylo, yhi, k))
    return out


def map_back_roots(intervals: List[RootInterval], k: int, P: IntPoly) -> List[RootInterval]:
    """
    y = x^k 로 치환한 P1 의 근 구간을 P 의 근 구간으로 되돌린다.

    - k 짝수: 양의 y 근마다 ±x 두 개, 음의 y 근은 버림
    - k 홀수: 각 y 근마다 부호가 같은 x 근 하나

    Args:
        intervals: P1 의 분리 구간
        k: 치환 지수
        P: 원래 x 다항식

    Returns:
        P 의 분리 구간 (정렬됨)
    """
    if k == 1:
        return sorted(intervals)
    if k < 1:
        raise PolynomialError(f"잘못된 치환 지수: {k}")
    P1 = _contract(P, k)

    positives: List[RootInterval] = []
    negatives: List[RootInterval] = []
    out: List[RootInterval] = []
    for iv in sorted(intervals):
        if iv.is_exact and iv.lo == 0:
            out.append(RootInterval.exact(Fraction(0)))
        elif iv.lo >= 0:
            positives.append(iv)
        elif iv.hi <= 0:
            negatives.append(iv)
        else:
            s0 = eval_sign(P1, 0)
            if s0 == 0:
                raise PolynomialError("0 을 포함하는 y 구간인데 P1(0) = 0 입니다")
            if s0 == eval_sign(P1, iv.lo):
                positives.append(RootInterval.open(Fraction(0), iv.hi))
            else:
                negatives.append(RootInterval.open(iv.lo, Fraction(0)))

    lifted = _positive_branch(P1, positives, k)
    out.extend(lifted)
    if k % 2 == 0:
        out.extend(iv.mirrored() for iv in lifted)
    else:
        mirrored = sorted(iv.mirrored() for iv in negatives)
        out.extend(iv.mirrored() for iv in _positive_branch(negate_odd(P1), mirrored, k))

    for iv in out:
        if not iv.is_exact and not (eval_sign(P, iv.lo) and eval_sign(P, iv.hi)):
            raise InvariantViolation(f"되돌린 구간의 끝점이 근입니다: {iv}")
    return sorted(out)


# ========= 전체 분리 =========

def _check_disjoint(result: List[RootInterval]) -> None:
    for left, right in zip(result, result[1:]):
        if left.hi > right.lo or (left.hi == right.lo and left.is_exact and right.is_exact):
            raise InvariantViolation(f"구간이 겹칩니다: {left}, {right}")


def _check_endpoints(P: IntPoly, result: List[RootInterval]) -> None:
    for iv in result:
        if not iv.is_exact and not (eval_sign(P, iv.lo) and eval_sign(P, iv.hi)):
            raise InvariantViolation(f"구간 끝점이 근입니다: {iv}")


def _isolate_nonzero(
    Q: IntPoly, options: IsolateOptions, stats: IsolationStats, zero_root: bool
) -> List[RootInterval]:
    positives = cf_positive(Q, options, stats, zero_root)
    negatives = [iv.mirrored() for iv in cf_positive(negate_odd(Q), options, stats, zero_root)]
    return negatives + positives


def isolate_with_stats(
    P: IntPoly, options: Optional[IsolateOptions] = None
) -> Tuple[List[RootInterval], IsolationStats]:
    """isolate 와 같고 엔진 계측값을 함께 돌려준다."""
    opts = options or IsolateOptions()
    stats = IsolationStats()
    if P.is_zero:
        raise PolynomialError("isolate: 영다항식입니다")
    if P.degree == 0:
        return [], stats

    Q = square_free_part(P)
    full = Q
    result: List[RootInterval] = []
    zero_root = Q.coeffs[0] == 0
    if zero_root:
        result.append(RootInterval.exact(Fraction(0)))
        stats.exact_roots += 1
        Q = shift_down(Q)

    if Q.degree >= 1:
        Q1, k = detect_power_substitution(Q) if opts.substitution else (Q, 1)
        if k > 1:
            stats.substitution_k = k
            ys = _isolate_nonzero(Q1, replace(opts, substitution=False), stats, zero_root)
            result.extend(map_back_roots(ys, k, Q))
        else:
            result.extend(_isolate_nonzero(Q, opts, stats, zero_root))

    result.sort()
    _check_disjoint(result)
    _check_endpoints(full, result)
    logger.info(
        "근 분리 완료: deg=%d roots=%d nodes=%d shifts=%d",
        P.degree, len(result), stats.nodes, stats.taylor_shifts,
    )
    return result, stats


def isolate(P: IntPoly, options: Optional[IsolateOptions] = None) -> List[RootInterval]:
    """
    P 의 모든 서로 다른 실근을 분리한다.

    Returns:
        서로소이고 lo 순으로 정렬된 RootInterval 리스트 (근 개수 = 길이)
    """
    roots, _ = isolate_with_stats(P, options)
    return roots
