# rootiso/services/bounds.py
"""
양의 근 상계/하계
- certificate_holds: 접미 Horner 합이 모두 0 이상이면 u 는 양의 근의 상계
- less_than_one / up_bound: 2의 거듭제곱 후보에 대한 그리디 커버링
- lower_bound: 역다항식의 상계로 만든 하계
- asv_bound: 음수 항을 위쪽 양수 항과 짝지어 만든 상계
- cauchy_bound: 1 + max|a_i| / |a_n|
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import PolynomialError
from .polycore import IntPoly, reverse, sign_variation

logger = logging.getLogger(__name__)

# up_bound 가 certificate 를 얻지 못했을 때 돌려주는 값
UNCERTIFIED_UP_BOUND = Fraction(2)


@dataclass(frozen=True)
class BoundResult:
    """certified(value) 또는 uncertified (value=None)"""

    value: Optional[Fraction] = None

    @property
    def certified(self) -> bool:
        return self.value is not None

    @classmethod
    def uncertified(cls) -> "BoundResult":
        return cls(None)


@dataclass
class UpBoundTrace:
    """up_bound 계측값: 바깥 루프 횟수와 패스별 계수 접근 최댓값"""

    rounds: int = 0
    max_touches: int = 0
    pass_touches: List[int] = field(default_factory=list)


def _oriented(P: IntPoly) -> Tuple[int, ...]:
    if P.is_zero:
        raise PolynomialError("영다항식에는 상계를 정의할 수 없습니다")
    if P.lc < 0:
        return tuple(-c for c in P.coeffs)
    return P.coeffs


def certificate_holds(P: IntPoly, u: Fraction) -> bool:
    """
    q_n = a_n, q_j = q_{j+1}·u + a_j 가 모든 j 에서 0 이상인지 검사

    u = p/r 에 대해 q_j · r^(n-j) 를 정수로 계산하므로 부호가 정확하다.
    참이면 u 이상에는 양의 근이 없다.
    """
    a = _oriented(P)
    u = Fraction(u)
    if u < 0:
        raise PolynomialError(f"certificate_holds: u 는 0 이상이어야 합니다 (u={u})")
    num, den = u.numerator, u.denominator
    q = 0
    den_pow = 1
    for c in reversed(a):
        q = q * num + c * den_pow
        if q < 0:
            return False
        den_pow *= den
    return True


def _greedy_cover(w: Sequence[int], counts: Optional[List[int]] = None) -> bool:
    """
    음수 계수를 위에서부터 하나씩 소모하면서 그보다 높은 차수의
    양수 계수로 덮을 수 있는지 확인한다.

    w[-1] > 0 이고 음수 계수가 하나 이상 있어야 한다.
    결과는 모든 접미 합이 0 이상인지와 같다.
    """
    n = len(w) - 1
    negatives = [idx for idx, c in enumerate(w) if c < 0]
    last_neg = negatives[0]
    start = negatives[-1]

    cf_sum = w[n]
    i = n - 1
    j = start
    last = start
    while True:
        if cf_sum < 0:
            while i > last and w[i] <= 0:
                if counts is not None:
                    counts[i] += 1
                i -= 1
            if i == last:
                return False
            cf_sum += w[i]
            if counts is not None:
                counts[i] += 1
            i -= 1
        else:
            if j == last_neg - 1:
                return True
            while j >= last_neg and w[j] >= 0:
                if counts is not None:
                    counts[j] += 1
                j -= 1
            cf_sum += w[j]
            last = j
            if counts is not None:
                counts[j] += 1
            j -= 1


def _require_negative(a: Sequence[int], op: str) -> None:
    if len(a) < 2 or not any(c < 0 for c in a):
        raise PolynomialError(f"{op}: 최고차 계수와 부호가 다른 계수가 필요합니다")


def less_than_one(P: IntPoly) -> bool:
    """
    1 이 양의 근의 상계임을 certificate 로 확인할 수 있으면 True

    Raises:
        PolynomialError: 최고차 계수와 부호가 다른 계수가 없을 때
    """
    a = _oriented(P)
    _require_negative(a, "less_than_one")
    return _greedy_cover(a)


def up_bound_traced(P: IntPoly) -> Tuple[Fraction, UpBoundTrace]:
    """
    up_bound 와 같은 값을 계산하면서 계측값도 함께 돌려준다.

    Returns:
        (상계, UpBoundTrace)
    """
    a = _oriented(P)
    _require_negative(a, "up_bound")
    trace = UpBoundTrace()
    n = len(a) - 1

    if not _greedy_cover(a):
        return UNCERTIFIED_UP_BOUND, trace

    base = 1
    while True:
        trace.rounds += 1
        counts = [0] * (n + 1)
        w = [c << ((n - i) * base) for i, c in enumerate(a)]
        ok = _greedy_cover(w, counts)
        touched = max(counts)
        trace.pass_touches.append(touched)
        trace.max_touches = max(trace.max_touches, touched)
        if not ok:
            break
        base += 1
    logger.debug("up_bound: base=%d rounds=%d", base, trace.rounds)
    return Fraction(1, 1 << (base - 1)), trace


def up_bound(P: IntPoly) -> Fraction:
    """
    양의 근의 상계 1/2^(base-1)

    u = 1/2^(base-1) 에서는 certificate 가 성립하고 u/2 에서는 성립하지 않는다.
    1 에서 certificate 가 성립하지 않으면 2 를 돌려주며, 이 값은 보증되지 않는다.
    """
    value, _ = up_bound_traced(P)
    return value


def lower_bound(P: IntPoly) -> BoundResult:
    """
    양의 근의 하계

    역다항식의 상계 v 가 1 이하이면 1/v 는 보증된 하계 (1 이상의 2의 거듭제곱).

    Raises:
        PolynomialError: V(P) = 0 일 때
    """
    if P.is_zero or sign_variation(P) == 0:
        raise PolynomialError("lower_bound: 부호 변화가 없는 다항식입니다")
    v = up_bound(reverse(P))
    if v <= 1:
        return BoundResult(1 / v)
    return BoundResult.uncertified()


def _pow2_at_least_root(ratio: Fraction, d: int) -> Fraction:
    """(2^k)^d >= ratio 를 만족하는 가장 작은 2^k"""
    num, den = ratio.numerator, ratio.denominator

    def enough(k: int) -> bool:
        if k >= 0:
            return num <= den << (k * d)
        return num << (-k * d) <= den

    k = (num.bit_length() - den.bit_length() - 1) // d
    while not enough(k):
        k += 1
    while enough(k - 1):
        k -= 1
    return Fraction(2) ** k


def _sign_blocks(a: Sequence[int]) -> List[List[Tuple[int, int]]]:
    # 차수 내림차순으로 같은 부호끼리 묶음
    blocks: List[List[Tuple[int, int]]] = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if not c:
            continue
        if blocks and (blocks[-1][0][1] > 0) == (c > 0):
            blocks[-1].append((e, c))
        else:
            blocks.append([(e, c)])
    return blocks


def asv_bound(P: IntPoly) -> Fraction:
    """
    음수 블록의 각 항을 바로 위 양수 블록의 항과 하나씩 짝지어
    max (|b|/c)^(1/(e1-e2)) 를 2의 거듭제곱으로 올림한 상계.

    양수 항이 모자라면 블록의 가장 낮은 양수 항을 균등 분할한다.

    Raises:
        PolynomialError: 음수 항이 없을 때
    """
    a = _oriented(P)
    _require_negative(a, "asv_bound")
    blocks = _sign_blocks(a)
    best: Optional[Fraction] = None
    for idx in range(1, len(blocks)):
        neg = blocks[idx]
        if neg[0][1] > 0:
            continue
        pos = blocks[idx - 1]
        t1, t2 = len(pos), len(neg)
        donors: List[Tuple[int, Fraction]] = [(e, Fraction(c)) for e, c in pos]
        if t1 < t2:
            parts = t2 - t1 + 1
            e_last, c_last = donors.pop()
            donors.extend([(e_last, c_last / parts)] * parts)
        for (e1, c1), (e2, c2) in zip(donors, neg):
            candidate = _pow2_at_least_root(Fraction(-c2) / c1, e1 - e2)
            if best is None or candidate > best:
                best = candidate
    assert best is not None
    return best


def cauchy_bound(P: IntPoly) -> Fraction:
    """1 + max_{i<n} |a_i| / |a_n|; 모든 근의 절댓값보다 엄격히 크다."""
    if P.is_zero:
        raise PolynomialError("cauchy_bound: 영다항식입니다")
    lc = abs(P.lc)
    top = max((abs(c) for c in P.coeffs[:-1]), default=0)
    return 1 + Fraction(top, lc)


class BoundAlgorithm(str, enum.Enum):
    LOGCF = "logcf"
    CAUCHY = "cauchy"
    ASV = "asv"


def compute_bound(P: IntPoly, alg: BoundAlgorithm, lower: bool = False) -> Tuple[Optional[Fraction], bool]:
    """
    CLI / API 용 상계(또는 하계) 계산

    Returns:
        (값, 보증 여부). logcf 상계가 보증되지 않으면 (2, False),
        하계가 보증되지 않으면 (None, False)
    """
    alg = BoundAlgorithm(alg)
    if lower:
        if alg is not BoundAlgorithm.LOGCF:
            raise PolynomialError("하계는 logcf 알고리즘만 지원합니다")
        result = lower_bound(P)
        return result.value, result.certified
    if alg is BoundAlgorithm.CAUCHY:
        return cauchy_bound(P), True
    if alg is BoundAlgorithm.ASV:
        return asv_bound(P), True
    value = up_bound(P)
    return value, value <= 1
