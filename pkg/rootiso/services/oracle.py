# rootiso/services/oracle.py
"""
Sturm 열 기반 기준(oracle) 구현
- 테스트 / bench 검증 / oracle-check 에서 연분수 엔진 결과와 비교하는 용도
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .bounds import cauchy_bound
from .errors import PolynomialError
from .polycore import (
    IntPoly,
    derivative,
    eval_sign,
    negate,
    primitive_part,
    pseudo_remainder,
    sign,
    sign_variation,
    square_free_part,
)
from .vas import IsolateOptions, RootInterval, isolate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SturmChain:
    """p0 = P, p1 = P', p_{i+1} = -rem(p_{i-1}, p_i) (양의 상수배, primitive)"""

    polys: Tuple[IntPoly, ...]

    def variations_at(self, q: Fraction) -> int:
        return sign_variation(eval_sign(p, q) for p in self.polys)

    def variations_at_infinity(self, negative: bool = False) -> int:
        signs = []
        for p in self.polys:
            s = sign(p.lc)
            if negative and p.degree % 2:
                s = -s
            signs.append(s)
        return sign_variation(signs)


def sturm_chain(P: IntPoly) -> SturmChain:
    if P.is_zero:
        raise PolynomialError("sturm_chain: 영다항식입니다")
    chain = [P]
    current = derivative(P)
    prev = P
    while not current.is_zero:
        chain.append(current)
        nxt = negate(primitive_part(pseudo_remainder(prev, current)))
        prev, current = current, nxt
    return SturmChain(tuple(chain))


def sturm_count(
    P: IntPoly, a: Fraction, b: Fraction, chain: Optional[SturmChain] = None
) -> int:
    """
    열린 구간 (a, b) 안의 서로 다른 실근 개수

    Raises:
        PolynomialError: a >= b 이거나 끝점이 근일 때
    """
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise PolynomialError(f"sturm_count: a < b 여야 합니다 ({a}, {b})")
    if eval_sign(P, a) == 0 or eval_sign(P, b) == 0:
        raise PolynomialError("sturm_count: 끝점이 근입니다")
    chain = chain or sturm_chain(P)
    return chain.variations_at(a) - chain.variations_at(b)


def count_real_roots(P: IntPoly) -> int:
    """서로 다른 실근의 전체 개수"""
    if P.is_zero:
        raise PolynomialError("count_real_roots: 영다항식입니다")
    if P.degree < 1:
        return 0
    chain = sturm_chain(P)
    return chain.variations_at_infinity(negative=True) - chain.variations_at_infinity()


def _nudge(P: IntPoly, chain: SturmChain, root: Fraction, width: Fraction) -> Fraction:
    """root 외에 다른 근이 없도록 하는 반지름 (1/2^j 씩 줄임)"""
    delta = width / 2
    while True:
        lo, hi = root - delta, root + delta
        if eval_sign(P, lo) and eval_sign(P, hi) and sturm_count(P, lo, hi, chain) == 1:
            return delta
        delta /= 2


def oracle_isolate(P: IntPoly) -> List[RootInterval]:
    """
    Sturm 열 + 이분법으로 모든 실근을 분리

    - Cauchy 상계로 (-B, B) 에서 시작
    - 중점이 근이면 exact 로 기록하고 양옆을 좁혀 계속 분할
    """
    if P.is_zero:
        raise PolynomialError("oracle_isolate: 영다항식입니다")
    if P.degree < 1:
        return []
    Q = square_free_part(P)
    chain = sturm_chain(Q)
    bound = cauchy_bound(Q)

    out: List[RootInterval] = []
    work: List[Tuple[Fraction, Fraction]] = [(-bound, bound)]
    while work:
        lo, hi = work.pop()
        count = sturm_count(Q, lo, hi, chain)
        if count == 0:
            continue
        if count == 1:
            out.append(RootInterval.open(lo, hi))
            continue
        mid = (lo + hi) / 2
        if eval_sign(Q, mid) == 0:
            out.append(RootInterval.exact(mid))
            delta = _nudge(Q, chain, mid, min(mid - lo, hi - mid))
            work.append((lo, mid - delta))
            work.append((mid + delta, hi))
        else:
            work.append((lo, mid))
            work.append((mid, hi))
    out.sort()
    logger.debug("oracle 분리 완료: deg=%d roots=%d", P.degree, len(out))
    return out


@dataclass(frozen=True)
class CrossCheck:
    """oracle-check 결과"""

    vas_count: int
    oracle_count: int
    bad_intervals: Tuple[RootInterval, ...] = ()

    @property
    def match(self) -> bool:
        return self.vas_count == self.oracle_count and not self.bad_intervals


def _holds_one_root(P: IntPoly, chain: SturmChain, iv: RootInterval) -> bool:
    if iv.is_exact:
        return eval_sign(P, iv.lo) == 0
    if eval_sign(P, iv.lo) == 0 or eval_sign(P, iv.hi) == 0:
        return False
    return sturm_count(P, iv.lo, iv.hi, chain) == 1


def cross_check(P: IntPoly, options: Optional[IsolateOptions] = None) -> CrossCheck:
    """
    vas.isolate 결과를 Sturm 열로 검증

    - 개수: oracle_isolate 와 같아야 함
    - 각 open 구간: sturm_count == 1, exact 구간: P(q) == 0
    """
    roots = isolate(P, options)
    expected = oracle_isolate(P)
    chain = sturm_chain(square_free_part(P)) if P.degree >= 1 else None
    bad = tuple(iv for iv in roots if chain is None or not _holds_one_root(P, chain, iv))
    result = CrossCheck(vas_count=len(roots), oracle_count=len(expected), bad_intervals=bad)
    if not result.match:
        logger.warning(
            "⚠️ oracle 불일치: vas=%d oracle=%d bad=%d", result.vas_count, result.oracle_count, len(bad)
        )
    return result
