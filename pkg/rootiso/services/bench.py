# rootiso/services/bench.py
"""
벤치마크 다항식 생성 + 시간 측정 하네스
- W, mW, IW, mIW, T, U, L, M, R 계열
- 시드 고정 난수 다항식 R(n, b, r)
- CSV / JSON 출력
"""

from __future__ import annotations

import csv
import enum
import io
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from statistics import fmean
from typing import IO, List, Optional, Tuple

from pydantic import BaseModel, Field, TypeAdapter, ValidationError, model_validator

from .. import config
from .errors import BenchSpecError
from .oracle import count_real_roots
from .polycore import ONE, X, IntPoly, mul, scale, sub
from .vas import IsolateOptions, RootInterval, isolate

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["family", "n", "b", "r", "seed", "trial", "wall_seconds", "root_count", "verified"]


class Family(str, enum.Enum):
    W = "W"
    mW = "mW"
    IW = "IW"
    mIW = "mIW"
    T = "T"
    U = "U"
    L = "L"
    M = "M"
    R = "R"


class BenchSpec(BaseModel):
    """
    벤치마크 스펙
    - R 계열만 b, r, seed 를 사용
    - trials 는 모든 계열에서 반복 횟수 (R 은 시행마다 다른 다항식)
    """

    family: Family
    n: int = Field(ge=1)
    b: Optional[int] = Field(default=None, ge=1)
    r: Optional[float] = Field(default=None, ge=0.0, lt=1.0)
    seed: Optional[int] = None
    trials: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def fill_random_defaults(self):
        if self.family is Family.R:
            if self.b is None:
                self.b = 1 << 20
            if self.r is None:
                self.r = 0.0
            if self.seed is None:
                self.seed = 0
        return self


class BenchRecord(BaseModel):
    family: Family
    n: int
    b: Optional[int] = None
    r: Optional[float] = None
    seed: Optional[int] = None
    trial: int
    wall_seconds: Optional[float] = None
    root_count: int
    verified: bool
    repeats: int = 1
    detail: str = ""


def make_spec(**kwargs) -> BenchSpec:
    """BenchSpec 생성 (pydantic 검증 오류를 BenchSpecError 로 변환)"""
    try:
        return BenchSpec(**kwargs)
    except ValidationError as e:
        raise BenchSpecError(f"잘못된 벤치마크 스펙: {e.errors()[0].get('msg', e)}") from e


# ========= 다항식 계열 =========

def _linear(c0: int, c1: int) -> IntPoly:
    return IntPoly._raw([c0, c1])


def wilkinson(n: int) -> IntPoly:
    """W_n = Π_{i=1..n} (x - i)"""
    P = ONE
    for i in range(1, n + 1):
        P = mul(P, _linear(-i, 1))
    return P


def inverse_wilkinson(n: int) -> IntPoly:
    """IW_n = Π_{i=1..n} (i·x - 1)"""
    P = ONE
    for i in range(1, n + 1):
        P = mul(P, _linear(-1, i))
    return P


def chebyshev_first(n: int) -> IntPoly:
    prev, cur = ONE, X
    if n == 0:
        return prev
    two_x = _linear(0, 2)
    for _ in range(n - 1):
        prev, cur = cur, sub(mul(two_x, cur), prev)
    return cur


def chebyshev_second(n: int) -> IntPoly:
    two_x = _linear(0, 2)
    prev, cur = ONE, two_x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, sub(mul(two_x, cur), prev)
    return cur


def laguerre_scaled(n: int) -> IntPoly:
    """
    n!·L_n (정수 계수)

    ℓ_{k+1} = (2k + 1 - x)·ℓ_k - k²·ℓ_{k-1}, ℓ_0 = 1, ℓ_1 = 1 - x
    """
    prev, cur = ONE, _linear(1, -1)
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, sub(mul(_linear(2 * k + 1, -1), cur), scale(prev, k * k))
    return cur


def mignotte(n: int) -> IntPoly:
    """M_n = x^n - 2·(5x - 1)^2"""
    five_x_minus_one = _linear(-1, 5)
    return sub(IntPoly.monomial(n), scale(mul(five_x_minus_one, five_x_minus_one), 2))


def random_poly(n: int, b: int, r: float, rng: random.Random) -> IntPoly:
    """
    R(n, b, r): 각 계수는 확률 r 로 0, 아니면 크기 [1, b] 균등 + 부호 반반.
    최고차 계수는 항상 0 이 아님.
    """
    coeffs = []
    for i in range(n + 1):
        if i < n and rng.random() < r:
            coeffs.append(0)
            continue
        magnitude = rng.randint(1, b)
        coeffs.append(magnitude if rng.random() < 0.5 else -magnitude)
    return IntPoly._raw(coeffs)


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}/{trial}")


def generate(spec: BenchSpec, trial: int = 0) -> IntPoly:
    """
    스펙에 해당하는 다항식 생성 (R 계열은 seed, trial 로 결정됨)
    """
    n = spec.n
    family = spec.family
    if family is Family.W:
        return wilkinson(n)
    if family is Family.mW:
        return sub(wilkinson(n), ONE)
    if family is Family.IW:
        return inverse_wilkinson(n)
    if family is Family.mIW:
        return sub(inverse_wilkinson(n), ONE)
    if family is Family.T:
        return chebyshev_first(n)
    if family is Family.U:
        return chebyshev_second(n)
    if family is Family.L:
        return laguerre_scaled(n)
    if family is Family.M:
        return mignotte(n)
    if family is Family.R:
        return random_poly(n, spec.b, spec.r, _trial_rng(spec.seed, trial))
    raise BenchSpecError(f"알 수 없는 계열: {family}")


# ========= 검증 =========

def expected_root_count(family: Family, n: int) -> Optional[int]:
    """해석적으로 알려진 실근 개수 (모르면 None)"""
    if family in (Family.W, Family.IW, Family.T, Family.U, Family.L):
        return n
    if family is Family.mW and n > 10:
        return n
    if family is Family.M and n >= 3:
        return 3 if n % 2 else 4
    return None


def _verify(spec: BenchSpec, P: IntPoly, roots: List[RootInterval]) -> Tuple[bool, str]:
    n = spec.n
    expected = expected_root_count(spec.family, n)
    if expected is None:
        if n > config.ORACLE_MAX_DEGREE:
            return False, f"skipped: n > {config.ORACLE_MAX_DEGREE}"
        expected = count_real_roots(P)
        source = "sturm"
    else:
        source = "known"
    if len(roots) != expected:
        return False, f"count {len(roots)} != {expected} ({source})"

    if spec.family is Family.W:
        if not all(iv.contains(Fraction(i + 1)) for i, iv in enumerate(roots)):
            return False, "W_n: i 번째 구간에 i 가 없음"
    elif spec.family is Family.IW:
        if not all(iv.contains(Fraction(1, n - i)) for i, iv in enumerate(roots)):
            return False, "IW_n: 구간에 1/i 가 없음"
    elif spec.family in (Family.T, Family.U):
        if not all(iv.lo >= -1 and iv.hi <= 1 for iv in roots):
            return False, "T_n/U_n: (-1, 1) 밖의 구간"
    elif spec.family is Family.L:
        if not all(iv.lo >= 0 for iv in roots):
            return False, "L_n: 음의 구간"
    return True, source


# ========= 실행 =========

def _time_isolate(P: IntPoly, options: IsolateOptions) -> Tuple[List[RootInterval], float, int]:
    t0 = time.perf_counter()
    roots = isolate(P, options)
    elapsed = time.perf_counter() - t0
    if elapsed >= config.SHORT_RUN_SECONDS or config.SHORT_RUN_REPEATS <= 1:
        return roots, elapsed, 1
    # 너무 짧으면 여러 번 돌려 평균
    samples = [elapsed]
    for _ in range(config.SHORT_RUN_REPEATS):
        t0 = time.perf_counter()
        isolate(P, options)
        samples.append(time.perf_counter() - t0)
    return roots, fmean(samples), len(samples)


def run_trial(spec: BenchSpec, trial: int, options: Optional[IsolateOptions] = None) -> BenchRecord:
    options = options or IsolateOptions()
    P = generate(spec, trial)
    roots, elapsed, repeats = _time_isolate(P, options)
    verified, detail = _verify(spec, P, roots)
    if not verified:
        logger.warning("⚠️ 검증 실패: %s n=%d trial=%d (%s)", spec.family.value, spec.n, trial, detail)
    logger.info("벤치 시행: %s n=%d trial=%d %.6fs roots=%d", spec.family.value, spec.n, trial, elapsed, len(roots))
    return BenchRecord(
        family=spec.family,
        n=spec.n,
        b=spec.b,
        r=spec.r,
        seed=spec.seed,
        trial=trial,
        wall_seconds=elapsed,
        root_count=len(roots),
        verified=verified,
        repeats=repeats,
        detail=detail,
    )


def run(
    spec: BenchSpec,
    options: Optional[IsolateOptions] = None,
    workers: Optional[int] = None,
) -> List[BenchRecord]:
    """
    스펙의 모든 시행을 실행

    Args:
        spec: BenchSpec
        options: isolate 옵션
        workers: 시행 병렬 스레드 수 (기본 config.BENCH_WORKERS)

    Returns:
        trial 순서대로 정렬된 BenchRecord 리스트
    """
    workers = workers or config.BENCH_WORKERS
    trials = range(spec.trials)
    if workers <= 1 or spec.trials == 1:
        return [run_trial(spec, t, options) for t in trials]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda t: run_trial(spec, t, options), trials))


def mean_wall_seconds(records: List[BenchRecord]) -> Optional[float]:
    times = [rec.wall_seconds for rec in records if rec.wall_seconds is not None]
    return fmean(times) if times else None


# ========= 출력 =========

def _strip_timing(records: List[BenchRecord]) -> List[BenchRecord]:
    return [rec.model_copy(update={"wall_seconds": None, "repeats": 1}) for rec in records]


def write_csv(records: List[BenchRecord], stream: IO[str], timing: bool = True) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records if timing else _strip_timing(records):
        writer.writerow([
            rec.family.value,
            rec.n,
            "" if rec.b is None else rec.b,
            "" if rec.r is None else rec.r,
            "" if rec.seed is None else rec.seed,
            rec.trial,
            "" if rec.wall_seconds is None else f"{rec.wall_seconds:.9f}",
            rec.root_count,
            "true" if rec.verified else "false",
        ])


def records_to_csv(records: List[BenchRecord], timing: bool = True) -> str:
    buf = io.StringIO()
    write_csv(records, buf, timing=timing)
    return buf.getvalue()


_RECORDS = TypeAdapter(List[BenchRecord])


def records_to_json(records: List[BenchRecord], timing: bool = True) -> str:
    """JSON 배열 (CSV 와 같은 레코드 + repeats, detail)"""
    if not timing:
        records = _strip_timing(records)
    return _RECORDS.dump_json(records, indent=2).decode("utf-8")
