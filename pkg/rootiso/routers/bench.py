# rootiso/routers/bench.py
"""
벤치마크 API
- 벤치마크 실행 (선택적으로 DB 저장)
- 저장된 실행 기록 조회
"""

import logging
from datetime import datetime
from typing import List, Optional

from fastapi import APIRouter, Depends, HTTPException, status
from pydantic import BaseModel
from sqlalchemy.orm import Session

from ..database import get_db
from ..services import bench
from ..services.bench import BenchRecord, BenchSpec, Family
from ..services.bench_store import BenchStore
from ..services.errors import BenchSpecError, InvariantViolation

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/bench", tags=["Bench"])


# ========= Pydantic 스키마 =========
class BenchRunRequest(BenchSpec):
    persist: bool = True


class BenchRunResponse(BaseModel):
    records: List[BenchRecord]
    mean_wall_seconds: Optional[float] = None
    run_id: Optional[int] = None  # persist=false 면 null


class BenchRecordOut(BaseModel):
    trial: int
    wall_seconds: Optional[float] = None
    repeats: int
    root_count: int
    verified: bool
    detail: Optional[str] = None

    class Config:
        from_attributes = True  # Pydantic v2


class BenchRunOut(BaseModel):
    id: int
    family: str
    n: int
    b: Optional[str] = None
    r: Optional[float] = None
    seed: Optional[int] = None
    trials: int
    mean_wall_seconds: Optional[float] = None
    created_at: datetime
    records: List[BenchRecordOut] = []

    class Config:
        from_attributes = True


# ========= API 엔드포인트 =========

@router.post("", response_model=BenchRunResponse)
def run_bench(body: BenchRunRequest, db: Session = Depends(get_db)):
    """
    벤치마크 실행
    - trials 만큼 반복, 시행별 레코드 반환
    - persist=true 면 bench_runs / bench_records 에 저장
    """
    spec = BenchSpec(**body.model_dump(exclude={"persist"}))
    try:
        records = bench.run(spec)
    except BenchSpecError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except InvariantViolation as e:
        logger.error("❌ 벤치 중 불변식 위반: %s", e)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))

    run_id = None
    if body.persist:
        run_id = BenchStore.save_run(db, spec, records).id

    return BenchRunResponse(
        records=records,
        mean_wall_seconds=bench.mean_wall_seconds(records),
        run_id=run_id,
    )


@router.get("/records", response_model=List[BenchRunOut])
def get_bench_records(
    family: Optional[Family] = None,
    limit: int = 50,
    db: Session = Depends(get_db),
):
    """
    저장된 벤치 실행 목록 (최근 순)
    - family 필터 가능
    """
    return BenchStore.list_runs(db, family.value if family else None, limit)
