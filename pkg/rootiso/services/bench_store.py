# rootiso/services/bench_store.py
"""
벤치마크 결과 저장소
- BenchSpec + BenchRecord 리스트를 bench_runs / bench_records 테이블에 저장
- 최근 실행 목록 조회
"""

import logging
from typing import List, Optional

from sqlalchemy.orm import Session

from .. import models
from .bench import BenchRecord, BenchSpec, mean_wall_seconds

logger = logging.getLogger(__name__)


class BenchStore:
    """벤치마크 실행 기록 관리"""

    @staticmethod
    def save_run(db: Session, spec: BenchSpec, records: List[BenchRecord]) -> models.BenchRun:
        """
        실행 하나와 시행별 레코드를 저장

        Returns:
            저장된 BenchRun (id 포함)
        """
        run = models.BenchRun(
            family=spec.family.value,
            n=spec.n,
            b=None if spec.b is None else str(spec.b),
            r=spec.r,
            seed=spec.seed,
            trials=spec.trials,
            mean_wall_seconds=mean_wall_seconds(records),
        )
        for rec in records:
            run.records.append(models.BenchRecordRow(
                trial=rec.trial,
                wall_seconds=rec.wall_seconds,
                repeats=rec.repeats,
                root_count=rec.root_count,
                verified=rec.verified,
                detail=rec.detail[:255],
            ))
        db.add(run)
        db.commit()
        db.refresh(run)
        logger.info("✅ 벤치 실행 저장: run_id=%s %s n=%d", run.id, spec.family.value, spec.n)
        return run

    @staticmethod
    def list_runs(db: Session, family: Optional[str] = None, limit: int = 50) -> List[models.BenchRun]:
        """최근 실행 순으로 조회 (family 필터 가능)"""
        query = db.query(models.BenchRun)
        if family:
            query = query.filter(models.BenchRun.family == family)
        return query.order_by(models.BenchRun.id.desc()).limit(limit).all()
