# rootiso/models.py
from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import relationship

from .database import Base


class BenchRun(Base):
    """
    벤치마크 실행 1회 (BenchSpec 하나)
    - 시행(trial)별 결과는 BenchRecordRow 로 저장
    """
    __tablename__ = "bench_runs"

    id = Column(Integer, primary_key=True, index=True)
    family = Column(String(8), nullable=False, index=True)  # W / mW / IW / mIW / T / U / L / M / R
    n = Column(Integer, nullable=False)
    b = Column(Text, nullable=True)  # 임의 정밀도 정수라 문자열로 저장
    r = Column(Float, nullable=True)
    seed = Column(Integer, nullable=True)
    trials = Column(Integer, default=1)
    mean_wall_seconds = Column(Float, nullable=True)

    created_at = Column(DateTime, default=datetime.utcnow)

    # 관계
    records = relationship(
        "BenchRecordRow",
        back_populates="run",
        cascade="all, delete-orphan",
        order_by="BenchRecordRow.trial",
    )


class BenchRecordRow(Base):
    """시행 하나의 측정 결과"""
    __tablename__ = "bench_records"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("bench_runs.id"), nullable=False, index=True)
    trial = Column(Integer, nullable=False)
    wall_seconds = Column(Float, nullable=True)
    repeats = Column(Integer, default=1)  # 짧은 시행은 여러 번 재서 평균
    root_count = Column(Integer, nullable=False)
    verified = Column(Boolean, default=False)
    detail = Column(String(255), nullable=True)

    run = relationship("BenchRun", back_populates="records")
