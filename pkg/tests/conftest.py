# tests/conftest.py
import os
import random

# rootiso 모듈을 import 하기 전에 설정
os.environ.setdefault("DATABASE_URL", "sqlite://")
os.environ.setdefault("ROOTISO_SHORT_RUN_REPEATS", "1")

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from rootiso.services.oracle import count_real_roots, sturm_chain, sturm_count
from rootiso.services.polycore import IntPoly, eval_sign, square_free_part


def pytest_collection_modifyitems(config, items):
    if os.getenv("ROOTISO_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="ROOTISO_RUN_SLOW=1 일 때만 실행")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def poly(*coeffs) -> IntPoly:
    """낮은 차수부터 계수"""
    return IntPoly(coeffs)


def assert_isolating(P: IntPoly, roots) -> None:
    """roots 가 P 의 모든 실근을 서로소 구간으로 하나씩 담는지 Sturm 으로 확인"""
    assert len(roots) == count_real_roots(P)
    chain = sturm_chain(square_free_part(P))
    for iv in roots:
        if iv.is_exact:
            assert eval_sign(P, iv.lo) == 0
        else:
            assert iv.lo < iv.hi
            assert eval_sign(P, iv.lo) != 0 and eval_sign(P, iv.hi) != 0
            assert sturm_count(P, iv.lo, iv.hi, chain) == 1
    for left, right in zip(roots, roots[1:]):
        assert left.hi <= right.lo
        assert not (left.hi == right.lo and left.is_exact and right.is_exact)


def random_int_poly(rng: random.Random, degree: int, bits: int = 20, zero_ratio: float = 0.0) -> IntPoly:
    coeffs = []
    for i in range(degree + 1):
        if i < degree and rng.random() < zero_ratio:
            coeffs.append(0)
            continue
        c = rng.randint(1, 1 << bits)
        coeffs.append(c if rng.random() < 0.5 else -c)
    return IntPoly(coeffs)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def db_session():
    """인메모리 SQLite 세션 (테스트마다 새로)"""
    from rootiso import models

    engine = create_engine(
        "sqlite://",
        connect_args={"check_same_thread": False},
        poolclass=StaticPool,
    )
    models.Base.metadata.create_all(bind=engine)
    TestingSession = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    db = TestingSession()
    try:
        yield db
    finally:
        db.close()
        engine.dispose()


@pytest.fixture
def client(db_session):
    from fastapi.testclient import TestClient

    from rootiso.database import get_db
    from rootiso.main import app

    def override_get_db():
        yield db_session

    app.dependency_overrides[get_db] = override_get_db
    with TestClient(app) as c:
        yield c
    app.dependency_overrides.clear()
