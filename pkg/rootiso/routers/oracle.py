# rootiso/routers/oracle.py
"""
VAS 결과를 Sturm oracle 로 교차 검증하는 API
"""

import logging

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel

from ..services.errors import InvariantViolation, ParseError, PolynomialError
from ..services.oracle import cross_check
from ..services.polyio import PolySource, SourceFormat, read_poly

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/oracle-check", tags=["Oracle"])


# ========= Pydantic 스키마 =========
class OracleCheckRequest(BaseModel):
    poly: str
    format: SourceFormat = SourceFormat.EXPR


class OracleCheckResponse(BaseModel):
    match: bool
    vas_count: int
    oracle_count: int


# ========= API 엔드포인트 =========

@router.post("", response_model=OracleCheckResponse)
def oracle_check(body: OracleCheckRequest):
    """
    vas.isolate 와 oracle_isolate 비교
    - match: 개수가 같고 모든 VAS 구간이 근을 정확히 하나 포함
    """
    try:
        P = read_poly(PolySource(body.format, body.poly))
        result = cross_check(P)
    except (ParseError, PolynomialError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except InvariantViolation as e:
        logger.error("❌ 내부 불변식 위반: %s", e)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))

    return OracleCheckResponse(
        match=result.match,
        vas_count=result.vas_count,
        oracle_count=result.oracle_count,
    )
