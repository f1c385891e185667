# rootiso/routers/isolate.py
"""
근 분리 API
- 식 / 계수 목록 / sparse 입력을 받아 모든 실근의 분리 구간 반환
"""

import logging
from typing import Dict, List, Optional

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel

from ..schemas import RootIntervalOut
from ..services.errors import InvariantViolation, ParseError, PolynomialError
from ..services.polyio import PolySource, SourceFormat, read_poly, to_wire
from ..services.vas import IsolateOptions, isolate_with_stats

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/isolate", tags=["Isolate"])


# ========= Pydantic 스키마 =========
class IsolateRequest(BaseModel):
    poly: str
    format: SourceFormat = SourceFormat.EXPR
    substitution: Optional[bool] = None  # None 이면 서버 기본값
    early_split: Optional[bool] = None
    paranoid: Optional[bool] = None


class IsolateResponse(BaseModel):
    roots: List[RootIntervalOut]
    count: int
    stats: Dict[str, int]


def build_options(substitution: Optional[bool], early_split: Optional[bool], paranoid: Optional[bool]) -> IsolateOptions:
    """요청에 지정된 값만 기본 옵션 위에 덮어쓴다"""
    defaults = IsolateOptions()
    return IsolateOptions(
        substitution=defaults.substitution if substitution is None else substitution,
        early_split=defaults.early_split if early_split is None else early_split,
        paranoid=defaults.paranoid if paranoid is None else paranoid,
    )


# ========= API 엔드포인트 =========

@router.post("", response_model=IsolateResponse)
def isolate_roots(body: IsolateRequest):
    """
    실근 분리
    - 결과는 오름차순, 서로소 구간
    - exact: 유리수 근, open: 근이 정확히 하나인 열린 구간
    """
    try:
        P = read_poly(PolySource(body.format, body.poly))
        options = build_options(body.substitution, body.early_split, body.paranoid)
        roots, stats = isolate_with_stats(P, options)
    except (ParseError, PolynomialError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except InvariantViolation as e:
        logger.error("❌ 내부 불변식 위반: %s", e)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e))

    return IsolateResponse(
        roots=[to_wire(iv) for iv in roots],
        count=len(roots),
        stats=stats.as_dict(),
    )
