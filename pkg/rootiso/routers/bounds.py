# rootiso/routers/bounds.py
"""
양의 근 상계/하계 API
- logcf: 2의 거듭제곱 certificate 상계 (또는 하계)
- cauchy / asv: 비교용 상계
"""

from typing import Optional

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel

from ..services.bounds import BoundAlgorithm, compute_bound
from ..services.errors import ParseError, PolynomialError
from ..services.polyio import PolySource, SourceFormat, format_rational, read_poly

router = APIRouter(prefix="/api/bound", tags=["Bounds"])


# ========= Pydantic 스키마 =========
class BoundRequest(BaseModel):
    poly: str
    format: SourceFormat = SourceFormat.EXPR
    alg: BoundAlgorithm = BoundAlgorithm.LOGCF
    lower: bool = False  # True 면 양의 근 하계 (logcf 전용)


class BoundResponse(BaseModel):
    alg: BoundAlgorithm
    lower: bool
    certified: bool
    bound: Optional[str] = None  # "p/q", 하계를 보증할 수 없으면 null


# ========= API 엔드포인트 =========

@router.post("", response_model=BoundResponse)
def get_bound(body: BoundRequest):
    """
    양의 근 상계 (또는 하계) 계산
    - logcf 상계가 1 에서도 보증되지 않으면 bound="2/1", certified=false
    """
    try:
        P = read_poly(PolySource(body.format, body.poly))
        value, certified = compute_bound(P, body.alg, body.lower)
    except (ParseError, PolynomialError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))

    return BoundResponse(
        alg=body.alg,
        lower=body.lower,
        certified=certified,
        bound=None if value is None else format_rational(value),
    )
