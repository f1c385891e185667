# rootiso/schemas.py
"""
API 응답과 CLI JSON 출력이 함께 쓰는 Pydantic 스키마
"""

from typing import Literal

from pydantic import BaseModel, Field


# ========= 분리 결과 =========
class RationalOut(BaseModel):
    num: int
    den: int = Field(gt=0)  # 항상 양수, 기약분수


class RootIntervalOut(BaseModel):
    kind: Literal["exact", "open"]
    lo: RationalOut
    hi: RationalOut
