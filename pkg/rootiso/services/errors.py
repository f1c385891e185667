# rootiso/services/errors.py
"""
근 분리 서비스 공통 예외
- 라우터에서는 HTTPException 으로, CLI 에서는 종료 코드로 변환됨
"""

from typing import Optional


class RootIsoError(Exception):
    """rootiso 예외의 최상위 클래스"""


class PolynomialError(RootIsoError, ValueError):
    """다항식 연산의 전제조건 위반 (영다항식, 나누어떨어지지 않음 등)"""


class ParseError(RootIsoError, ValueError):
    """
    입력 문법 오류

    Args:
        message: 오류 설명
        position: 입력 문자열 기준 0-based 위치 (모르면 None)
    """

    def __init__(self, message: str, position: Optional[int] = None):
        self.message = message
        self.position = position
        super().__init__(message)

    def __str__(self) -> str:
        if self.position is None:
            return self.message
        return f"{self.message} (position {self.position})"


class BenchSpecError(RootIsoError, ValueError):
    """벤치마크 스펙 오류 (알 수 없는 family, 잘못된 n/b/r 등)"""


class InvariantViolation(RootIsoError, RuntimeError):
    """내부 보장이 깨진 경우 (paranoid 검사 실패, 오라클 불일치 등)"""
