"""rootiso - 정수 계수 다항식의 실근 분리 서비스"""

__version__ = "1.0.0"
