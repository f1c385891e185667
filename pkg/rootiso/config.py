# rootiso/config.py
"""
환경변수 기반 설정
- rootiso/.env 파일이 있으면 먼저 로드
- 값은 모듈 로드 시점에 한 번 읽어서 상수로 둔다
"""

import logging.config
import os
from pathlib import Path

from dotenv import load_dotenv

# rootiso/.env 파일을 명시적으로 로드
package_dir = Path(__file__).parent
env_path = package_dir / ".env"
load_dotenv(dotenv_path=env_path)

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def env_flag(name: str, default: bool) -> bool:
    """1/0, true/false, yes/no, on/off (대소문자 무시)"""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError(f"{name} 값이 올바르지 않습니다: {raw!r}")


# 1) 환경변수에서 DATABASE_URL 먼저 찾고,
# 2) 없으면 SQLite 파일 사용
DATABASE_URL = os.getenv("DATABASE_URL") or "sqlite:///./rootiso_bench.db"

# 근 분리 기본 옵션 (CLI 플래그 / API 요청으로 덮어쓸 수 있음)
SUBSTITUTION_DEFAULT = env_flag("ROOTISO_SUBSTITUTION", True)
EARLY_SPLIT_DEFAULT = env_flag("ROOTISO_EARLY_SPLIT", True)
PARANOID_DEFAULT = env_flag("ROOTISO_PARANOID", False)

# 벤치마크
BENCH_WORKERS = int(os.getenv("ROOTISO_BENCH_WORKERS", "1"))
SHORT_RUN_SECONDS = float(os.getenv("ROOTISO_SHORT_RUN_SECONDS", "0.01"))
SHORT_RUN_REPEATS = int(os.getenv("ROOTISO_SHORT_RUN_REPEATS", "10"))
ORACLE_MAX_DEGREE = int(os.getenv("ROOTISO_ORACLE_MAX_DEGREE", "200"))

LOGGING_CONFIG = os.getenv("ROOTISO_LOGGING_CONFIG") or str(package_dir / "logging.ini")


def setup_logging() -> None:
    """logging.ini 로 로깅 설정 (파일이 없으면 stderr 기본 설정)"""
    if os.path.exists(LOGGING_CONFIG):
        logging.config.fileConfig(LOGGING_CONFIG, disable_existing_loggers=False)
    else:
        logging.basicConfig(level=logging.WARNING, format="%(levelname)-5.5s [%(name)s] %(message)s")
