# rootiso/main.py
"""
rootiso - 정수 계수 다항식 실근 분리 서버
"""

from fastapi import FastAPI

from . import __version__, models
from .config import setup_logging
from .database import engine
from .routers import bench, bounds, isolate, oracle

setup_logging()

# DB 테이블 생성 (벤치 기록용)
models.Base.metadata.create_all(bind=engine)

# FastAPI 앱
app = FastAPI(
    title="rootiso",
    description="연분수(VAS) 방식의 정확한 실근 분리",
    version=__version__,
)

# 라우터
app.include_router(isolate.router)
app.include_router(bounds.router)
app.include_router(bench.router)
app.include_router(oracle.router)


@app.get("/")
def root():
    return {"message": "rootiso API", "version": __version__, "status": "running"}


def serve(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(app, host=host, port=port, log_config=None)


if __name__ == "__main__":
    serve()
