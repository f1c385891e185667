# API 라우터 패키지 (isolate, bounds, bench, oracle)
