# 서비스 레이어 패키지 (polycore, bounds, vas, oracle, bench, polyio)
