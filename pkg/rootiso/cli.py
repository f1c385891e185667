# rootiso/cli.py
"""
rootiso 명령행 도구

    python -m rootiso isolate --poly "x^2 - 2"
    python -m rootiso bound --alg asv --in poly.txt
    python -m rootiso bench --family W --n 100,200 --csv out.csv
    python -m rootiso oracle-check --format coeffs --poly "-2 1 1"
    python -m rootiso serve --port 8000

종료 코드: 0 성공, 1 사용법/입력 오류, 2 내부 불변식 위반
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from . import __version__
from .config import setup_logging
from .services import bench
from .services.bench import Family, make_spec
from .services.bounds import BoundAlgorithm, compute_bound
from .services.errors import InvariantViolation, RootIsoError
from .services.oracle import cross_check
from .services.polycore import IntPoly
from .services.polyio import OutputMode, PolySource, SourceFormat, format_rational, format_results, read_poly
from .services.vas import IsolateOptions, isolate_with_stats

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse 오류도 종료 코드 1 로 통일"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _degree_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"차수 목록 형식 오류: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("차수를 하나 이상 지정해야 합니다")
    return values


# ========= 인자 정의 =========

def _add_input_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--in", dest="infile", metavar="FILE", default="-", help="입력 파일 (- 는 stdin, 기본값)")
    src.add_argument("--poly", metavar="TEXT", help="다항식을 인자로 직접 지정")
    p.add_argument(
        "--format",
        choices=[f.value for f in SourceFormat],
        default=SourceFormat.EXPR.value,
        help="expr: 식, coeffs: 낮은 차수부터 계수, sparse: 차수:계수 쌍",
    )


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-subst", action="store_true", help="x^k 치환 끄기")
    p.add_argument("--no-early-split", action="store_true", help="조기 분할 판정 끄기")
    p.add_argument("--paranoid", action="store_true", help="budget 1 방출 시 V(P) 재계산")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rootiso", description="정수 계수 다항식의 실근 분리")
    parser.add_argument("--version", action="version", version=f"rootiso {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("isolate", help="모든 실근의 분리 구간 출력")
    _add_input_args(p)
    _add_engine_args(p)
    p.add_argument("--out", choices=[m.value for m in OutputMode], default=OutputMode.HUMAN.value)
    p.add_argument("--stats", action="store_true", help="엔진 계측값을 stderr 로 출력")

    p = sub.add_parser("bound", help="양의 근 상계 (또는 하계) 출력")
    _add_input_args(p)
    p.add_argument("--alg", choices=[a.value for a in BoundAlgorithm], default=BoundAlgorithm.LOGCF.value)
    p.add_argument("--lower", action="store_true", help="하계 (logcf 전용)")

    p = sub.add_parser("bench", help="벤치마크 계열 실행")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--n", required=True, type=_degree_list, metavar="N[,N...]")
    p.add_argument("--b", type=int, help="R 계열 계수 크기 (기본 2^20)")
    p.add_argument("--r", type=float, help="R 계열 0 계수 비율 (기본 0)")
    p.add_argument("--seed", type=int, help="R 계열 시드 (기본 0)")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--csv", metavar="FILE", help="CSV 출력 파일 (- 는 stdout)")
    p.add_argument("--json", metavar="FILE", help="JSON 출력 파일 (- 는 stdout)")
    p.add_argument("--workers", type=int, help="시행 병렬 스레드 수")
    p.add_argument("--no-timing", action="store_true", help="wall_seconds 비우기 (결정적 출력)")
    p.add_argument("--persist", action="store_true", help="DB 에 실행 기록 저장")
    _add_engine_args(p)

    p = sub.add_parser("oracle-check", help="Sturm oracle 로 isolate 결과 교차 검증")
    _add_input_args(p)
    _add_engine_args(p)

    p = sub.add_parser("serve", help="HTTP API 서버 실행")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


# ========= 명령 =========

def _read_input(args) -> IntPoly:
    if args.poly is not None:
        payload = args.poly
    elif args.infile == "-":
        payload = sys.stdin.read()
    else:
        try:
            with open(args.infile, encoding="utf-8") as fh:
                payload = fh.read()
        except OSError as e:
            raise UsageError(f"입력 파일을 읽을 수 없습니다: {e}")
    return read_poly(PolySource(SourceFormat(args.format), payload))


def _options(args) -> IsolateOptions:
    defaults = IsolateOptions()
    return IsolateOptions(
        substitution=defaults.substitution and not args.no_subst,
        early_split=defaults.early_split and not args.no_early_split,
        paranoid=defaults.paranoid or args.paranoid,
    )


def _write_text(target: str, text: str) -> None:
    if target == "-":
        sys.stdout.write(text)
        return
    try:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"출력 파일을 쓸 수 없습니다: {e}")


def cmd_isolate(args) -> int:
    roots, stats = isolate_with_stats(_read_input(args), _options(args))
    text = format_results(roots, args.out)
    if text:
        print(text)
    if args.stats:
        for key, value in stats.as_dict().items():
            print(f"{key}: {value}", file=sys.stderr)
    return EXIT_OK


def cmd_bound(args) -> int:
    value, _ = compute_bound(_read_input(args), BoundAlgorithm(args.alg), args.lower)
    print(format_rational(value))
    return EXIT_OK


def _persist(spec, records) -> int:
    from . import models
    from .database import SessionLocal, engine
    from .services.bench_store import BenchStore

    models.Base.metadata.create_all(bind=engine)
    db = SessionLocal()
    try:
        return BenchStore.save_run(db, spec, records).id
    finally:
        db.close()


def cmd_bench(args) -> int:
    options = _options(args)
    records = []
    for n in args.n:
        spec = make_spec(
            family=args.family, n=n, b=args.b, r=args.r, seed=args.seed, trials=args.trials,
        )
        run_records = bench.run(spec, options, args.workers)
        if args.persist:
            run_id = _persist(spec, run_records)
            print(f"run_id={run_id} family={spec.family.value} n={n}", file=sys.stderr)
        if spec.family is Family.R and spec.trials > 1:
            mean = bench.mean_wall_seconds(run_records)
            print(f"mean_wall_seconds={mean:.6g} family=R n={n} trials={spec.trials}", file=sys.stderr)
        records.extend(run_records)

    timing = not args.no_timing
    if args.json:
        _write_text(args.json, bench.records_to_json(records, timing) + "\n")
    if args.csv or not args.json:
        _write_text(args.csv or "-", bench.records_to_csv(records, timing))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    result = cross_check(_read_input(args), _options(args))
    print(f"vas={result.vas_count} oracle={result.oracle_count} match={'yes' if result.match else 'no'}")
    for iv in result.bad_intervals:
        print(f"bad interval: {iv}", file=sys.stderr)
    return EXIT_OK if result.match else EXIT_INVARIANT


def cmd_serve(args) -> int:
    from .main import serve

    serve(args.host, args.port)
    return EXIT_OK


COMMANDS = {
    "isolate": cmd_isolate,
    "bound": cmd_bound,
    "bench": cmd_bench,
    "oracle-check": cmd_oracle_check,
    "serve": cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    args = build_arg_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvariantViolation as e:
        logger.error("❌ 내부 불변식 위반: %s", e)
        print(f"rootiso: internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (RootIsoError, UsageError) as e:
        print(f"rootiso: error: {e}", file=sys.stderr)
        return EXIT_USAGE
