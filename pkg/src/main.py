"""
루트 시스템 압축 검증 도구 메인 스크립트
"""
import sys
import json
import argparse
import traceback
from datetime import datetime
from pathlib import Path

from config import DEFAULT_SYSTEM, OUTPUT_DIR, VERIFY_WORKERS
from exporter import KINDS, ExportError, ExportSpec, export_to_file
from logger import logger
from queries import QUERIES, QueryError, run_query
from renderer import FORMATS, TARGETS, RenderError, RenderSpec, render_to_file
from verifier import UnknownCheckError, build_report, list_checks, run_checks

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def cmd_verify(args) -> int:
    """전수 검증 실행"""
    if args.list:
        for check_id, title, anchors in list_checks():
            print(f"{check_id:<20} {title}  [{', '.join(anchors)}]" if anchors else f"{check_id:<20} {title}")
        return EXIT_OK

    start_time = datetime.now()
    logger.banner(f"검증 시작: {', '.join(args.checks) if args.checks else '전체'}")
    results = run_checks(args.checks or None, workers=args.workers)
    report = build_report(results, timings=args.timings)
    text = json.dumps(report, ensure_ascii=False, indent=2) + "\n"

    if args.out:
        path = Path(args.out)
        if not path.is_absolute():
            path = OUTPUT_DIR / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.log_artifact("verify report", str(path))
    else:
        sys.stdout.write(text)

    logger.info(f"{'='*60}")
    logger.info(f"통과: {report['passed']}개, 실패: {report['failed']}개")
    logger.info(f"총 소요 시간: {datetime.now() - start_time}")
    logger.info(f"{'='*60}")
    if report["failed"]:
        for r in results:
            if not r.passed:
                logger.error(f"✗ [{r.check_id}] {r.detail}")
        return EXIT_FAILED
    logger.info("✅ 모든 검증 통과")
    return EXIT_OK


def cmd_render(args) -> int:
    """그림 렌더링"""
    spec = RenderSpec(
        target=args.target,
        format=args.format,
        system=args.system,
        stratum=args.stratum,
        highlight=args.highlight,
    )
    path = render_to_file(spec, args.out)
    print(path)
    return EXIT_OK


def cmd_export(args) -> int:
    """JSON 익스포트"""
    spec = ExportSpec(what=args.what, system=args.system, p=args.p, stratum=args.stratum)
    path = export_to_file(spec, args.out)
    print(path)
    return EXIT_OK


def cmd_query(args) -> int:
    """단일 루트/벡터 조회"""
    result = run_query(args.kind, args.args, args.system, args.p)
    sys.stdout.write(json.dumps(result, ensure_ascii=False, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='E6/E7/E8 루트 시스템 압축 사상 검증 도구',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
사용 예시:
  # 전체 검증
  python run.py verify

  # 검증 항목 목록
  python run.py verify --list

  # 앵커로 검증 (thm:T-graph7 -> t-graph-e7)
  python run.py verify thm:T-graph7

  # 일부 항목만 검증하고 리포트 저장 (소요 시간 포함)
  python run.py verify t-graph-e7 double-sixes --out report.json --timings

  # 정육면체 모서리 그림 (𝓛(021) ∩ Γ7⁺ 칠하기)
  python run.py render cube_corner --highlight 021

  # E6 정사각 격자 ASCII 출력
  python run.py render square --highlight 11122 --format ascii

  # E8 의 층 4 하세 도표를 DOT 으로
  python run.py render hasse --system e8 --stratum 4 --format dot

  # 루트 / 압축 사상 / 아이디얼 익스포트
  python run.py export roots --system e7
  python run.py export map --system e7
  python run.py export map --system d4 --p 2
  python run.py export ideals --stratum 7

  # 조회
  python run.py query image 1122111 --system e7
  python run.py query preimage 021 --system e7
  python run.py query link 11122 --system e6
  python run.py query twist 4 0112221 --system e7

그림 배치 규칙:
  cube_corner : 면 a, b, c 를 왼쪽부터, 면 안의 행/열 = 나머지 두 자릿수 (1..3)
  square      : 행 = (x1, x2), 열 = (x3, x4), 각각 11, 12, 21, 22 순
  hasse       : 높이가 높을수록 위쪽, 하이라이트는 아래 집합 (그 루트 이하)
  openmap7    : cube_corner 배치, 칸마다 h7 숫자, 하이라이트는 링크
  dynkin      : 하이라이트는 이웃 꼭짓점
  출력 파일은 상대 경로일 때 ROOTCOMP_OUTPUT_DIR 아래에 저장됩니다.

종료 코드: 0 성공, 1 검증 실패/내부 오류, 2 사용법 오류
        """
    )
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')

    # verify
    p_verify = subparsers.add_parser('verify', help='전수 검증 실행')
    p_verify.add_argument('checks', nargs='*', metavar='CHECK', help='검증 항목 ID 또는 앵커, all (생략 시 전체)')
    p_verify.add_argument('--list', action='store_true', help='검증 항목 목록 출력')
    p_verify.add_argument('--out', type=str, default=None, help='리포트 파일 (생략 시 표준 출력)')
    p_verify.add_argument('--timings', action='store_true', help='리포트에 항목별 소요 시간 포함')
    p_verify.add_argument('--workers', type=int, default=VERIFY_WORKERS,
                          help=f'동시 실행 스레드 수 (기본값: {VERIFY_WORKERS})')
    p_verify.set_defaults(func=cmd_verify)

    # render
    p_render = subparsers.add_parser('render', help='그림 렌더링')
    p_render.add_argument('target', choices=TARGETS, help='렌더링 대상')
    p_render.add_argument('--system', type=str, default=DEFAULT_SYSTEM, help='루트 시스템 (예: e6, e7, e8, d4)')
    p_render.add_argument('--stratum', type=int, default=None, help='층 라벨 (hasse)')
    p_render.add_argument('--format', choices=FORMATS, default='svg', help='출력 형식 (기본값: svg)')
    p_render.add_argument('--highlight', type=str, default=None, help='기준 정점 (벡터 또는 루트 계수)')
    p_render.add_argument('--out', type=str, default=None, help='출력 파일')
    p_render.set_defaults(func=cmd_render)

    # export
    p_export = subparsers.add_parser('export', help='JSON 익스포트')
    p_export.add_argument('what', choices=KINDS, help='익스포트 종류')
    p_export.add_argument('--system', type=str, default=DEFAULT_SYSTEM, help='루트 시스템')
    p_export.add_argument('--p', type=int, default=None, help='법 p (표준 몫 압축)')
    p_export.add_argument('--stratum', type=int, default=None, help='층 라벨 (ideals, 기본값 7)')
    p_export.add_argument('--out', type=str, default=None, help='출력 파일')
    p_export.set_defaults(func=cmd_export)

    # query
    p_query = subparsers.add_parser('query', help='단일 루트/벡터 조회')
    p_query.add_argument('kind', choices=QUERIES, help='조회 종류')
    p_query.add_argument('args', nargs='+', metavar='ARG', help='루트 계수 / 벡터 / (twist) 정점 번호와 루트')
    p_query.add_argument('--system', type=str, default=DEFAULT_SYSTEM, help='루트 시스템')
    p_query.add_argument('--p', type=int, default=None, help='법 p (image)')
    p_query.set_defaults(func=cmd_query)

    return parser


def main(argv=None) -> int:
    """CLI 진입점 (종료 코드 반환)"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        return args.func(args)
    except (UnknownCheckError, RenderError, ExportError, QueryError) as e:
        logger.error(f"✗ {args.command} 실패: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"{args.command} 실행 중 오류 발생: {e}")
        logger.error(traceback.format_exc())
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
