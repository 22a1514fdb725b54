"""
루트 시스템 압축 검증 도구 설정 관리 모듈
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# 환경변수 로드
load_dotenv()

# 프로젝트 루트 디렉토리
ROOT_DIR = Path(__file__).parent

# ==================== 출력 경로 설정 ====================

# 렌더링/익스포트/검증 리포트 기본 출력 디렉토리
# CLI의 --out 이 상대 파일명이면 이 디렉토리 아래에 저장됩니다
OUTPUT_DIR = Path(os.getenv("ROOTCOMP_OUTPUT_DIR", "./data/output"))
LOG_DIR = Path(os.getenv("LOG_DIR", "./logs"))

# 디렉토리 생성
OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
LOG_DIR.mkdir(parents=True, exist_ok=True)

# ==================== 로깅 설정 ====================

# 콘솔 로그 레벨 (DEBUG, INFO, WARNING, ERROR)
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# 일별 로그 파일 기록 여부
LOG_TO_FILE = os.getenv("LOG_TO_FILE", "true").lower() == "true"

# 콘솔 컬러 출력 여부 (colorlog)
LOG_COLOR = os.getenv("LOG_COLOR", "true").lower() == "true"

# ==================== 검증 설정 ====================

# cmd_verify 동시 실행 스레드 수 (1 = 순차 실행)
VERIFY_WORKERS = int(os.getenv("VERIFY_WORKERS", "1"))

# 순열군 생성 시 허용하는 최대 원소 수 (W(E6) = 51840)
CLOSURE_LIMIT = int(os.getenv("CLOSURE_LIMIT", "200000"))

# 기본 루트 시스템 (render/export/query 의 --system 기본값)
DEFAULT_SYSTEM = os.getenv("DEFAULT_SYSTEM", "e7").lower()

# ==================== 렌더링 설정 ====================

SVG_CELL_SIZE = int(os.getenv("SVG_CELL_SIZE", "56"))
SVG_FONT_FAMILY = os.getenv("SVG_FONT_FAMILY", "monospace")
SVG_HIGHLIGHT_COLOR = os.getenv("SVG_HIGHLIGHT_COLOR", "#f6c85f")
SVG_ORIGIN_COLOR = os.getenv("SVG_ORIGIN_COLOR", "#e8684a")

# ==================== API 서버 설정 ====================

API_HOST = os.getenv("API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("API_PORT", "8000"))
