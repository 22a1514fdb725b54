"""
로깅 시스템 모듈
"""
import logging
from datetime import datetime

import colorlog

from config import LOG_DIR, LOG_LEVEL, LOG_TO_FILE, LOG_COLOR


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class VerifyLogger:
    """검증/렌더링 프로그램용 로거"""

    def __init__(self, name: str = "rootcomp"):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)

        if self.logger.handlers:
            return

        # 파일 핸들러 (일별 로그 파일)
        if LOG_TO_FILE:
            log_file = LOG_DIR / f"rootcomp_{datetime.now().strftime('%Y%m%d')}.log"
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
            self.logger.addHandler(file_handler)

        # 콘솔 핸들러 (stderr, 렌더링 결과가 stdout 으로 나갈 수 있으므로)
        console_handler = logging.StreamHandler()
        console_handler.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))
        if LOG_COLOR:
            console_handler.setFormatter(colorlog.ColoredFormatter(
                '%(log_color)s' + LOG_FORMAT,
                datefmt=DATE_FORMAT,
                log_colors={
                    'DEBUG': 'cyan',
                    'INFO': 'green',
                    'WARNING': 'yellow',
                    'ERROR': 'red',
                    'CRITICAL': 'red,bg_white',
                },
            ))
        else:
            console_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        self.logger.addHandler(console_handler)

    def info(self, message: str):
        """정보 로그"""
        self.logger.info(message)

    def warning(self, message: str):
        """경고 로그"""
        self.logger.warning(message)

    def error(self, message: str):
        """에러 로그"""
        self.logger.error(message)

    def debug(self, message: str):
        """디버그 로그"""
        self.logger.debug(message)

    def banner(self, title: str):
        """구분선 배너"""
        self.info(f"{'='*60}")
        self.info(title)
        self.info(f"{'='*60}")

    def log_check_start(self, check_id: str, title: str):
        """정리 검증 시작 로그"""
        self.info(f"검증 시작: [{check_id}] {title}")

    def log_check_end(self, check_id: str, passed: bool, count: int, seconds: float):
        """정리 검증 완료 로그"""
        mark = "✓" if passed else "✗"
        msg = f"{mark} 검증 완료: [{check_id}] 확인 {count}건 ({seconds:.2f}초)"
        if passed:
            self.info(msg)
        else:
            self.error(msg)

    def log_artifact(self, kind: str, path: str):
        """산출물 저장 로그"""
        self.info(f"산출물 저장 - {kind}: {path}")


# 전역 로거 인스턴스
logger = VerifyLogger()
