"""
API 요청/응답 Pydantic 모델 정의
"""
from pydantic import BaseModel, Field
from typing import List, Optional, Dict, Any
from enum import Enum

from config import DEFAULT_SYSTEM


# ==================== 공통 ====================

class JobStatus(str, Enum):
    QUEUED = "queued"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class JobResponse(BaseModel):
    """비동기 작업 생성 응답"""
    job_id: str = Field(..., description="작업 ID")
    status: JobStatus = Field(..., description="작업 상태")
    message: str = Field(..., description="응답 메시지")
    created_at: str = Field(..., description="작업 생성 시간")


class JobStatusResponse(BaseModel):
    """작업 상태 조회 응답"""
    job_id: str
    status: JobStatus
    job_type: str = Field(..., description="작업 유형 (verify)")
    params: Dict[str, Any] = Field(default_factory=dict, description="작업 파라미터")
    created_at: str
    started_at: Optional[str] = None
    completed_at: Optional[str] = None
    error_message: Optional[str] = None
    stats: Optional[Dict[str, Any]] = None
    result: Optional[Dict[str, Any]] = Field(default=None, description="검증 리포트 (완료 시)")


class JobListItem(BaseModel):
    """작업 목록 항목"""
    job_id: str
    status: JobStatus
    job_type: str
    created_at: str
    completed_at: Optional[str] = None


class JobListResponse(BaseModel):
    """작업 목록 응답"""
    total_jobs: int
    jobs: List[JobListItem]


# ==================== 검증 ====================

class VerifyRequest(BaseModel):
    """전수 검증 요청"""
    checks: List[str] = Field(default_factory=list, description="검증 항목 ID 또는 앵커 목록 (비우면 전체)")
    timings: bool = Field(default=False, description="리포트에 항목별 소요 시간 포함")
    workers: Optional[int] = Field(default=None, description="동시 실행 스레드 수 (기본: 설정값)", ge=1)


class CheckInfo(BaseModel):
    check_id: str
    title: str
    anchors: List[str] = Field(default_factory=list, description="정리/식 앵커")


class CheckListResponse(BaseModel):
    """검증 항목 목록"""
    total: int
    checks: List[CheckInfo]


# ==================== 산출물 ====================

class RenderRequest(BaseModel):
    """그림 렌더링 요청"""
    target: str = Field(..., description="cube_corner, square, hasse, openmap7, dynkin, tgraph")
    format: str = Field(default="svg", description="svg, ascii, dot, json")
    system: str = Field(default=DEFAULT_SYSTEM, description="루트 시스템 (예: e7)")
    stratum: Optional[int] = Field(default=None, description="층 라벨 (hasse)")
    highlight: Optional[str] = Field(default=None, description="기준 정점")
    save: bool = Field(default=False, description="출력 디렉토리에 파일로도 저장")


class RenderResponse(BaseModel):
    target: str
    format: str
    content: str = Field(..., description="렌더링 결과 문자열")
    path: Optional[str] = Field(default=None, description="저장 경로 (save=true 일 때)")


class ExportRequest(BaseModel):
    """JSON 익스포트 요청"""
    what: str = Field(..., description="roots, map, strata, ideals, group")
    system: str = Field(default=DEFAULT_SYSTEM, description="루트 시스템")
    p: Optional[int] = Field(default=None, description="법 p (표준 몫 압축)", ge=2)
    stratum: Optional[int] = Field(default=None, description="층 라벨 (ideals)")
    save: bool = Field(default=False, description="출력 디렉토리에 파일로도 저장")


class ExportResponse(BaseModel):
    kind: str
    document: Dict[str, Any]
    path: Optional[str] = None


# ==================== 조회 ====================

class QueryResponse(BaseModel):
    kind: str
    result: Dict[str, Any]
