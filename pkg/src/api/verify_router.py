"""
검증 API 라우터
- POST /verify        : 전수 검증 (비동기)
- GET  /verify/checks : 검증 항목 목록
"""
import traceback

from fastapi import APIRouter, HTTPException, BackgroundTasks

from api.models import CheckInfo, CheckListResponse, JobResponse, JobStatus, VerifyRequest
from api.job_manager import JobManager
from config import VERIFY_WORKERS
from logger import logger
from verifier import UnknownCheckError, build_report, list_checks, resolve_checks, run_checks

router = APIRouter(prefix="/verify", tags=["Verify"])
job_manager = JobManager()


def _run_verify(job_id: str, checks, timings: bool, workers: int):
    """백그라운드 검증 작업"""
    job_manager.start_job(job_id)
    try:
        results = run_checks(checks or None, workers=workers)
        report = build_report(results, timings=timings)
        stats = {"passed": report["passed"], "failed": report["failed"]}
        job_manager.complete_job(job_id, stats, report)
        logger.info(f"[API Job {job_id}] 검증 완료: {stats}")
    except Exception as e:
        job_manager.fail_job(job_id, str(e))
        logger.error(f"[API Job {job_id}] 검증 실패: {e}")
        logger.error(traceback.format_exc())


@router.post("", response_model=JobResponse, summary="전수 검증 (비동기)")
async def verify(request: VerifyRequest, background_tasks: BackgroundTasks):
    """
    선택한 검증 항목을 백그라운드에서 실행합니다.

    - **checks**: 검증 항목 ID 또는 앵커(thm:T-graph7 등) 목록 (비우면 전체)

    반환된 `job_id`로 `/jobs/{job_id}`에서 리포트를 조회할 수 있습니다.
    """
    try:
        resolve_checks(request.checks)
    except UnknownCheckError as e:
        raise HTTPException(status_code=400, detail=str(e))

    job_id = job_manager.create_job(job_type="verify", params=request.model_dump())
    background_tasks.add_task(
        _run_verify, job_id, request.checks, request.timings, request.workers or VERIFY_WORKERS
    )

    logger.info(f"[API] 검증 작업 생성: {job_id} (항목: {request.checks or '전체'})")
    return JobResponse(
        job_id=job_id,
        status=JobStatus.QUEUED,
        message="검증 작업이 큐에 추가되었습니다.",
        created_at=job_manager.get_job(job_id)["created_at"],
    )


@router.get("/checks", response_model=CheckListResponse, summary="검증 항목 목록")
async def checks():
    items = [
        CheckInfo(check_id=check_id, title=title, anchors=list(anchors))
        for check_id, title, anchors in list_checks()
    ]
    return CheckListResponse(total=len(items), checks=items)
