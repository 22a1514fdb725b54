"""
비동기 작업 상태 관리자 (In-Memory)

검증 작업은 완료/실패 후에도 리포트 조회를 위해 메모리에 남으며,
DELETE /jobs/{job_id} 로 지웁니다.
"""
import uuid
import threading
from datetime import datetime
from typing import Dict, Any, Optional, List

from api.models import JobStatus
from logger import logger


class JobManager:
    """비동기 작업 상태를 메모리에서 관리 (싱글턴)"""

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        with cls._lock:
            if cls._instance is None:
                cls._instance = super().__new__(cls)
                cls._instance._storage: Dict[str, Dict[str, Any]] = {}
            return cls._instance

    def create_job(self, job_type: str, params: Dict[str, Any]) -> str:
        """새 작업 생성 후 job_id 반환"""
        job_id = str(uuid.uuid4())
        with self._lock:
            self._storage[job_id] = {
                "job_id": job_id,
                "job_type": job_type,
                "status": JobStatus.QUEUED,
                "params": params,
                "created_at": datetime.now().isoformat(),
                "started_at": None,
                "completed_at": None,
                "error_message": None,
                "stats": None,
                "result": None,
            }
        return job_id

    def get_job(self, job_id: str) -> Optional[Dict[str, Any]]:
        return self._storage.get(job_id)

    def list_jobs(self) -> List[Dict[str, Any]]:
        jobs = list(self._storage.values())
        jobs.sort(key=lambda x: x["created_at"], reverse=True)
        return jobs

    def start_job(self, job_id: str):
        job = self._storage.get(job_id)
        if job:
            job["status"] = JobStatus.RUNNING
            job["started_at"] = datetime.now().isoformat()

    def complete_job(self, job_id: str, stats: Optional[Dict[str, Any]] = None,
                     result: Optional[Dict[str, Any]] = None):
        """작업 완료 처리 (리포트 보관)"""
        job = self._storage.get(job_id)
        if job:
            job["status"] = JobStatus.COMPLETED
            job["completed_at"] = datetime.now().isoformat()
            job["stats"] = stats
            job["result"] = result
            logger.info(f"[Job {job_id}] 완료 | type={job['job_type']}, stats={stats}")

    def fail_job(self, job_id: str, error_message: str):
        """작업 실패 처리"""
        job = self._storage.get(job_id)
        if job:
            job["status"] = JobStatus.FAILED
            job["completed_at"] = datetime.now().isoformat()
            job["error_message"] = error_message
            logger.warning(f"[Job {job_id}] 실패 | type={job['job_type']}, error={error_message}")

    def delete_job(self, job_id: str) -> bool:
        with self._lock:
            job = self._storage.get(job_id)
            if not job or job["status"] in (JobStatus.QUEUED, JobStatus.RUNNING):
                return False
            del self._storage[job_id]
            return True

    def is_deletable(self, job_id: str) -> bool:
        job = self._storage.get(job_id)
        if not job:
            return False
        return job["status"] not in (JobStatus.QUEUED, JobStatus.RUNNING)

    def clear(self):
        """모든 작업 삭제 (테스트용)"""
        with self._lock:
            self._storage.clear()
