"""
REST API 라우터 / 작업 관리자 테스트 스크립트 (서버 없이 핸들러 직접 호출)
"""
import asyncio
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from fastapi import BackgroundTasks, HTTPException

import api_server
import renderer
from api.job_manager import JobManager
from api.models import ExportRequest, JobStatus, RenderRequest, VerifyRequest
from api.query_router import export_artifact, query, render_artifact
from api.verify_router import _run_verify, checks, verify


def expect_http(coro, status: int):
    try:
        asyncio.run(coro)
        assert False, f"HTTP {status} 가 발생하지 않음"
    except HTTPException as e:
        assert e.status_code == status, e.status_code


def test_job_manager_lifecycle():
    """queued -> running -> completed, 삭제"""
    print("=" * 60)
    print("작업 관리자 테스트")
    print("=" * 60)
    manager = JobManager()
    manager.clear()
    assert manager is JobManager()

    job_id = manager.create_job("verify", {"checks": []})
    assert manager.get_job(job_id)["status"] == JobStatus.QUEUED
    assert not manager.is_deletable(job_id)
    assert not manager.delete_job(job_id)

    manager.start_job(job_id)
    assert manager.get_job(job_id)["status"] == JobStatus.RUNNING
    manager.complete_job(job_id, {"passed": 1, "failed": 0}, {"checks": []})
    job = manager.get_job(job_id)
    assert job["status"] == JobStatus.COMPLETED and job["result"] == {"checks": []}
    assert manager.delete_job(job_id)
    assert manager.get_job(job_id) is None

    failed = manager.create_job("verify", {})
    manager.fail_job(failed, "boom")
    assert manager.get_job(failed)["error_message"] == "boom"
    assert manager.is_deletable(failed)
    manager.clear()
    print("✅ 작업 상태 전이")


def test_verify_endpoint():
    """POST /verify 와 백그라운드 실행, /jobs 조회"""
    print("\n검증 API 테스트")
    JobManager().clear()
    tasks = BackgroundTasks()
    response = asyncio.run(verify(VerifyRequest(checks=["root-counts"]), tasks))
    assert response.status == JobStatus.QUEUED
    assert len(tasks.tasks) == 1

    _run_verify(response.job_id, ["root-counts"], False, 1)
    status = asyncio.run(api_server.get_job_status(response.job_id))
    assert status.status == JobStatus.COMPLETED
    assert status.stats == {"passed": 1, "failed": 0}
    assert status.result["checks"][0]["id"] == "root-counts"

    anchored = asyncio.run(verify(VerifyRequest(checks=["thm:T-graph7"]), BackgroundTasks()))
    assert anchored.status == JobStatus.QUEUED
    _run_verify(anchored.job_id, ["thm:T-graph7"], False, 1)
    report = asyncio.run(api_server.get_job_status(anchored.job_id)).result
    assert report["checks"][0]["id"] == "t-graph-e7"
    assert "thm:T-graph7" in report["checks"][0]["anchors"]
    expect_http(verify(VerifyRequest(checks=["thm:nope"]), BackgroundTasks()), 400)

    listing = asyncio.run(api_server.list_jobs())
    assert listing.total_jobs == 2

    expect_http(verify(VerifyRequest(checks=["nope"]), BackgroundTasks()), 400)
    expect_http(api_server.get_job_status("missing"), 404)
    assert asyncio.run(api_server.delete_job(response.job_id))["job_id"] == response.job_id
    expect_http(api_server.delete_job(response.job_id), 404)

    listed = asyncio.run(checks())
    assert listed.total == len(listed.checks) > 0
    assert any("thm:T-graph7" in info.anchors for info in listed.checks)
    JobManager().clear()
    print("✅ 검증 작업 생성/완료/삭제")


def test_running_job_not_deletable():
    """실행 중 작업 삭제는 400"""
    manager = JobManager()
    manager.clear()
    job_id = manager.create_job("verify", {})
    manager.start_job(job_id)
    expect_http(api_server.delete_job(job_id), 400)
    manager.clear()
    print("✅ 실행 중 작업 보호")


def test_artifact_endpoints():
    """렌더링 / 익스포트 / 조회 엔드포인트"""
    print("\n산출물 API 테스트")
    rendered = asyncio.run(render_artifact(RenderRequest(target="cube_corner", format="ascii", highlight="021")))
    assert "@021" in rendered.content and rendered.path is None
    expect_http(render_artifact(RenderRequest(target="cube_corner", highlight="000")), 400)

    original = renderer.OUTPUT_DIR
    with tempfile.TemporaryDirectory() as tmp:
        renderer.OUTPUT_DIR = Path(tmp)
        try:
            saved = asyncio.run(render_artifact(RenderRequest(target="openmap7", format="ascii", save=True)))
        finally:
            renderer.OUTPUT_DIR = original
        assert Path(saved.path).read_text(encoding="utf-8") == saved.content

    exported = asyncio.run(export_artifact(ExportRequest(what="ideals", stratum=7)))
    assert exported.document["data"]["count"] == 56
    expect_http(export_artifact(ExportRequest(what="map", system="e8")), 400)

    answer = asyncio.run(query("image", ["2234321"], "e7", None))
    assert answer.result["image"] == "330"
    expect_http(query("twist", ["4"], "e7", None), 400)
    print("✅ render / export / query")


if __name__ == "__main__":
    tests = [
        test_job_manager_lifecycle,
        test_verify_endpoint,
        test_running_job_not_deletable,
        test_artifact_endpoints,
    ]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError as e:
            failed += 1
            print(f"❌ {test.__name__} 실패: {e}")
    print("\n" + "=" * 60)
    print("✅ 모든 테스트 통과!" if not failed else f"❌ 실패 {failed}건")
    print("=" * 60)
    sys.exit(0 if not failed else 1)
