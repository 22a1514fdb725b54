"""
루트 시스템 압축 검증 도구 API 서버 실행 스크립트
"""
import sys
from pathlib import Path

# src 디렉토리를 Python 경로에 추가
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

if __name__ == "__main__":
    import uvicorn

    from config import API_HOST, API_PORT

    print("=" * 80)
    print("Root Compression Verify API 서버 v1.0")
    print("=" * 80)
    print(f"API 문서 : http://{API_HOST}:{API_PORT}/docs")
    print(f"API Redoc: http://{API_HOST}:{API_PORT}/redoc")
    print(f"헬스 체크: http://{API_HOST}:{API_PORT}/health")
    print("=" * 80)
    print()
    print("[엔드포인트]")
    print("  검증      : POST /verify, GET /verify/checks")
    print("  산출물    : POST /artifacts/render, POST /artifacts/export")
    print("  조회      : GET /query/{image|preimage|stratum|link|layout|twist}")
    print("  작업 관리 : GET /jobs, GET /jobs/{id}, DELETE /jobs/{id}")
    print("=" * 80)
    print()

    uvicorn.run(
        "api_server:app",
        host=API_HOST,
        port=API_PORT,
        reload=False,
        log_level="info",
    )
