"""
산출물/조회 API 라우터
- POST /artifacts/render : 그림 렌더링
- POST /artifacts/export : JSON 익스포트
- GET  /query/{kind}     : 단일 루트/벡터 조회
"""
from typing import List, Optional

from fastapi import APIRouter, HTTPException, Query

from config import DEFAULT_SYSTEM
from api.models import ExportRequest, ExportResponse, QueryResponse, RenderRequest, RenderResponse
from exporter import ExportError, ExportSpec, export_data, export_to_file
from logger import logger
from queries import QueryError, run_query
from renderer import RenderError, RenderSpec, render, write_rendered

router = APIRouter(tags=["Artifacts"])


@router.post("/artifacts/render", response_model=RenderResponse, summary="그림 렌더링")
async def render_artifact(request: RenderRequest):
    """cube_corner / square / hasse / openmap7 / dynkin / tgraph 를 렌더링합니다."""
    spec = RenderSpec(
        target=request.target,
        format=request.format,
        system=request.system,
        stratum=request.stratum,
        highlight=request.highlight,
    )
    try:
        content = render(spec)
        path = str(write_rendered(spec, content)) if request.save else None
    except RenderError as e:
        logger.warning(f"[API] 렌더링 요청 오류: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return RenderResponse(target=spec.target, format=spec.format, content=content, path=path)


@router.post("/artifacts/export", response_model=ExportResponse, summary="JSON 익스포트")
async def export_artifact(request: ExportRequest):
    """roots / map / strata / ideals / group 문서를 생성합니다."""
    spec = ExportSpec(what=request.what, system=request.system, p=request.p, stratum=request.stratum)
    try:
        document = export_data(spec)
        path = str(export_to_file(spec)) if request.save else None
    except ExportError as e:
        logger.warning(f"[API] 익스포트 요청 오류: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return ExportResponse(kind=spec.what, document=document, path=path)


@router.get("/query/{kind}", response_model=QueryResponse, tags=["Query"], summary="단일 루트/벡터 조회")
async def query(
    kind: str,
    arg: List[str] = Query(..., description="루트 계수 / 벡터 (twist 는 정점 번호, 루트 순)"),
    system: str = Query(default=DEFAULT_SYSTEM, description="루트 시스템"),
    p: Optional[int] = Query(default=None, description="법 p (image)"),
):
    """예: `/query/image?arg=1122111&system=e7`, `/query/twist?arg=4&arg=0112221`"""
    try:
        result = run_query(kind, arg, system, p)
    except QueryError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return QueryResponse(kind=kind, result=result)
