"""
단일 루트/벡터에 대한 조회 (CLI query 와 API /query 공용)
"""
from typing import Optional

from compression import CompressionError
from e6_model import get_e6_model
from e7_model import ModelError, get_e7_model
from exporter import ExportError, compression_for
from fp_space import FpSpaceError
from root_core import (
    RootSystemError,
    ambient_coordinates,
    dynkin_twist,
    format_coeffs,
    parse_coeffs,
    stratum,
    system_from_name,
    tilde,
    zeta,
)

QUERIES = ("image", "preimage", "stratum", "link", "layout", "twist")

DOMAIN_ERRORS = (RootSystemError, FpSpaceError, CompressionError, ModelError, ExportError)


class QueryError(ValueError):
    """조회 요청 오류"""


def _model(system_name: str):
    name = system_name.lower()
    if name == "e7":
        return get_e7_model()
    if name == "e6":
        return get_e6_model()
    raise QueryError(f"벡터 조회는 e7, e6 만 지원합니다: {system_name}")


def query_image(root: str, system_name: str, p: Optional[int] = None) -> dict:
    cmap = compression_for(system_name, p)
    beta = cmap.system.check_vector(parse_coeffs(root))
    if not cmap.system.is_root(beta):
        raise QueryError(f"{cmap.system.name} 의 루트가 아닙니다: {root}")
    image = cmap.apply(beta)
    return {
        "system": cmap.system.name,
        "p": cmap.p,
        "root": format_coeffs(beta),
        "image": image.label,
        "in_gamma": cmap.in_gamma(image),
    }


def query_preimage(vector: str, system_name: str) -> dict:
    model = _model(system_name)
    x = model.vector(vector)
    beta = model.preimage(x)
    return {
        "system": model.system.name,
        "vector": x.label,
        "root": format_coeffs(beta),
        "stratum": stratum(beta) if any(beta) else None,
    }


def query_stratum(root: str, system_name: str) -> dict:
    system = system_from_name(system_name)
    beta = system.check_vector(parse_coeffs(root))
    if system.family != "E" or not system.is_positive(beta):
        raise QueryError(f"E 계열의 양의 루트가 아닙니다: {root} ({system.name})")
    s = stratum(beta)
    result = {
        "system": system.name,
        "root": format_coeffs(beta),
        "stratum": s,
        "height": sum(beta),
        "ambient_x2": list(ambient_coordinates(beta)),
    }
    if system.rank == 7:
        result["zeta"] = format_coeffs(zeta(s))
        result["tilde"] = format_coeffs(tilde(beta))
    return result


def query_link(vector: str, system_name: str) -> dict:
    model = _model(system_name)
    x = model.vector(vector)
    if system_name.lower() == "e7":
        link, top = model.link(x), model.gamma_s[7]
    else:
        link, top = model.link3(x), model.gamma_s[6]
    return {
        "system": model.system.name,
        "vector": x.label,
        "link": sorted(y.label for y in link),
        "link_top_stratum": sorted(y.label for y in link & top),
    }


def query_layout(vector: str, system_name: str) -> dict:
    model = _model(system_name)
    x = model.vector(vector)
    if system_name.lower() == "e7":
        face, row, col = model.cube_layout(x)
        return {"system": "E7", "vector": x.label, "face": face, "row": row, "col": col}
    row, col = model.square_layout(x)
    return {"system": "E6", "vector": x.label, "row": row, "col": col}


def query_twist(vertex: int, root: str, system_name: str) -> dict:
    system = system_from_name(system_name)
    twist = dynkin_twist(system, vertex)
    beta = system.check_vector(parse_coeffs(root))
    if not system.is_root(beta):
        raise QueryError(f"{system.name} 의 루트가 아닙니다: {root}")
    return {
        "system": system.name,
        "vertex": vertex,
        "root": format_coeffs(beta),
        "image": format_coeffs(twist.permutation()[beta]),
        "simple_images": [format_coeffs(img) for img in twist.images],
    }


def run_query(kind: str, args, system_name: str, p: Optional[int] = None) -> dict:
    """kind 와 위치 인자 목록으로 조회 실행"""
    if kind not in QUERIES:
        raise QueryError(f"알 수 없는 조회: {kind} (가능: {', '.join(QUERIES)})")
    expected = 2 if kind == "twist" else 1
    if len(args) != expected:
        raise QueryError(f"{kind} 조회는 인자 {expected}개가 필요합니다: {list(args)}")
    try:
        if kind == "image":
            return query_image(args[0], system_name, p)
        if kind == "preimage":
            return query_preimage(args[0], system_name)
        if kind == "stratum":
            return query_stratum(args[0], system_name)
        if kind == "link":
            return query_link(args[0], system_name)
        if kind == "layout":
            return query_layout(args[0], system_name)
        try:
            vertex = int(args[0])
        except ValueError:
            raise QueryError(f"정점 번호가 아닙니다: {args[0]}")
        return query_twist(vertex, args[1], system_name)
    except DOMAIN_ERRORS as e:
        raise QueryError(str(e))
