"""
JSON 익스포트 모듈

모든 익스포트 문서는 {"kind", "params", "data"} 구조이며,
params 만으로 같은 문서를 다시 만들 수 있습니다 (reimport 로 확인).
"""
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Union

from compression import CompressionError, CompressionMap, canonical_compression, map_from_dict
from config import DEFAULT_SYSTEM, OUTPUT_DIR
from e6_model import get_e6_model
from e7_model import get_e7_model
from fp_space import FpSpaceError
from ideals import IdealError, enumerate_ideals, get_poset, open_map, psi
from logger import logger
from root_core import RootSystemError, format_coeffs, strata, system_from_name

KINDS = ("roots", "map", "strata", "ideals", "group")


class ExportError(ValueError):
    """익스포트 요청/파일 오류"""


@dataclass
class ExportSpec:
    what: str
    system: str = DEFAULT_SYSTEM
    p: Optional[int] = None
    stratum: Optional[int] = None

    def default_filename(self) -> str:
        parts = [self.what, self.system.lower()]
        if self.p is not None:
            parts.append(f"p{self.p}")
        if self.stratum is not None:
            parts.append(f"s{self.stratum}")
        return "_".join(parts) + ".json"


def compression_for(system_name: str, p: Optional[int] = None) -> CompressionMap:
    """e7 (p = 2) 와 e6 (p = 3) 는 고정 사상, 그 외는 표준 몫 압축"""
    name = system_name.lower()
    if name == "e7" and p in (None, 2):
        return get_e7_model().map
    if name == "e6" and p in (None, 3):
        return get_e6_model().map
    if p is None:
        raise ExportError(f"{system_name}: 표준 몫 압축에는 --p 가 필요합니다")
    return canonical_compression(system_from_name(system_name), p)


def _strata_data(system_name: str) -> dict:
    system = system_from_name(system_name)
    layers = strata(system)
    cmap = None
    if system.name in ("E7", "E6"):
        cmap = compression_for(system.name)
    result = {"system": system.name, "strata": []}
    for s, roots in layers.items():
        entry = {"s": s, "size": len(roots), "roots": [format_coeffs(b) for b in roots]}
        if cmap is not None:
            entry["images"] = [cmap.table[b].label for b in roots]
        result["strata"].append(entry)
    if system.name == "E7":
        model = get_e7_model()
        result["anchors"] = {str(s): model.z[s].label for s in sorted(model.z)}
        result["double_sixes"] = [ds.to_dict() for ds in model.double_sixes()]
    return result


def _ideals_data(s: int) -> dict:
    poset = get_poset(s)
    ideals = enumerate_ideals(s)
    data = {"s": s, "count": len(ideals)}
    if 3 <= s <= 7:
        h = open_map(s)
        data["open_map"] = h.to_dict()["table"]
        data["ideals"] = [dict(J.to_dict(poset), psi=format_coeffs(psi(s, J))) for J in ideals]
    else:
        data["ideals"] = [J.to_dict(poset) for J in ideals]
    return data


def _group_data(system_name: str) -> dict:
    name = system_name.lower()
    if name == "e7":
        model = get_e7_model()
        points = [x.label for x in model.gamma7]

        def as_labels(perm):
            return [points[k] for k in perm]

        return {
            "points": points,
            "orders": dict(model.symmetry_groups(), weyl_e6=len(model.weyl_e6_closure())),
            "twists": {str(i): as_labels(model.transported_twist(i)) for i in (3, 4, 6, 7)},
            "listed": [as_labels(perm) for perm in model.listed_symmetries()],
            "reflections": {
                str(i): as_labels(model.reflection_permutation(tuple(1 if k == i - 1 else 0 for k in range(7))))
                for i in range(1, 7)
            },
        }
    if name == "e6":
        model = get_e6_model()
        points = [x.label for x in model.gamma6]
        return {
            "points": points,
            "twists": {str(i): [points[k] for k in model.transported_twist(i)] for i in (3, 4, 5, 6)},
        }
    raise ExportError(f"대칭군 익스포트는 e7, e6 만 지원합니다: {system_name}")


def export_data(spec: ExportSpec) -> dict:
    """익스포트 문서 생성"""
    if spec.what not in KINDS:
        raise ExportError(f"알 수 없는 익스포트 종류: {spec.what} (가능: {', '.join(KINDS)})")
    try:
        if spec.what == "roots":
            data = system_from_name(spec.system).to_dict()
        elif spec.what == "map":
            data = compression_for(spec.system, spec.p).to_dict()
        elif spec.what == "strata":
            data = _strata_data(spec.system)
        elif spec.what == "ideals":
            data = _ideals_data(spec.stratum if spec.stratum is not None else 7)
        else:
            data = _group_data(spec.system)
    except (RootSystemError, FpSpaceError, CompressionError, IdealError) as e:
        raise ExportError(str(e))
    return {"kind": spec.what, "params": asdict(spec), "data": data}


def dumps(document: dict) -> str:
    return json.dumps(document, ensure_ascii=False, indent=2) + "\n"


def export_to_file(spec: ExportSpec, out: Optional[str] = None) -> Path:
    """익스포트 후 파일 저장 (상대 경로는 OUTPUT_DIR 기준)"""
    document = export_data(spec)
    path = Path(out) if out else Path(spec.default_filename())
    if not path.is_absolute():
        path = OUTPUT_DIR / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document), encoding="utf-8")
    logger.log_artifact(f"export {spec.what}", str(path))
    return path


def reimport(source: Union[str, Path, dict]) -> bool:
    """익스포트 문서를 params 로 다시 만들어 같은지 확인 (map 은 표로 재구성까지)"""
    if isinstance(source, dict):
        document = source
    else:
        try:
            document = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ExportError(f"익스포트 파일을 읽을 수 없습니다: {e}")
    try:
        spec = ExportSpec(**document["params"])
        kind = document["kind"]
    except (KeyError, TypeError) as e:
        raise ExportError(f"익스포트 문서 헤더 오류: {e}")
    if kind != spec.what:
        raise ExportError(f"kind ({kind}) 와 params.what ({spec.what}) 불일치")

    if kind == "map":
        try:
            rebuilt = map_from_dict(document["data"])
        except CompressionError as e:
            logger.warning(f"✗ 사상 재구성 실패: {e}")
            return False
        if rebuilt.to_dict()["table"] != document["data"]["table"]:
            return False
    return dumps(export_data(spec)) == dumps(document)
