"""
그림 렌더링 모듈

정육면체 모서리(Γ7⁺, h7 숫자 포함), 정사각 격자(Γ6⁺), 하세 도표,
디킨 도표, T-그래프를 SVG / ASCII / DOT / JSON 으로 출력합니다.

배치 규칙:
- cube_corner / openmap7: 면 a, b, c (0 인 좌표) 를 왼쪽부터, 면 안에서 행/열 = 나머지 두 자릿수 1..3
- square: 행 = (x1, x2), 열 = (x3, x4), 각각 11, 12, 21, 22 순
- hasse: 높이가 높을수록 위, 같은 높이는 계수 사전식 순
- 하이라이트: 격자/그래프 대상은 링크 집합, 하세 대상은 아래 집합, 디킨 대상은 이웃 (RenderSpec 참고)

같은 입력에 대해 출력 바이트는 항상 같습니다.
"""
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple
from xml.sax.saxutils import escape

from config import (
    DEFAULT_SYSTEM,
    OUTPUT_DIR,
    SVG_CELL_SIZE,
    SVG_FONT_FAMILY,
    SVG_HIGHLIGHT_COLOR,
    SVG_ORIGIN_COLOR,
)
from e6_model import get_e6_model
from e7_model import FACES, get_e7_model
from fp_space import FpSpaceError
from ideals import open_map
from logger import logger
from root_core import (
    RootSystemError,
    format_coeffs,
    hasse,
    height,
    pad,
    parse_coeffs,
    strata,
    system_from_name,
)

TARGETS = ("cube_corner", "square", "hasse", "openmap7", "dynkin", "tgraph")
FORMATS = ("svg", "ascii", "dot", "json")
EXTENSIONS = {"svg": "svg", "ascii": "txt", "dot": "dot", "json": "json"}


class RenderError(ValueError):
    """렌더링 요청 오류"""


@dataclass
class RenderSpec:
    """
    렌더링 요청

    highlight 의 의미는 대상마다 다릅니다:
    - cube_corner, openmap7: Γ7⁺ 벡터 라벨 (예: 021), 𝓛(x) ∩ Γ7⁺ 를 칠함
    - square: Γ6⁺ 벡터 라벨 (예: 11122), 𝓛(x) ∩ Γ6⁺ 를 칠함
    - tgraph: 공간의 벡터 라벨, T-그래프 링크 𝓛(x) 를 칠함
    - hasse: 층의 루트 계수 (짧으면 0 으로 채움), 그 루트 이하의 아래 집합을 칠함
    - dynkin: 정점 번호 (0 = 아핀), 이웃 정점을 칠함
    렌더링 집합에 없는 highlight 는 RenderError.
    """
    target: str
    format: str = "svg"
    system: str = DEFAULT_SYSTEM
    stratum: Optional[int] = None
    highlight: Optional[str] = None

    def validate(self):
        if self.target not in TARGETS:
            raise RenderError(f"알 수 없는 렌더링 대상: {self.target} (가능: {', '.join(TARGETS)})")
        if self.format not in FORMATS:
            raise RenderError(f"알 수 없는 출력 형식: {self.format} (가능: {', '.join(FORMATS)})")

    def default_filename(self) -> str:
        parts = [self.target]
        if self.target in ("hasse", "dynkin", "tgraph"):
            parts.append(self.system.lower())
        if self.stratum is not None:
            parts.append(f"s{self.stratum}")
        if self.highlight:
            parts.append(self.highlight)
        return "_".join(parts) + "." + EXTENSIONS[self.format]


@dataclass
class SceneNode:
    key: str
    label: str
    col: float
    row: float
    shaded: bool = False
    origin: bool = False
    note: str = ""


@dataclass
class Scene:
    """형식과 무관한 중간 표현 (노드 순서 = 출력 순서)"""
    title: str
    nodes: List[SceneNode]
    edges: List[Tuple[str, str]] = field(default_factory=list)
    grid: bool = False
    directed: bool = False
    dashed: List[Tuple[str, str]] = field(default_factory=list)
    panels: List[Tuple[str, float]] = field(default_factory=list)

    def node_ids(self) -> Dict[str, str]:
        return {node.key: f"n{k}" for k, node in enumerate(self.nodes)}

    @property
    def shaded_count(self) -> int:
        return sum(1 for node in self.nodes if node.shaded)


# ==================== 장면 구성 ====================

def _require_member(key: Optional[str], members, what: str):
    if key is not None and key not in members:
        raise RenderError(f"하이라이트 {key} 가 렌더링 집합({what})에 없습니다")


def _cube_scene(highlight: Optional[str], title: str = "Γ7⁺ 정육면체 모서리", notes=None) -> Scene:
    model = get_e7_model()
    labels = {x.label: x for x in model.gamma7}
    _require_member(highlight, labels, "Γ7⁺")
    shaded: FrozenSet = frozenset()
    if highlight:
        shaded = model.link(labels[highlight]) & model.gamma_s[7]
    nodes = []
    for x in sorted(model.gamma7, key=model.cube_layout):
        face, row, col = model.cube_layout(x)
        offset = 4 * FACES.index(face)
        note = str(notes[x]) if notes else ""
        nodes.append(SceneNode(x.label, x.label, offset + col - 1, row - 1, x in shaded, x.label == highlight, note))
    panels = [(f"면 {face} ({face} = 0)", 4.0 * k) for k, face in enumerate(FACES)]
    return Scene(title, nodes, grid=True, panels=panels)


def _square_scene(highlight: Optional[str]) -> Scene:
    model = get_e6_model()
    labels = {x.label: x for x in model.gamma6}
    _require_member(highlight, labels, "Γ6⁺")
    shaded: FrozenSet = frozenset()
    if highlight:
        shaded = model.link3(labels[highlight]) & model.gamma_s[6]
    nodes = []
    for x in sorted(model.gamma6, key=model.square_layout):
        row, col = model.square_layout(x)
        nodes.append(SceneNode(x.label, x.label, col, row, x in shaded, x.label == highlight))
    return Scene("Γ6⁺ 정사각 격자", nodes, grid=True)


def _layered(elements, graph, title: str, highlight: Optional[str], leq) -> Scene:
    """높이별 층으로 배치한 하세 도표 장면"""
    keys = {format_coeffs(b): b for b in elements}
    _require_member(highlight, keys, title)
    below = set()
    if highlight:
        top = keys[highlight]
        below = {b for b in elements if leq(b, top)}

    levels: Dict[int, List] = {}
    for beta in sorted(elements, key=lambda b: (height(b), b)):
        levels.setdefault(height(beta), []).append(beta)
    widest = max(len(level) for level in levels.values())
    max_height = max(levels)

    nodes = []
    for h in sorted(levels):
        level = levels[h]
        shift = (widest - len(level)) / 2
        for k, beta in enumerate(level):
            key = format_coeffs(beta)
            nodes.append(SceneNode(key, key, shift + k, max_height - h, beta in below, key == highlight))

    edges = []
    for a, b in graph.edges:
        lower, upper = (a, b) if height(a) < height(b) else (b, a)
        edges.append((format_coeffs(lower), format_coeffs(upper)))
    return Scene(title, nodes, sorted(edges), directed=True)


def _hasse_scene(system_name: str, s: Optional[int], highlight: Optional[str]) -> Scene:
    system = system_from_name(system_name)
    if system.family != "E":
        raise RenderError(f"하세 도표 렌더링은 E 계열만 지원합니다: {system.name}")
    s = s if s is not None else system.rank
    layers = strata(system)
    if s not in layers:
        raise RenderError(f"{system.name} 에 층 {s} 가 없습니다")
    elements = layers[s]
    if highlight:
        highlight = format_coeffs(pad(parse_coeffs(highlight), system.rank))
    return _layered(elements, hasse(system, elements), f"H{s} ({system.name})", highlight, system.leq)


def _openmap_scene(highlight: Optional[str]) -> Scene:
    """f(β) 칸에 h7(β) 를 적은 정육면체 모서리"""
    model = get_e7_model()
    h = open_map(7)
    notes = {model.f(beta): h[beta] for beta in model.strata[7]}
    return _cube_scene(highlight, "h7 정육면체 모서리", notes)


def _dynkin_scene(system_name: str, highlight: Optional[str]) -> Scene:
    system = system_from_name(system_name)
    graph = system.affine_dynkin_graph()
    _require_member(highlight, {str(v) for v in graph}, f"{system.name} 디킨 정점")

    if system.family == "E":
        chain = [v for v in (1, 3, 4, 5, 6, 7, 8) if v <= system.rank]
        positions = {v: (float(k), 1.0) for k, v in enumerate(chain)}
        positions[2] = (2.0, 0.0)
    else:
        positions = {v: (float(v - 1), 1.0) for v in range(1, system.rank + 1)}
        if system.family == "D":
            positions[system.rank] = (float(system.rank - 3), 0.0)
    # 아핀 정점은 이웃 아래 (α2 에 붙으면 오른쪽 옆)
    if not graph[0]:
        positions[0] = (0.0, 2.0)
    else:
        anchor = min(graph[0])
        x, y = positions[anchor]
        positions[0] = (x + 1.0, y) if y == 0.0 else (x, y + 1.0)

    shaded = {str(v) for v in graph[int(highlight)]} if highlight else set()
    nodes = [
        SceneNode(str(v), "α̂" if v == 0 else f"α{v}", positions[v][0], positions[v][1], str(v) in shaded, str(v) == highlight)
        for v in sorted(graph)
    ]
    edges = sorted((str(min(a, b)), str(max(a, b))) for a, b in graph.edges if 0 not in (a, b))
    dashed = sorted(("0", str(v)) for v in graph[0])
    return Scene(f"{system.name} 아핀 디킨 도표", nodes, edges, dashed=dashed)


def _tgraph_scene(system_name: str, highlight: Optional[str]) -> Scene:
    name = system_name.lower()
    if name == "e7":
        model = get_e7_model()
        graph, link, width = model.t_graph(), model.link, 8
    elif name == "e6":
        model = get_e6_model()
        graph, link, width = model.t_graph3(), model.link3, 27
    else:
        raise RenderError(f"T-그래프는 e7 (F³) 또는 e6 ((Z/3)^5) 만 지원합니다: {system_name}")
    points = sorted(graph)
    labels = {x.label: x for x in points}
    _require_member(highlight, labels, "T-그래프 정점")
    shaded = link(labels[highlight]) if highlight else frozenset()
    nodes = [
        SceneNode(x.label, x.label, k % width, k // width, x in shaded, x.label == highlight)
        for k, x in enumerate(points)
    ]
    edges = sorted(tuple(sorted((a.label, b.label))) for a, b in graph.edges)
    return Scene(f"T-그래프 ({name})", nodes, edges)


def build_scene(spec: RenderSpec) -> Scene:
    spec.validate()
    try:
        if spec.target == "cube_corner":
            return _cube_scene(spec.highlight)
        if spec.target == "square":
            return _square_scene(spec.highlight)
        if spec.target == "hasse":
            return _hasse_scene(spec.system, spec.stratum, spec.highlight)
        if spec.target == "openmap7":
            return _openmap_scene(spec.highlight)
        if spec.target == "dynkin":
            return _dynkin_scene(spec.system, spec.highlight)
        return _tgraph_scene(spec.system, spec.highlight)
    except (RootSystemError, FpSpaceError) as e:
        raise RenderError(str(e))


# ==================== SVG ====================

class SvgCanvas:
    """문자열을 이어 붙여 SVG 문서를 만드는 빌더"""

    def __init__(self):
        self.svg = ""

    def header(self, width: float, height: float):
        self.svg += (
            '<?xml version="1.0" standalone="no"?>\n'
            f'<svg version="1.1" width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.0f} {height:.0f}" xmlns="http://www.w3.org/2000/svg" '
            f'font-family="{SVG_FONT_FAMILY}" font-size="11">\n'
        )

    def group_start(self, attr: Dict[str, str]):
        g_attr = [f'{key}="{value}"' for key, value in attr.items() if key in ("id", "class")]
        self.svg += f'<g {" ".join(g_attr)}>\n'
        if "title" in attr:
            self.svg += f'<title>{escape(attr["title"])}</title>\n'

    def group_end(self):
        self.svg += "</g>\n"

    def filled_rectangle(self, x1: float, y1: float, x2: float, y2: float, fill: str, extra: str = ""):
        self.svg += (
            f'<rect x="{x1:.1f}" y="{y1:.1f}" width="{x2 - x1:.1f}" height="{y2 - y1:.1f}" '
            f'fill="{fill}" stroke="#555555" {extra}/>\n'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float, extra: str = ""):
        self.svg += f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="#888888" {extra}/>\n'

    def circle(self, x: float, y: float, r: float, fill: str, extra: str = ""):
        self.svg += f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{r:.1f}" fill="{fill}" stroke="#555555" {extra}/>\n'

    def string_ttf(self, node_id: Optional[str], x: float, y: float, string: str, extra: str = ""):
        id_attr = f'id="{node_id}" ' if node_id else ""
        self.svg += f'<text {id_attr}x="{x:.1f}" y="{y:.1f}" text-anchor="middle" {extra}>{escape(string)}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


def _fill(node: SceneNode) -> str:
    if node.origin:
        return SVG_ORIGIN_COLOR
    return SVG_HIGHLIGHT_COLOR if node.shaded else "#ffffff"


def to_svg(scene: Scene) -> str:
    cell = SVG_CELL_SIZE
    margin = cell
    cols = max(node.col for node in scene.nodes) + 1
    rows = max(node.row for node in scene.nodes) + 1
    canvas = SvgCanvas()
    canvas.header(2 * margin + cols * cell, 2 * margin + rows * cell)
    canvas.string_ttf(None, margin + cols * cell / 2, margin / 2, scene.title, 'font-size="14"')

    def centre(node: SceneNode) -> Tuple[float, float]:
        return margin + (node.col + 0.5) * cell, margin + (node.row + 0.5) * cell

    ids = scene.node_ids()
    by_key = {node.key: node for node in scene.nodes}

    for name, offset in scene.panels:
        canvas.string_ttf(None, margin + (offset + 1.5) * cell, margin - 6, name)

    canvas.group_start({"id": "edges"})
    for a, b in scene.edges:
        (x1, y1), (x2, y2) = centre(by_key[a]), centre(by_key[b])
        canvas.line(x1, y1, x2, y2)
    for a, b in scene.dashed:
        (x1, y1), (x2, y2) = centre(by_key[a]), centre(by_key[b])
        canvas.line(x1, y1, x2, y2, 'stroke-dasharray="4 3"')
    canvas.group_end()

    canvas.group_start({"id": "nodes"})
    for node in scene.nodes:
        x, y = centre(node)
        if scene.grid:
            canvas.filled_rectangle(x - cell / 2, y - cell / 2, x + cell / 2, y + cell / 2, _fill(node))
        else:
            canvas.circle(x, y, cell / 4, _fill(node))
        canvas.string_ttf(ids[node.key], x, y + 4, node.label)
        if node.note:
            canvas.string_ttf(None, x + cell / 3, y - cell / 4, node.note, 'font-weight="bold"')
    canvas.group_end()
    return canvas.get_svg()


# ==================== ASCII ====================

def _marked(node: SceneNode) -> str:
    mark = "@" if node.origin else "*" if node.shaded else " "
    text = mark + node.label
    return f"{text}:{node.note}" if node.note else text


def to_ascii(scene: Scene) -> str:
    lines = [scene.title, "=" * max(20, len(scene.title))]
    if scene.grid:
        width = max(len(_marked(node)) for node in scene.nodes) + 1
        cols = int(max(node.col for node in scene.nodes)) + 1
        rows = int(max(node.row for node in scene.nodes)) + 1
        cells = {(int(node.row), int(node.col)): _marked(node) for node in scene.nodes}
        if scene.panels:
            lines.append("".join(name.ljust(4 * width) for name, _ in scene.panels).rstrip())
        for r in range(rows):
            lines.append("".join(cells.get((r, c), "").ljust(width) for c in range(cols)).rstrip())
    else:
        rows: Dict[float, List[SceneNode]] = {}
        for node in scene.nodes:
            rows.setdefault(node.row, []).append(node)
        for row in sorted(rows):
            lines.append(" ".join(_marked(node) for node in sorted(rows[row], key=lambda n: n.col)))
        lines.append("")
        arrow = " -> " if scene.directed else " -- "
        for a, b in scene.edges:
            lines.append(f"{a}{arrow}{b}")
        for a, b in scene.dashed:
            lines.append(f"{a} .. {b}")
    lines.append("")
    lines.append("@ = 기준 정점, * = 칠한 정점")
    return "\n".join(lines) + "\n"


# ==================== DOT ====================

class Formatter:
    """DOT 정점/변 속성"""

    def __init__(self, scene: Scene):
        self.nodes = {node.key: node for node in scene.nodes}
        self.dashed = set(scene.dashed)

    def vertex_attributes(self, key: str) -> List[str]:
        node = self.nodes[key]
        label = f"{node.label}\\n{node.note}" if node.note else node.label
        attrs = [f'label="{label}"']
        if node.shaded or node.origin:
            attrs += ["style=filled", f'fillcolor="{_fill(node)}"']
        return attrs

    def edge_attributes(self, s: str, t: str) -> List[str]:
        return ["style=dashed"] if (s, t) in self.dashed else []


def to_dot(scene: Scene) -> str:
    formatter = Formatter(scene)
    ids = scene.node_ids()
    keyword, arrow = ("digraph", "->") if scene.directed else ("graph", "--")
    result = [f"{keyword} G {{", f'    label="{scene.title}";']
    if scene.directed:
        result.append("    rankdir=BT;")

    for node in scene.nodes:
        result.append(f"    {ids[node.key]} [{','.join(formatter.vertex_attributes(node.key))}];")
    for s, t in scene.edges + scene.dashed:
        line = f"    {ids[s]} {arrow} {ids[t]}"
        attrs = formatter.edge_attributes(s, t)
        if attrs:
            line += f" [{','.join(attrs)}]"
        result.append(line + ";")
    result.append("}")
    return "\n".join(result) + "\n"


# ==================== JSON ====================

def to_json(scene: Scene, spec: RenderSpec) -> str:
    ids = scene.node_ids()
    data = {
        "kind": "render",
        "params": asdict(spec),
        "title": scene.title,
        "shaded_count": scene.shaded_count,
        "nodes": [dict(id=ids[node.key], **asdict(node)) for node in scene.nodes],
        "edges": [[ids[a], ids[b]] for a, b in scene.edges],
        "dashed": [[ids[a], ids[b]] for a, b in scene.dashed],
    }
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


# ==================== 진입점 ====================

def render(spec: RenderSpec) -> str:
    """렌더링 결과 문자열"""
    scene = build_scene(spec)
    if spec.format == "svg":
        return to_svg(scene)
    if spec.format == "ascii":
        return to_ascii(scene)
    if spec.format == "dot":
        return to_dot(scene)
    return to_json(scene, spec)


def render_to_file(spec: RenderSpec, out: Optional[str] = None) -> Path:
    """렌더링 후 파일 저장 (상대 경로는 OUTPUT_DIR 기준)"""
    return write_rendered(spec, render(spec), out)


def write_rendered(spec: RenderSpec, text: str, out: Optional[str] = None) -> Path:
    """이미 렌더링한 문자열 저장"""
    path = Path(out) if out else Path(spec.default_filename())
    if not path.is_absolute():
        path = OUTPUT_DIR / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.log_artifact(f"render {spec.target} ({spec.format})", str(path))
    return path
