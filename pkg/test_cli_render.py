"""
CLI / 렌더링 / 익스포트 / 조회 테스트 스크립트
"""
import io
import json
import sys
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from exporter import ExportError, ExportSpec, export_data, export_to_file, reimport
from main import EXIT_OK, EXIT_USAGE, main
from queries import QueryError, run_query
from e7_model import get_e7_model
from ideals import open_map
from renderer import RenderError, RenderSpec, build_scene, render
from verifier import build_report, list_checks, resolve_checks, run_check, run_checks, UnknownCheckError


def run_cli(argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(argv)
    return code, buffer.getvalue()


def test_verify_cli():
    """verify --list, 일부 항목 실행, 알 수 없는 항목"""
    print("=" * 60)
    print("CLI 테스트")
    print("=" * 60)
    code, out = run_cli(["verify", "--list"])
    assert code == EXIT_OK
    ids = [check_id for check_id, _, _ in list_checks()]
    assert all(check_id in out for check_id in ids)

    code, out = run_cli(["verify", "root-counts", "strata", "--timings"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["passed"] == 2 and report["failed"] == 0
    assert [c["id"] for c in report["checks"]] == ["root-counts", "strata"]
    assert "seconds" in report["checks"][0]

    assert run_cli(["verify", "no-such-check"])[0] == EXIT_USAGE
    assert run_cli(["render", "no-such-target"])[0] == EXIT_USAGE
    assert run_cli([])[0] == EXIT_USAGE
    print("✅ verify 명령과 종료 코드")


def test_verifier_registry():
    """레지스트리 순서, 병렬 실행, 리포트"""
    results = run_checks(["strata", "root-counts"], workers=2)
    assert [r.check_id for r in results] == ["root-counts", "strata"]
    report = build_report(results)
    assert report["failed"] == 0
    assert "seconds" not in report["checks"][0]
    try:
        run_check("nope")
        assert False
    except UnknownCheckError:
        pass
    print("✅ 레지스트리 순서 유지")


def test_verify_by_anchor():
    """앵커로 검증 선택 (thm:T-graph7 -> t-graph-e7)"""
    code, out = run_cli(["verify", "thm:T-graph7"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert set(report) == {"checks", "passed", "failed"}
    assert report["passed"] == 1 and report["failed"] == 0
    check = report["checks"][0]
    assert set(check) == {"id", "title", "anchors", "passed", "count", "detail"}
    assert check["id"] == "t-graph-e7"
    assert "thm:T-graph7" in check["anchors"]
    assert check["count"] >= 351

    assert resolve_checks(["thm:T-graph6", "thm:order6"]) == ["e6-model"]
    assert resolve_checks(["lem:orthseq", "e7-strata"]) == ["e7-strata", "orthogonal-triples"]
    assert resolve_checks(["all"]) == [check_id for check_id, _, _ in list_checks()]
    try:
        resolve_checks(["thm:nope"])
        assert False
    except UnknownCheckError:
        pass
    assert run_cli(["verify", "thm:nope"])[0] == EXIT_USAGE
    print("✅ thm:T-graph7 -> t-graph-e7, 리포트에 anchors 포함")


def test_render_cube_and_square():
    """정육면체 모서리 / 정사각 격자 하이라이트"""
    print("\n렌더링 테스트")
    scene = build_scene(RenderSpec("cube_corner", highlight="021"))
    assert len(scene.nodes) == 27
    assert scene.shaded_count == 10
    assert [n.key for n in scene.nodes if n.origin] == ["021"]

    scene = build_scene(RenderSpec("square", system="e6", highlight="11122"))
    assert len(scene.nodes) == 16 and scene.shaded_count == 5

    text = render(RenderSpec("cube_corner", format="ascii", highlight="021"))
    assert "@021" in text and text.count("*") >= 10
    print("✅ 𝓛(021): 10칸, 𝓛(11122): 5칸")


def test_render_deterministic():
    """같은 요청은 같은 출력"""
    for fmt in ("svg", "ascii", "dot", "json"):
        spec = RenderSpec("hasse", format=fmt, system="e8", stratum=4)
        assert render(spec) == render(spec)
    svg = render(RenderSpec("dynkin", system="e7"))
    assert svg.startswith("<?xml") or svg.startswith("<svg")
    dot = render(RenderSpec("hasse", format="dot", system="e8", stratum=4))
    assert dot.startswith("digraph")
    doc = json.loads(render(RenderSpec("hasse", format="json", system="e8", stratum=4)))
    assert len(doc["nodes"]) == 6
    doc = json.loads(render(RenderSpec("dynkin", format="json", system="e6", highlight="0")))
    assert doc["shaded_count"] == 1
    assert doc["dashed"] and len(doc["dashed"]) == 1
    print("✅ svg / ascii / dot / json 결정적 출력")


def test_render_errors():
    """하이라이트/대상 오류"""
    bad = [
        RenderSpec("cube_corner", highlight="000"),
        RenderSpec("square", highlight="11112"),
        RenderSpec("hasse", system="d4"),
        RenderSpec("hasse", system="e8", stratum=2),
        RenderSpec("tgraph", system="e8"),
        RenderSpec("dynkin", system="e9"),
        RenderSpec("square", format="png"),
    ]
    for spec in bad:
        try:
            render(spec)
            assert False, f"{spec} 가 거부되지 않음"
        except RenderError:
            pass
    print("✅ 잘못된 렌더링 요청 거부")


def test_render_openmap7():
    """정육면체 모서리 칸마다 h7 숫자"""
    model = get_e7_model()
    h = open_map(7)
    scene = build_scene(RenderSpec("openmap7", highlight="021"))
    assert len(scene.nodes) == 27
    assert scene.panels == build_scene(RenderSpec("cube_corner")).panels
    assert scene.shaded_count == 10
    vectors = {x.label: x for x in model.gamma7}
    for node in scene.nodes:
        digit = int(node.note)
        assert 1 <= digit <= 7
        x = vectors[node.key]
        assert digit == h[model.preimage(x)]
        face, row, col = model.cube_layout(x)
        assert (node.col, node.row) == (4 * "abc".index(face) + col - 1, row - 1)

    text = render(RenderSpec("openmap7", format="ascii"))
    assert all(f"{node.key}:{node.note}" in text for node in scene.nodes)
    doc = json.loads(render(RenderSpec("openmap7", format="json")))
    assert len(doc["nodes"]) == 27
    print("✅ openmap7: 27칸 모두 h7 숫자 1..7")


def test_render_highlight_outside_set():
    """형식은 맞지만 렌더링 집합 밖인 하이라이트"""
    for spec in (
        RenderSpec("hasse", system="e8", stratum=4, highlight="1111111"),
        RenderSpec("hasse", system="e7", stratum=4, highlight="1111111"),
        RenderSpec("openmap7", highlight="000"),
        RenderSpec("tgraph", system="e6", highlight="000000"),
        RenderSpec("dynkin", system="e6", highlight="7"),
    ):
        try:
            build_scene(spec)
            assert False, f"{spec} 가 거부되지 않음"
        except RenderError:
            pass
    assert run_cli(["render", "hasse", "--stratum", "4", "--highlight", "1111111"])[0] == EXIT_USAGE
    print("✅ 집합 밖 하이라이트 거부")


def test_export_and_reimport():
    """익스포트 문서와 재생성 확인"""
    print("\n익스포트 테스트")
    roots = export_data(ExportSpec("roots", system="e7"))
    assert roots["kind"] == "roots" and len(roots["data"]["roots"]) == 126

    cmap = export_data(ExportSpec("map", system="e7"))
    assert len(cmap["data"]["table"]) == 64
    assert reimport(cmap)

    ideals = export_data(ExportSpec("ideals", stratum=7))
    assert ideals["data"]["count"] == 56
    assert len(ideals["data"]["ideals"]) == 56

    strata = export_data(ExportSpec("strata", system="e7"))
    assert len(strata["data"]["double_sixes"]) == 36

    with tempfile.TemporaryDirectory() as tmp:
        path = export_to_file(ExportSpec("map", system="e6", p=3), str(Path(tmp) / "e6.json"))
        assert path.exists()
        assert reimport(path)
        tampered = json.loads(path.read_text(encoding="utf-8"))
        tampered["data"]["table"][1]["image"] = tampered["data"]["table"][2]["image"]
        assert not reimport(tampered)

    for spec in (ExportSpec("map", system="e8"), ExportSpec("group", system="d4"), ExportSpec("zzz")):
        try:
            export_data(spec)
            assert False, f"{spec} 가 거부되지 않음"
        except ExportError:
            pass
    print("✅ roots 126, map 64행, ideals 56, 재생성 확인")


def test_queries():
    """image / preimage / stratum / link / layout / twist 조회"""
    print("\n조회 테스트")
    assert run_query("image", ["2234321"], "e7")["image"] == "330"
    assert run_query("preimage", ["303"], "e7")["root"] == "0112221"
    result = run_query("stratum", ["1011111"], "e7")
    assert result["stratum"] == 7 and result["tilde"] == "1011111"
    assert len(run_query("link", ["021"], "e7")["link_top_stratum"]) == 10
    assert run_query("layout", ["021"], "e7") == {"system": "E7", "vector": "021", "face": "a", "row": 2, "col": 1}
    assert run_query("layout", ["11122"], "e6")["row"] == 0
    twist = run_query("twist", ["4", "0000001"], "e7")
    assert len(twist["simple_images"]) == 7

    code, out = run_cli(["query", "image", "2234321", "--system", "e7"])
    assert code == EXIT_OK and json.loads(out)["image"] == "330"

    for kind, args, system in [
        ("image", ["0000002"], "e7"),
        ("preimage", ["021"], "e8"),
        ("twist", ["4"], "e7"),
        ("twist", ["x", "0000001"], "e7"),
        ("nope", ["1"], "e7"),
        ("layout", ["000"], "e7"),
    ]:
        try:
            run_query(kind, args, system)
            assert False, f"{kind} {args} 가 거부되지 않음"
        except QueryError:
            pass
    print("✅ 조회 결과와 오류 처리")


if __name__ == "__main__":
    tests = [
        test_verify_cli,
        test_verifier_registry,
        test_verify_by_anchor,
        test_render_cube_and_square,
        test_render_deterministic,
        test_render_errors,
        test_render_openmap7,
        test_render_highlight_outside_set,
        test_export_and_reimport,
        test_queries,
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
