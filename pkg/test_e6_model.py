"""
E6 압축 모델 ((Z/3)^5) 테스트 스크립트
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from e6_model import E6_S_LABELS, get_e6_model
from e7_model import ModelError
from fp_space import form_eval
from root_core import unit


def test_bijective_onto_gamma():
    """f: Δ(E6) -> Γ 전단사"""
    print("=" * 60)
    print("E6 모델 테스트")
    print("=" * 60)
    model = get_e6_model()
    assert model.bijective_onto_gamma()
    assert [s.label for s in model.map.S] == list(E6_S_LABELS)
    assert model.f((1, 0, 1, 0, 0, 0)) == model.f(unit(6, 1)) + model.f(unit(6, 3))
    print("✅ 72 루트 -> Γ 72 원소")


def test_top_stratum():
    """Γ6⁺ = {x : x1 x2 x3 x4 x5 = 1}"""
    model = get_e6_model()
    top = model.top_stratum()
    assert len(top) == 16
    assert model.vector("11122") in top
    assert model.vector("11111") in top
    assert model.vector("11112") not in top
    assert all(0 not in x.entries for x in top)
    print("✅ |Γ6⁺| = 16, 곱 조건")


def test_twist_symmetries():
    """v3, v4, v5 비틀기는 S5 를 생성, v6 은 부호 반전"""
    model = get_e6_model()
    ok, order, detail = model.twist_symmetries()
    assert ok, detail
    assert order == 120
    print("✅ 좌표 순열 S5, v6 = 부호 반전")


def test_t_graph():
    """T-그래프: 정확히 한 좌표가 같은 쌍"""
    model = get_e6_model()
    graph = model.t_graph3()
    assert graph.number_of_nodes() == 243
    assert all(d == 80 for _, d in graph.degree())
    link = model.link3(model.vector("11122")) & model.gamma_s[6]
    assert len(link) == 5
    ok, count, detail = model.t_equals_o_on_strata6()
    assert ok, detail
    assert count == 3 + 15 + 45 + 120
    for x in link:
        assert form_eval(model.form, x, model.vector("11122")) == 0
    print("✅ 차수 80, |𝓛(11122) ∩ Γ6⁺| = 5, 층 위에서 T = O")


def test_order_recovery():
    """x + f(α) ∈ Γ_s⁺ 판정과 하세 도표 복원"""
    model = get_e6_model()
    x = model.f(unit(6, 3))
    assert model.order_step6(x, unit(6, 1))
    assert not model.order_step6(x, unit(6, 2))
    try:
        model.order_step6(x, model.system.lowest_root)
        assert False, "음의 루트 허용"
    except ModelError:
        pass
    for check in (model.order_steps6, model.order_recovery6):
        ok, _, detail = check()
        assert ok, detail
    try:
        model.hasse_from_images6(2)
        assert False
    except ModelError:
        pass
    print("✅ 순서 복원")


def test_square_layout():
    """4x4 격자 배치"""
    model = get_e6_model()
    assert model.square_layout(model.vector("11122")) == (0, 1)
    assert model.square_layout(model.vector("22221")) == (3, 3)
    cells = {model.square_layout(x) for x in model.gamma6}
    assert len(cells) == 16
    try:
        model.square_layout(model.vector("11112"))
        assert False, "Γ6⁺ 밖의 벡터 허용"
    except ModelError:
        pass
    print("✅ 16 칸 배치")


if __name__ == "__main__":
    tests = [
        test_bijective_onto_gamma,
        test_top_stratum,
        test_twist_symmetries,
        test_t_graph,
        test_order_recovery,
        test_square_layout,
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
