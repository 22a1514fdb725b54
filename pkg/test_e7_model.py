"""
E7 압축 모델 (F³) 테스트 스크립트
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from e7_model import ModelError, compose, get_e7_model, permutation_closure
from fp_space import form_eval
from root_core import unit


def test_stratum_images():
    """Γ7⁺ = 𝓛(0) 와 층 이미지 분할"""
    print("=" * 60)
    print("E7 모델 테스트")
    print("=" * 60)
    model = get_e7_model()
    assert model.gamma7_is_link_of_zero()
    assert model.partitions_space()
    assert [len(model.gamma_s[s]) for s in (1, 3, 4, 5, 6, 7)] == [1, 3, 6, 10, 16, 27]
    assert all(x.digits.count(0) == 1 for x in model.gamma7)
    assert model.z[6].label == "033"
    ok, _, detail = model.stratum_identities()
    assert ok, detail
    print("✅ Γ7⁺ 27개, 층 분할, 링크 항등식")


def test_t_graph_equals_o_graph():
    """층 위에서 T-인접 <=> 직교"""
    model = get_e7_model()
    ok, count, detail = model.t_equals_o_on_strata()
    assert ok, detail
    assert count == 3 + 15 + 45 + 120 + 351
    ok, _, detail = model.translation_invariant()
    assert ok, detail
    print(f"✅ {count}쌍 확인 (Γ7⁺ 에서 351쌍)")


def test_graph_parameters():
    """T-그래프, O-그래프, 슐래플리 그래프 매개변수"""
    model = get_e7_model()
    params = model.graph_parameters()
    assert params["t_graph"] == (64, 27, 10, 12)
    assert params["o_graph_gamma7"] == (27, 10, 1, 5)
    assert params["schlafli"] == (27, 16, 10, 8)
    link = model.link(model.vector("021")) & model.gamma_s[7]
    assert len(link) == 10
    print("✅ srg(64,27,10,12), srg(27,10,1,5), srg(27,16,10,8), |𝓛(021) ∩ Γ7⁺| = 10")


def test_orthogonal_triples():
    """x3 = x1 ⊕ x2 와 E8 교차검증"""
    model = get_e7_model()
    assert model.orth_triple(model.vector("033"), model.vector("303")).label == "330"
    try:
        model.orth_triple(model.vector("033"), model.vector("013"))
        assert False, "직교하지 않는 쌍 허용"
    except ModelError:
        pass
    try:
        model.orth_triple(model.vector("000"), model.vector("303"))
        assert False, "Γ7⁺ 밖의 벡터 허용"
    except ModelError:
        pass
    ok, _, detail = model.orth_triples()
    assert ok, detail
    print("✅ 033 ⊕ 303 = 330, 전체 쌍 확인")


def test_order_recovery():
    """⊕ 연산으로 하세 도표 복원과 층 사이 순서"""
    model = get_e7_model()
    for check in (model.order_steps, model.order_recovery, model.cross_strata):
        ok, _, detail = check()
        assert ok, detail
    x = model.f(unit(7, 3))
    assert model.order_step(x, unit(7, 1))
    try:
        model.order_step(x, unit(7, 7))
        assert False, "Δ7⁺ 의 α 허용"
    except ModelError:
        pass
    # α1 과 α1+α3 는 들어올림이 같으므로 <= 만 판정 가능
    leq, orth = model.cross_stratum(unit(7, 1), (1, 0, 1, 0, 0, 0, 0))
    assert leq and not orth
    print("✅ H_s 복원, 층 사이 순서/직교")


def test_double_sixes_and_weyl():
    """36 개의 더블 식스와 W(E6) 작용"""
    print("\nW(E6) 테스트")
    model = get_e7_model()
    sixes = model.double_sixes()
    assert len(sixes) == 36
    ok, _, detail = model.double_six_structure()
    assert ok, detail
    ok, _, detail = model.reflections_agree()
    assert ok, detail
    ok, order, detail = model.weyl_action()
    assert ok, detail
    assert order == 51840
    print("✅ 더블 식스 36개, |W(E6)| = 51840")


def test_twists():
    """옮긴 디킨 비틀기와 좌표 대칭"""
    model = get_e7_model()
    ok, _, detail = model.twist_check()
    assert ok, detail
    groups = model.symmetry_groups()
    assert groups == {"twists": 1296, "listed": 1296, "equal": 1}
    print("✅ 비틀기 / 나열 대칭 모두 위수 1296")


def test_cube_layout():
    """(면, 행, 열) 배치"""
    model = get_e7_model()
    assert model.cube_layout(model.vector("021")) == ("a", 2, 1)
    assert model.cube_layout(model.vector("303")) == ("b", 3, 3)
    cells = {model.cube_layout(x) for x in model.gamma7}
    assert len(cells) == 27
    for x in model.gamma7:
        for y in model.gamma7:
            fx, rx, cx = model.cube_layout(x)
            fy, ry, cy = model.cube_layout(y)
            if x != y and fx == fy:
                assert (form_eval(model.form, x, y) == 0) == (rx != ry and cx != cy)
    try:
        model.cube_layout(model.vector("000"))
        assert False
    except ModelError:
        pass
    print("✅ 27 칸, 같은 면에서는 행과 열이 모두 다르면 직교")


def test_permutation_closure():
    """순열군 폐포"""
    swap, cycle = (1, 0, 2), (1, 2, 0)
    assert compose(cycle, cycle) == (2, 0, 1)
    assert len(permutation_closure([swap, cycle])) == 6
    assert len(permutation_closure([cycle])) == 3
    try:
        permutation_closure([swap, cycle], limit=4)
        assert False
    except ModelError:
        pass
    print("✅ S3 폐포, 크기 제한")


if __name__ == "__main__":
    tests = [
        test_stratum_images,
        test_t_graph_equals_o_graph,
        test_graph_parameters,
        test_orthogonal_triples,
        test_order_recovery,
        test_double_sixes_and_weyl,
        test_twists,
        test_cube_layout,
        test_permutation_closure,
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
