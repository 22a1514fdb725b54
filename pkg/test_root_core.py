"""
루트 시스템 구성 테스트 스크립트
"""
import sys
from pathlib import Path

# src 디렉토리를 Python path에 추가
sys.path.insert(0, str(Path(__file__).parent / "src"))

from fp_space import det_int
from root_core import (
    RootSystemError,
    ambient_coordinates,
    build_root_system,
    dynkin_twist,
    format_coeffs,
    hasse,
    pad,
    parse_coeffs,
    stratum,
    strata,
    system_from_name,
    tilde,
    unit,
    zeta,
)


def test_root_counts():
    """루트 개수, 최고 루트, 행렬식"""
    print("=" * 60)
    print("루트 개수 / 최고 루트 / 행렬식 테스트")
    print("=" * 60)

    print("\n1. 루트 개수...")
    for family, rank, n in [("E", 6, 72), ("E", 7, 126), ("E", 8, 240), ("D", 4, 24), ("A", 2, 6)]:
        system = build_root_system(family, rank)
        assert len(system.roots) == n, system.name
        assert len(system.positive_roots) == n // 2
        assert all(system.norm(b) == 2 for b in system.roots)
    print("✅ E6 72, E7 126, E8 240, D4 24, A2 6")

    print("\n2. 최고 루트...")
    assert build_root_system("E", 8).highest_root == (2, 3, 4, 6, 5, 4, 3, 2)
    assert build_root_system("E", 7).highest_root == (2, 2, 3, 4, 3, 2, 1)
    assert build_root_system("E", 6).highest_root == (1, 2, 2, 3, 2, 1)
    e7 = build_root_system("E", 7)
    assert all(e7.leq(b, e7.highest_root) for b in e7.positive_roots)
    assert e7.lowest_root == tuple(-c for c in e7.highest_root)
    print("✅ θ8, θ7, θ6 일치, θ7 은 최대 원소")

    print("\n3. 카르탕 행렬식...")
    for rank, det in zip(range(3, 9), (6, 5, 4, 3, 2, 1)):
        assert det_int(build_root_system("E", rank).cartan) == det
    assert det_int(build_root_system("D", 4).cartan) == 4
    assert det_int(build_root_system("A", 2).cartan) == 3
    print("✅ det A(E3..E8) = 6, 5, 4, 3, 2, 1")


def test_dynkin_and_affine():
    """디킨 도표 변과 아핀 정점 연결"""
    print("\n디킨 도표 테스트")
    e8 = build_root_system("E", 8)
    edges = {frozenset(e) for e in e8.dynkin_graph().edges}
    assert edges == {frozenset(e) for e in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]}

    # 최저 루트 정점은 E8 에서 8, E7 에서 1, E6 에서 2 에 붙음
    for rank, attached in [(8, 8), (7, 1), (6, 2)]:
        affine = build_root_system("E", rank).affine_dynkin_graph()
        assert set(affine[0]) == {attached}, rank
    print("✅ 디킨 도표 / 아핀 정점 확인")


def test_lowest_root_e8_orthogonal_to_e7():
    """α̂8 = -θ8 은 Δ(E7) 와 직교"""
    e8, e7 = build_root_system("E", 8), build_root_system("E", 7)
    assert all(e8.inner(e8.lowest_root, pad(g, 8)) == 0 for g in e7.roots)
    assert e8.inner(e8.lowest_root, unit(8, 8)) == -1
    print("✅ α̂8 ⊥ Δ(E7)")


def test_comparability():
    """<β, β'> > 0 판정: 문자 그대로의 관계에서는 정확, 추이적 순서에서는 반례"""
    print("\n비교 가능성 판정 테스트")
    e7 = build_root_system("E", 7)
    counterexamples = 0
    for i, b1 in enumerate(e7.positive_roots):
        for b2 in e7.positive_roots[i + 1:]:
            positive = e7.inner(b1, b2) > 0
            literal = e7.differs_by_positive_root(b1, b2) or e7.differs_by_positive_root(b2, b1)
            assert positive == literal, (b1, b2)
            if positive != e7.comparable(b1, b2):
                counterexamples += 1
    alpha2 = unit(7, 2)
    assert e7.leq(alpha2, e7.highest_root)
    assert e7.inner(alpha2, e7.highest_root) == 0
    assert counterexamples > 0
    print(f"✅ 문자 그대로의 관계: 정확, 추이적 순서 반례 {counterexamples}쌍")


def test_strata():
    """층 크기, Δ3⁺, 하세 도표 모양"""
    print("\n층 테스트")
    e8 = build_root_system("E", 8)
    layers = strata(e8)
    assert [len(layers[s]) for s in (1, 3, 4, 5, 6, 7, 8)] == [1, 3, 6, 10, 16, 27, 57]

    delta3 = set(layers[3])
    assert delta3 == {pad((0, 1, 0)), pad((0, 0, 1)), pad((1, 0, 1))}
    assert stratum(pad((0, 1))) == 3

    h3 = hasse(e8, layers[3])
    assert h3.number_of_edges() == 1
    assert h3.degree(pad((0, 1, 0))) == 0
    assert h3.has_edge(pad((0, 0, 1)), pad((1, 0, 1)))

    h4 = hasse(e8, layers[4])
    assert h4.number_of_nodes() == 6

    h7 = hasse(e8, layers[7])
    assert h7.number_of_nodes() == 27 and h7.number_of_edges() == 36
    print("✅ (1, 3, 6, 10, 16, 27, 57), H3 는 변 하나와 고립점, H7 은 27 정점 36 변")


def test_tilde_lift():
    """β~ = β + ζ_s 는 각 층에서 Δ7⁺ 로 단사"""
    e7 = build_root_system("E", 7)
    delta7 = set(strata(e7)[7])
    for s, roots in strata(e7).items():
        lifted = [tilde(b) for b in roots]
        assert len(set(lifted)) == len(lifted)
        assert set(lifted) <= delta7
    assert zeta(1) == (0, 0, 1, 1, 1, 1, 1)
    assert zeta(6) == (0, 0, 0, 0, 0, 0, 1)
    # α1 과 α1+α3 는 같은 들어올림을 가짐 (서로 다른 층)
    assert tilde(unit(7, 1)) == tilde((1, 0, 1, 0, 0, 0, 0)) == (1, 0, 1, 1, 1, 1, 1)
    print("✅ tilde 들어올림 확인")


def test_ambient_coordinates():
    """R^8 좌표 (2배) 와 노름"""
    assert ambient_coordinates(unit(8, 2)) == (-1, -1, -1, 1, 1, 1, 1, 1)
    e8 = build_root_system("E", 8)
    for beta in e8.positive_roots:
        assert sum(c * c for c in ambient_coordinates(beta)) == 8
    print("✅ 모든 E8 루트의 좌표 노름 8")


def test_dynkin_twists():
    """디킨 비틀기는 루트 시스템의 등거리 전단사"""
    print("\n디킨 비틀기 테스트")
    for rank in (6, 7, 8):
        system = build_root_system("E", rank)
        for i in range(3, min(rank, 7) + 1):
            twist = dynkin_twist(system, i)
            assert twist.is_bijection()
            assert twist.preserves_inner_products()
    for bad in (1, 2, 8):
        try:
            dynkin_twist(build_root_system("E", 8), bad)
            assert False, f"v{bad} 가 거부되지 않음"
        except RootSystemError:
            pass
    print("✅ 비틀기 v3..v7 등거리, v1, v2, v8 거부")


def test_parsing_and_errors():
    """계수 표기 / 시스템 이름 / 오류"""
    assert parse_coeffs("1122111") == (1, 1, 2, 2, 1, 1, 1)
    assert parse_coeffs("(-1,0,2)") == (-1, 0, 2)
    assert format_coeffs((-1, 0, 2)) == "(-1,0,2)"
    assert format_coeffs((0, 1, 1, 2, 2, 2, 1)) == "0112221"
    assert system_from_name("e7").name == "E7"
    assert system_from_name("D4").rank == 4
    for bad in ("x", "e9", "E2"):
        try:
            system_from_name(bad)
            assert False, bad
        except RootSystemError:
            pass
    try:
        build_root_system("E", 7).inner((1, 0), (1, 0))
        assert False, "길이 불일치가 허용됨"
    except RootSystemError:
        pass
    print("✅ 표기/오류 처리 확인")


if __name__ == "__main__":
    tests = [
        test_root_counts,
        test_dynkin_and_affine,
        test_lowest_root_e8_orthogonal_to_e7,
        test_comparability,
        test_strata,
        test_tilde_lift,
        test_ambient_coordinates,
        test_dynkin_twists,
        test_parsing_and_errors,
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
