"""
순서 아이디얼 / 열린 사상 / 대칭 체계 테스트 스크립트
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from ideals import (
    EPSILON,
    IdealError,
    enumerate_ideals,
    find_open_map,
    get_involution_system,
    get_poset,
    lattice_closure,
    open_map,
    open_map_properties,
    psi,
    psi_isomorphism,
    psi_target,
)
from root_core import build_root_system, dynkin_twist, negate, pad, unit


def test_ideal_counts():
    """|𝒥(Δ_s⁺)| = |ψ_s 공역|"""
    print("=" * 60)
    print("순서 아이디얼 테스트")
    print("=" * 60)
    counts = {s: len(enumerate_ideals(s)) for s in range(3, 8)}
    assert counts == {3: 6, 4: 10, 5: 16, 6: 27, 7: 56}
    for s in range(3, 8):
        assert counts[s] == len(psi_target(s))
        ok, _, detail = lattice_closure(s)
        assert ok, detail
    ideals = enumerate_ideals(7)
    assert len(ideals[0]) == 0 and len(ideals[-1]) == 27
    print(f"✅ 아이디얼 개수 {counts}")


def test_down_set():
    """주 아이디얼"""
    poset = get_poset(4)
    top = max(poset.elements, key=sum)
    assert poset.down_set(top).mask == poset.full_mask
    bottom = pad(unit(4, 4), 8)
    assert len(poset.down_set(bottom)) == 1
    try:
        get_poset(2)
        assert False
    except IdealError:
        pass
    print("✅ 주 아이디얼, 잘못된 층 거부")


def test_open_maps():
    """h_s 는 s = 3..7 에서 유일, s = 8 에서는 없음"""
    print("\n열린 사상 테스트")
    for s in range(3, 8):
        result = find_open_map(s)
        assert result.solutions == 1, (s, result.solutions)
        ok, _, detail = open_map_properties(s)
        assert ok, detail
        assert open_map(s)[unit(s, s)] == s
    assert find_open_map(8).solutions == 0
    try:
        open_map(8)
        assert False, "s = 8 에서 열린 사상 생성"
    except IdealError:
        pass
    print("✅ h3..h7 유일, h8 없음")


def test_psi_isomorphism():
    """ψ_s: 𝒥(Δ_s⁺) -> Δ_{s'}⁺ 순서 동형"""
    for s in range(3, 8):
        ok, _, detail = psi_isomorphism(s)
        assert ok, detail
    e8 = build_root_system("E", 8)
    images = {psi(7, J) for J in enumerate_ideals(7)}
    assert e8.highest_root not in images
    assert psi(7, enumerate_ideals(7)[0]) == unit(8, 8)
    try:
        psi(8, enumerate_ideals(8)[0])
        assert False
    except IdealError:
        pass
    print("✅ ψ3..ψ7 순서 동형, ψ7 상 = Δ8⁺ ∖ {θ8}")


def test_involutions():
    """μ, ρ 좌표 설명과 𝒥_0..𝒥_3 분할"""
    print("\n대칭 체계 테스트")
    system = get_involution_system()
    assert system.model.f(system.check_alpha7).label == "303"
    assert all(EPSILON[EPSILON[k]] == k for k in EPSILON)
    for check in (
        system.coordinate_descriptions,
        system.partition_checks,
        system.rotation_checks,
        system.label_symmetries,
    ):
        ok, _, detail = check()
        assert ok, detail
    print("✅ μ(abc) = cba, ρ(abc) = bca, μ~ / ρ~ 검사")


def test_rho_from_v6_twist():
    """ρ = μ ∘ (v6 비틀기, 음의 루트는 부호 반전), Δ7⁺ 위의 위수 3 순열"""
    system = get_involution_system()
    e7 = build_root_system("E", 7)
    twist = dynkin_twist(e7, 6).permutation()
    delta7 = system.model.strata[7]
    for beta in delta7:
        image = twist[beta]
        if not e7.is_positive(image):
            image = negate(image)
        assert system.rho(beta) == system.mu(image)
    assert sorted(system.rho(b) for b in delta7) == sorted(delta7)
    assert all(system.rho(system.rho(system.rho(b))) == b for b in delta7)
    assert any(system.rho(b) != b for b in delta7)
    print("✅ ρ 는 μ ∘ v6 비틀기, ρ³ = 1")


def test_rho_tilde_domain():
    """ρ~ 는 𝒥_1 밖에서 오류"""
    system = get_involution_system()
    empty = enumerate_ideals(7)[0]
    assert system.part(empty) == 0
    try:
        system.rho_tilde(empty)
        assert False
    except IdealError:
        pass
    try:
        system.sigma(build_root_system("E", 8).highest_root)
        assert False
    except IdealError:
        pass
    print("✅ 정의역 오류")


def test_face_rule():
    """라벨 5, 6 은 같은 면 경로로 7 에 닿고 1, 3 은 닿지 않음"""
    system = get_involution_system()
    rule = system.face_rule()
    assert rule[5][0] == rule[5][1] > 0
    assert rule[6][0] == rule[6][1] > 0
    assert rule[1][0] == 0 and rule[3][0] == 0
    ok, _, detail = system.face_rule_check()
    assert ok, detail
    print(f"✅ 면 규칙 {rule}")


if __name__ == "__main__":
    tests = [
        test_ideal_counts,
        test_down_set,
        test_open_maps,
        test_psi_isomorphism,
        test_involutions,
        test_rho_from_v6_twist,
        test_rho_tilde_domain,
        test_face_rule,
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
