"""
유한 공간 (Z/p)^m 연산 테스트 스크립트
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

import networkx as nx

from fp_space import (
    FpSpaceError,
    FpVector,
    all_vectors,
    det_int,
    det_mod,
    form_eval,
    gamma,
    is_prime,
    kernel_mod,
    klein_symplectic_form,
    n_graph,
    o_graph,
    parse_vector,
    rref_mod,
    srg_parameters,
    standard_form,
)
from root_core import build_root_system


def test_klein_vectors():
    """F = Z/2 x Z/2 자릿수 표기와 ⊕"""
    print("=" * 60)
    print("F³ 벡터 / 형식 테스트")
    print("=" * 60)
    form = klein_symplectic_form(3)
    x = form.vector("021")
    assert x.entries == (0, 0, 1, 0, 0, 1)
    assert x.digits == (0, 2, 1)
    assert (x ^ x).is_zero()
    assert (form.vector("100") ^ form.vector("200")).label == "300"
    assert len(form.vectors()) == 64
    print("✅ 자릿수 0..3 = 2비트 블록, ⊕ 확인")


def test_klein_form():
    """F 위의 형식: 서로 다른 0 아닌 자릿수끼리만 1"""
    form = klein_symplectic_form(1)
    for a in range(4):
        for b in range(4):
            expected = 1 if a and b and a != b else 0
            assert form_eval(form, form.vector(str(a)), form.vector(str(b))) == expected
    big = klein_symplectic_form(3)
    assert big.is_alternating()
    assert big.is_nondegenerate()
    assert len(gamma(big)) == 63
    print("✅ 교대, 비퇴화, Γ(F³) = V ∖ {0}")


def test_standard_form_gamma():
    """(Z/3)^m 의 Γ = 0 아닌 자리 수 ≡ 2 (mod 3)"""
    assert len(gamma(standard_form(3, 1))) == 0
    assert len(gamma(standard_form(3, 2))) == 4
    assert len(gamma(standard_form(3, 5))) == 72
    for x in gamma(standard_form(3, 4)):
        assert sum(1 for e in x.entries if e) % 3 == 2
    print("✅ |Γ((Z/3)^5)| = 72")


def test_vector_errors():
    """차원/법 불일치와 표기 오류"""
    try:
        FpVector(3, (0, 3))
        assert False, "정규화되지 않은 성분 허용"
    except FpSpaceError:
        pass
    try:
        parse_vector("0a1", 3)
        assert False, "잘못된 표기 허용"
    except FpSpaceError:
        pass
    try:
        parse_vector("4", 2, block=2)
        assert False, "블록 범위 밖 자릿수 허용"
    except FpSpaceError:
        pass
    try:
        FpVector(3, (1, 2)) + FpVector(3, (1, 2, 0))
        assert False, "차원 불일치 허용"
    except FpSpaceError:
        pass
    try:
        form_eval(standard_form(3, 2), FpVector(3, (1, 0)), FpVector(3, (1, 0, 0)))
        assert False, "형식 차원 불일치 허용"
    except FpSpaceError:
        pass
    print("✅ 오류 처리 확인")


def test_reduce():
    """Z/9 -> Z/3 축소"""
    x = FpVector(9, (4, 8, 0))
    assert x.reduce(3) == FpVector(3, (1, 2, 0))
    try:
        x.reduce(2)
        assert False
    except FpSpaceError:
        pass
    print("✅ 합성수 법 축소")


def test_linear_algebra():
    """행렬식, 기약 행사다리꼴, 핵"""
    e7 = build_root_system("E", 7).cartan
    assert det_int(e7) == 2
    assert det_mod(e7, 2) == 0
    assert det_mod(build_root_system("E", 6).cartan, 3) == 0
    assert det_int([[0, 1], [1, 0]]) == -1
    assert kernel_mod(e7, 2) == [(0, 1, 0, 0, 1, 0, 1)]

    rows, pivots = rref_mod(e7, 2)
    assert len(pivots) == 6
    e6 = build_root_system("E", 6).cartan
    assert len(rref_mod(e6, 3)[1]) == 5
    assert len(kernel_mod(e6, 3)) == 1
    try:
        rref_mod(e7, 9)
        assert False, "합성수 법 소거 허용"
    except FpSpaceError:
        pass
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    print("✅ det, rref, ker 확인")


def test_srg_parameters():
    """강정칙 그래프 매개변수"""
    assert srg_parameters(nx.petersen_graph()) == (10, 3, 0, 1)
    assert srg_parameters(nx.path_graph(4)) is None

    form = klein_symplectic_form(1)
    vectors = all_vectors(2, 2, 2)
    o = o_graph(form, vectors)
    n = n_graph(form, vectors)
    assert o.number_of_edges() + n.number_of_edges() == 6
    print("✅ Petersen (10, 3, 0, 1), O/N-그래프 여그래프")


if __name__ == "__main__":
    tests = [
        test_klein_vectors,
        test_klein_form,
        test_standard_form_gamma,
        test_vector_errors,
        test_reduce,
        test_linear_algebra,
        test_srg_parameters,
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
