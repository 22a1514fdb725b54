"""
전수 검증 실행 모듈

각 검증 항목은 (통과 여부, 확인 건수, 실패 설명) 을 돌려주는 함수이며,
run_checks() 가 순차 또는 스레드 풀로 실행하고 결과를 모읍니다.
"""
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from compression import (
    CompressionError,
    canonical_compression,
    identity_lift,
    quotient_images,
    reduce_composite,
    verify_injective,
    verify_inner_products,
    verify_orthogonality_transfer,
)
from config import VERIFY_WORKERS
from e6_model import get_e6_model
from e7_model import get_e7_model
from fp_space import (
    all_vectors,
    det_int,
    det_mod,
    form_eval,
    gamma,
    kernel_mod,
    klein_symplectic_form,
    n_graph,
    standard_form,
)
from ideals import (
    enumerate_ideals,
    find_open_map,
    get_involution_system,
    lattice_closure,
    open_map_properties,
    psi_isomorphism,
    psi_target,
)
from logger import logger
from root_core import (
    RootSystemError,
    STRATUM_LABELS,
    build_root_system,
    dynkin_twist,
    hasse,
    pad,
    stratum,
    strata,
    tilde,
    unit,
)

Outcome = Tuple[bool, int, Optional[str]]


class UnknownCheckError(ValueError):
    """등록되지 않은 검증 항목"""


@dataclass
class CheckResult:
    check_id: str
    title: str
    passed: bool
    count: int
    detail: Optional[str] = None
    seconds: float = 0.0
    anchors: List[str] = field(default_factory=list)

    def to_dict(self, timings: bool = False) -> dict:
        data = {
            "id": self.check_id,
            "title": self.title,
            "anchors": self.anchors,
            "passed": self.passed,
            "count": self.count,
            "detail": self.detail,
        }
        if timings:
            data["seconds"] = round(self.seconds, 3)
        return data


def combine(*outcomes: Outcome) -> Outcome:
    """여러 단계 결과 합치기 (첫 실패에서 멈춘 것처럼 보고)"""
    total = 0
    for passed, count, detail in outcomes:
        total += count
        if not passed:
            return False, total, detail
    return True, total, None


def expect(condition: bool, detail: str, count: int = 1) -> Outcome:
    return (True, count, None) if condition else (False, count, detail)


# ==================== 루트 시스템 ====================

def check_root_counts() -> Outcome:
    expected_roots = {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("D", 4): 24, ("A", 2): 6, ("A", 1): 2}
    expected_det = {3: 6, 4: 5, 5: 4, 6: 3, 7: 2, 8: 1}
    highest = {
        6: (1, 2, 2, 3, 2, 1),
        7: (2, 2, 3, 4, 3, 2, 1),
        8: (2, 3, 4, 6, 5, 4, 3, 2),
    }
    count = 0
    for (family, rank), n in expected_roots.items():
        system = build_root_system(family, rank)
        count += len(system.roots)
        if len(system.roots) != n or any(system.norm(b) != 2 for b in system.roots):
            return False, count, f"{system.name}: 루트 {len(system.roots)}개"
    for rank, det in expected_det.items():
        count += 1
        if det_int(build_root_system("E", rank).cartan) != det:
            return False, count, f"det A(E{rank}) ≠ {det}"
    for rank, theta in highest.items():
        system = build_root_system("E", rank)
        count += 1
        if system.highest_root != theta or not all(system.leq(b, theta) for b in system.positive_roots):
            return False, count, f"E{rank} 최고 루트 불일치"
    e8, e7 = build_root_system("E", 8), build_root_system("E", 7)
    for gamma_root in e7.roots:
        count += 1
        if e8.inner(e8.lowest_root, pad(gamma_root, 8)) != 0:
            return False, count, "α̂8 이 Δ(E7) 와 직교하지 않음"
    return True, count, None


def check_root_order() -> Outcome:
    """<β, β'> > 0 <=> 비교 가능: 문자 그대로의 관계에서는 정확, 추이적 순서의 반례는 보고"""
    e7 = build_root_system("E", 7)
    count = 0
    counterexamples = 0
    for b1, b2 in combinations(e7.positive_roots, 2):
        count += 1
        positive = e7.inner(b1, b2) > 0
        literal = e7.differs_by_positive_root(b1, b2) or e7.differs_by_positive_root(b2, b1)
        if positive != literal:
            return False, count, f"문자 그대로의 관계 반례: {b1}, {b2}"
        if positive != e7.comparable(b1, b2):
            counterexamples += 1
    logger.info(f"추이적 루트 순서에서 비교 가능성 판정 반례: {counterexamples}쌍")
    if not e7.leq(unit(7, 2), e7.highest_root) or e7.inner(unit(7, 2), e7.highest_root) != 0:
        return False, count, "α2 <= θ7 반례가 재현되지 않음"
    return True, count, None


def check_strata() -> Outcome:
    e8 = build_root_system("E", 8)
    sizes = {s: len(roots) for s, roots in strata(e8).items()}
    count = len(e8.positive_roots)
    if tuple(sizes[s] for s in STRATUM_LABELS) != (1, 3, 6, 10, 16, 27, 57):
        return False, count, f"층 크기 {sizes}"
    delta3 = set(strata(e8)[3])
    if delta3 != {pad(unit(3, 2)), pad(unit(3, 3)), pad((1, 0, 1))}:
        return False, count, "Δ3⁺ 불일치"
    e7 = build_root_system("E", 7)
    delta7 = set(strata(e7)[7])
    for s, roots in strata(e7).items():
        lifted = [tilde(b) for b in roots]
        count += len(roots)
        if len(set(lifted)) != len(lifted) or not set(lifted) <= delta7:
            return False, count, f"s = {s}: tilde 가 단사가 아니거나 Δ7⁺ 밖"
        if s == 7 and lifted != roots:
            return False, count, "Δ7⁺ 에서 tilde 가 항등이 아님"
    return True, count, None


def check_hasse_shapes() -> Outcome:
    e8 = build_root_system("E", 8)
    count = 0
    for s, roots in strata(e8).items():
        graph = hasse(e8, roots)
        count += graph.number_of_edges()
        for a, b in graph.edges:
            diff = tuple(x - y for x, y in zip(a, b))
            if sorted(abs(c) for c in diff) != [0] * 7 + [1]:
                return False, count, f"s = {s}: 단순근 차이가 아닌 변"
    h3 = hasse(e8, strata(e8)[3])
    h7 = hasse(e8, strata(e8)[7])
    h1 = hasse(e8, strata(e8)[1])
    return combine(
        (True, count, None),
        expect(h3.number_of_edges() == 1 and h3.degree(pad(unit(3, 2))) == 0, "H3 모양 불일치"),
        expect(h7.number_of_nodes() == 27 and h7.number_of_edges() == 36, "H7 모양 불일치"),
        expect(h1.number_of_nodes() == 1 and h1.number_of_edges() == 0, "H1 모양 불일치"),
    )


def check_dynkin_twists() -> Outcome:
    count = 0
    for rank in (6, 7, 8):
        system = build_root_system("E", rank)
        for i in range(3, rank + 1):
            if i == 8:
                continue
            twist = dynkin_twist(system, i)
            count += 1
            if not (twist.is_bijection() and twist.preserves_inner_products()):
                return False, count, f"E{rank} 비틀기 v{i} 가 등거리 전단사가 아님"
    try:
        dynkin_twist(build_root_system("E", 8), 8)
    except RootSystemError:
        return True, count, None
    return False, count, "v8 비틀기가 거부되지 않음"


# ==================== 공간 / 압축 ====================

def check_forms() -> Outcome:
    klein = klein_symplectic_form(3)
    count = 64
    if not (klein.is_alternating() and klein.is_nondegenerate()):
        return False, count, "F³ 형식이 교대/비퇴화가 아님"
    if len(gamma(klein)) != 63:
        return False, count, "Γ(F³) ≠ V ∖ {0}"
    for m in range(1, 7):
        form = standard_form(3, m)
        expected = {x for x in all_vectors(3, m) if sum(1 for e in x.entries if e) % 3 == 2}
        count += 3 ** m
        if set(gamma(form)) != expected:
            return False, count, f"(Z/3)^{m} 의 Γ 특성화 실패"
    if len(gamma(standard_form(3, 5))) != 72:
        return False, count, "|Γ((Z/3)^5)| ≠ 72"
    for rank in range(3, 9):
        cartan = build_root_system("E", rank).cartan
        for p in (2, 3, 5):
            count += 1
            if det_mod(cartan, p) != det_int(cartan) % p:
                return False, count, f"det mod {p} 불일치 (E{rank})"
    kernel = kernel_mod(build_root_system("E", 7).cartan, 2)
    if kernel != [(0, 1, 0, 0, 1, 0, 1)]:
        return False, count, f"ker A(E7) mod 2 = {kernel}"

    # S 위의 N-그래프 = 디킨 도표
    for model in (get_e7_model(), get_e6_model()):
        S = list(model.map.S)
        graph = n_graph(model.form, S)
        edges = {frozenset((S.index(a) + 1, S.index(b) + 1)) for a, b in graph.edges}
        dynkin = {frozenset(e) for e in model.system.dynkin_graph().edges}
        count += 1
        if edges != dynkin:
            return False, count, f"{model.system.name}: S 위의 N-그래프가 디킨 도표가 아님"
    return True, count, None


def _injective(cmap) -> Outcome:
    result = verify_injective(cmap)
    return expect(result.injective and result.in_gamma, f"{cmap.name}: 단사 실패", result.domain_size)


def _rejected(build: Callable, detail: str) -> Outcome:
    try:
        build()
    except CompressionError as e:
        logger.debug(f"예상된 거부: {e}")
        return True, 1, None
    return False, 1, detail


def check_injectivity() -> Outcome:
    e7_model, e6_model = get_e7_model(), get_e6_model()
    e7, e6 = e7_model.system, e6_model.system
    lift9 = identity_lift(e6, 9)
    a2 = quotient_images(build_root_system("A", 2), 3)
    return combine(
        _injective(e7_model.map),
        expect(len({e7_model.map.table[b] for b in e7.positive_roots} | {e7_model.zero}) == 64, "E7: 64 대응 실패"),
        _injective(e6_model.map),
        expect(e6_model.bijective_onto_gamma(), "E6: Γ 로의 전단사 실패"),
        _injective(canonical_compression(e7, 2)),
        _injective(canonical_compression(e6, 3)),
        expect(canonical_compression(e7, 2).form.dim == 6, "표준 몫 (E7, 2) 차원"),
        expect(canonical_compression(e6, 3).form.dim == 5, "표준 몫 (E6, 3) 차원"),
        _rejected(lambda: canonical_compression(build_root_system("E", 8), 2), "(E8, 2) 가 거부되지 않음"),
        _rejected(lambda: canonical_compression(build_root_system("D", 4), 2), "(D4, 2) 퇴화가 감지되지 않음"),
        _rejected(lambda: canonical_compression(build_root_system("A", 2), 3), "(A2, 3) 퇴화가 감지되지 않음"),
        expect(a2[0] == a2[1], "A2 몫에서 f(α1) = f(α2) 가 아님"),
        _injective(lift9),
        _injective(reduce_composite(lift9, 3)),
        _injective(reduce_composite(e6_model.map, 3)),
        _rejected(lambda: reduce_composite(lift9, 2), "p' = 2 축소가 거부되지 않음"),
    )


def check_inner_products() -> Outcome:
    maps = [
        get_e7_model().map,
        get_e6_model().map,
        canonical_compression(build_root_system("E", 7), 2),
        canonical_compression(build_root_system("E", 6), 3),
        reduce_composite(identity_lift(build_root_system("E", 6), 9), 3),
    ]
    outcomes = []
    for cmap in maps:
        passed, count, pair = verify_inner_products(cmap)
        outcomes.append((passed, count, None if passed else f"{cmap.name}: 내적 불일치 {pair}"))
        passed, count, pair = verify_orthogonality_transfer(cmap)
        outcomes.append((passed, count, None if passed else f"{cmap.name}: 직교성 전달 실패 {pair}"))
    return combine(*outcomes)


# ==================== E7 모델 ====================

def check_e7_strata() -> Outcome:
    model = get_e7_model()
    sizes = tuple(len(model.gamma_s[s]) for s in sorted(model.gamma_s))
    return combine(
        expect(model.gamma7_is_link_of_zero(), "Γ7⁺ ≠ 𝓛(0)"),
        expect(model.partitions_space(), "층 이미지가 F³ 를 분할하지 않음"),
        expect(sizes == (1, 3, 6, 10, 16, 27), f"층 이미지 크기 {sizes}"),
        expect(model.z[6] == model.vector("033"), "z6 ≠ 033"),
    )


def check_t_graph_e7() -> Outcome:
    model = get_e7_model()
    params = model.graph_parameters()
    link021 = model.link(model.vector("021")) & model.gamma_s[7]
    logger.info(f"srg 매개변수: {params}")
    return combine(
        model.t_equals_o_on_strata(),
        model.translation_invariant(),
        expect(params["t_graph"] == (64, 27, 10, 12), f"T-그래프 {params['t_graph']}"),
        expect(params["o_graph_gamma7"] == (27, 10, 1, 5), f"O-그래프 {params['o_graph_gamma7']}"),
        expect(params["schlafli"] == (27, 16, 10, 8), f"슐래플리 그래프 {params['schlafli']}"),
        expect(len(link021) == 10, f"|𝓛(021) ∩ Γ7⁺| = {len(link021)}"),
    )


def check_stratum_identities() -> Outcome:
    return get_e7_model().stratum_identities()


def check_orthogonal_triples() -> Outcome:
    model = get_e7_model()
    x3 = model.orth_triple(model.vector("033"), model.vector("303"))
    return combine(expect(x3 == model.vector("330"), "033 ⊕ 303 ≠ 330"), model.orth_triples())


def check_order_recovery_e7() -> Outcome:
    model = get_e7_model()
    return combine(model.order_steps(), model.order_recovery(), model.cross_strata())


def check_twists_e7() -> Outcome:
    return get_e7_model().twist_check()


def check_weyl_action() -> Outcome:
    model = get_e7_model()
    return combine(model.reflections_agree(), model.weyl_action())


def check_double_sixes() -> Outcome:
    return get_e7_model().double_six_structure()


def check_cube_layout() -> Outcome:
    model = get_e7_model()
    cells = {x: model.cube_layout(x) for x in model.gamma7}
    faces = [face for face, _, _ in cells.values()]
    count = len(cells)
    if len(set(cells.values())) != 27 or any(faces.count(f) != 9 for f in "abc"):
        return False, count, "정육면체 배치가 전단사가 아님"
    for x, y in combinations(model.gamma7, 2):
        count += 1
        (fx, rx, cx), (fy, ry, cy) = cells[x], cells[y]
        orthogonal = form_eval(model.form, x, y) == 0
        if fx == fy:
            reading = rx != ry and cx != cy
        else:
            # 두 면에 공통인 좌표의 자릿수가 같으면 직교
            shared = 3 - "abc".index(fx) - "abc".index(fy)
            reading = x.digits[shared] == y.digits[shared]
        if reading != orthogonal:
            return False, count, f"배치 판독 불일치: {x.label}, {y.label}"
    return True, count, None


# ==================== E6 모델 ====================

def check_e6_model() -> Outcome:
    model = get_e6_model()
    cells = {model.square_layout(x) for x in model.gamma6}
    link = model.link3(model.vector("11122")) & model.gamma_s[6]
    degrees = {d for _, d in model.t_graph3().degree()}
    return combine(
        expect(model.bijective_onto_gamma(), "f: Δ -> Γ 전단사 실패", 72),
        expect(len(model.top_stratum()) == 16, "|Γ6⁺| ≠ 16"),
        model.twist_symmetries(),
        model.t_equals_o_on_strata6(),
        model.order_steps6(),
        model.order_recovery6(),
        expect(len(cells) == 16, "정사각 배치가 전단사가 아님"),
        expect(len(link) == 5, f"|𝓛(11122) ∩ Γ6⁺| = {len(link)}"),
        expect(degrees == {80}, f"Z/3 T-그래프 차수 {degrees}"),
    )


# ==================== 순서 아이디얼 ====================

def check_order_ideals() -> Outcome:
    outcomes = []
    for s in range(3, 8):
        size = len(enumerate_ideals(s))
        outcomes.append(expect(size == len(psi_target(s)), f"|𝒥(Δ{s}⁺)| = {size}"))
        search = find_open_map(s)
        outcomes.append(expect(search.solutions == 1, f"s = {s}: 열린 사상 {search.solutions}개", search.nodes_visited))
        outcomes.append(open_map_properties(s))
        outcomes.append(psi_isomorphism(s))
        outcomes.append(lattice_closure(s))
    search8 = find_open_map(8)
    outcomes.append(expect(search8.solutions == 0, f"s = 8: 열린 사상 {search8.solutions}개", search8.nodes_visited))
    outcomes.append(expect(len(enumerate_ideals(7)) == 56, "|𝒥(Δ7⁺)| ≠ 56"))
    return combine(*outcomes)


def check_involutions() -> Outcome:
    system = get_involution_system()
    return combine(
        system.coordinate_descriptions(),
        system.partition_checks(),
        system.rotation_checks(),
        system.label_symmetries(),
        system.face_rule_check(),
    )


# ==================== 레지스트리 ====================

# 항목 ID -> (제목, 정리/식 앵커, 검증 함수)
CHECKS: Dict[str, Tuple[str, Tuple[str, ...], Callable[[], Outcome]]] = {
    "root-counts": ("루트 개수, 행렬식, 최고 루트", (), check_root_counts),
    "root-order": ("비교 가능성 판정 <β,β'> > 0", (), check_root_order),
    "strata": ("층 크기와 tilde 들어올림", ("eqn:strata",), check_strata),
    "hasse-shapes": ("하세 도표 모양", ("fig:hasse",), check_hasse_shapes),
    "dynkin-twists": ("디킨 비틀기의 등거리성", (), check_dynkin_twists),
    "forms": ("쌍선형 형식, Γ, mod p 선형대수", ("eqn:symmform3",), check_forms),
    "injectivity": ("압축 사상의 단사성", ("thm:injective", "prop:pdivides"), check_injectivity),
    "inner-products": ("내적 보존과 직교성 전달", ("eqn:samedynkin",), check_inner_products),
    "e7-strata": ("Γ7⁺ = 𝓛(0) 와 층 이미지", ("lem:27",), check_e7_strata),
    "t-graph-e7": ("층 위에서 T-그래프 = O-그래프 (E7)", ("thm:T-graph7", "eqn:aut1"), check_t_graph_e7),
    "stratum-identities": ("층의 링크 표현 항등식", ("thm:otherstrata", "eqn:7-t"), check_stratum_identities),
    "orthogonal-triples": (
        "직교 삼중쌍",
        ("lem:orthseq", "cor:orthseqcor", "eqn:defbeta3"),
        check_orthogonal_triples,
    ),
    "order-recovery-e7": ("⊕ 연산으로 순서 복원 (E7)", ("thm:order7",), check_order_recovery_e7),
    "twists-e7": ("Γ7⁺ 위의 비틀기 대칭", ("eqn:symmetries27",), check_twists_e7),
    "weyl-action": ("W(E6) 의 Γ7⁺ 작용", ("eqn:reflroot",), check_weyl_action),
    "double-sixes": ("슐래플리 더블 식스", (), check_double_sixes),
    "cube-layout": ("정육면체 모서리 배치", ("fig:cubecorner",), check_cube_layout),
    "e6-model": ("E6 의 (Z/3)^5 압축", ("thm:T-graph6", "thm:order6", "fig:square"), check_e6_model),
    "order-ideals": (
        "순서 아이디얼, 열린 사상, ψ_s",
        ("prop:uniqueopenmap", "eqn:orderidealrelation"),
        check_order_ideals,
    ),
    "involutions": ("μ, ρ, ν, σ 대칭 체계", ("fig:openmap7",), check_involutions),
}

ALL_CHECKS = "all"


def list_checks() -> List[Tuple[str, str, Tuple[str, ...]]]:
    return [(check_id, title, anchors) for check_id, (title, anchors, _) in CHECKS.items()]


def resolve_checks(selectors: Optional[Sequence[str]] = None) -> List[str]:
    """항목 ID, 앵커(thm:T-graph7 등) 또는 'all' 을 항목 ID 목록으로 (레지스트리 순서)"""
    if not selectors or ALL_CHECKS in selectors:
        return list(CHECKS)
    wanted = set()
    unknown = []
    for selector in selectors:
        if selector in CHECKS:
            wanted.add(selector)
            continue
        matched = [check_id for check_id, (_, anchors, _) in CHECKS.items() if selector in anchors]
        if matched:
            wanted.update(matched)
        else:
            unknown.append(selector)
    if unknown:
        raise UnknownCheckError(f"알 수 없는 검증 항목: {', '.join(unknown)}")
    return [c for c in CHECKS if c in wanted]


def run_check(check_id: str) -> CheckResult:
    if check_id not in CHECKS:
        raise UnknownCheckError(f"알 수 없는 검증 항목: {check_id}")
    title, anchors, func = CHECKS[check_id]
    logger.log_check_start(check_id, title)
    start = time.time()
    try:
        passed, count, detail = func()
    except Exception as e:
        logger.error(f"검증 중 오류 [{check_id}]: {e}")
        logger.debug(traceback.format_exc())
        passed, count, detail = False, 0, f"{type(e).__name__}: {e}"
    seconds = time.time() - start
    logger.log_check_end(check_id, passed, count, seconds)
    if detail:
        logger.warning(f"  [{check_id}] {detail}")
    return CheckResult(check_id, title, passed, count, detail, seconds, list(anchors))


def run_checks(check_ids: Optional[Sequence[str]] = None, workers: int = VERIFY_WORKERS) -> List[CheckResult]:
    """선택한 검증 실행 (항목 ID 또는 앵커, 결과는 레지스트리 순서)"""
    selected = resolve_checks(check_ids)

    if workers > 1 and len(selected) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_check, selected))
    else:
        results = [run_check(c) for c in selected]
    return results


def build_report(results: Sequence[CheckResult], timings: bool = False) -> dict:
    return {
        "checks": [r.to_dict(timings) for r in results],
        "passed": sum(1 for r in results if r.passed),
        "failed": sum(1 for r in results if not r.passed),
    }
