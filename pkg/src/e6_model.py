"""
E6 압축 모델: Δ(E6) -> (Z/3)^5, 표준 대칭 형식
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from compression import CompressionMap, verify_injective
from e7_model import ModelError, Permutation, edge_set, permutation_closure
from fp_space import FpVector, form_eval, srg_parameters, standard_form
from logger import logger
from root_core import Coeffs, add, build_root_system, dynkin_twist, format_coeffs, hasse, strata

E6_S_LABELS = ("12000", "00012", "01200", "00120", "00011", "11111")


def standard_e6_map() -> CompressionMap:
    """s_1 = 12000, ..., s_6 = 11111"""
    form = standard_form(3, 5)
    system = build_root_system("E", 6)
    return CompressionMap(system, form, [form.vector(label) for label in E6_S_LABELS], name="E6/Z3^5")


class E6Model:
    """표준 E6 압축 사상 위의 구조"""

    def __init__(self):
        self.map = standard_e6_map()
        result = verify_injective(self.map)
        if not (result.injective and result.in_gamma):
            raise ModelError("표준 E6 사상이 Δ 에서 단사가 아닙니다")

        self.system = self.map.system
        self.form = self.map.form
        self.space: List[FpVector] = self.form.vectors()
        self.strata: Dict[int, List[Coeffs]] = strata(self.system)
        self.gamma_s: Dict[int, FrozenSet[FpVector]] = {
            s: frozenset(self.map.table[b] for b in roots) for s, roots in self.strata.items()
        }
        self.stratum_of: Dict[FpVector, int] = {
            x: s for s, images in self.gamma_s.items() for x in images
        }
        self.gamma6: List[FpVector] = sorted(self.gamma_s[6])
        self._point_index = {x: k for k, x in enumerate(self.gamma6)}

    def f(self, beta: Sequence[int]) -> FpVector:
        return self.map.apply(beta)

    def preimage(self, x: FpVector) -> Coeffs:
        beta = self.map.preimage(x)
        if beta is None:
            raise ModelError(f"루트의 상이 아닙니다: {x.label}")
        return beta

    def vector(self, label: str) -> FpVector:
        return self.form.vector(label)

    def bijective_onto_gamma(self) -> bool:
        """f: Δ -> Γ 전단사 (|Γ| = 72)"""
        images = {self.map.table[b] for b in self.system.roots}
        return len(images) == len(self.system.roots) and images == set(self.map.gamma)

    # ---------- 최상위 층 ----------

    @staticmethod
    def product_one(x: FpVector) -> bool:
        product = 1
        for d in x.entries:
            product = (product * d) % 3
        return product == 1

    def top_stratum(self) -> FrozenSet[FpVector]:
        """Γ6⁺ = {x : Π x_i = 1} 확인 후 반환"""
        expected = frozenset(x for x in self.space if self.product_one(x))
        if self.gamma_s[6] != expected:
            raise ModelError("Γ6⁺ 가 곱 조건 집합과 다릅니다")
        return self.gamma_s[6]

    def transported_twist(self, i: int) -> Permutation:
        """dynkin_twist(E6, i) 의 Γ6⁺ 위 작용"""
        table = dynkin_twist(self.system, i).permutation()
        images = [self.f(table[self.preimage(x)]) for x in self.gamma6]
        if any(y not in self._point_index for y in images):
            raise ModelError(f"비틀기 v{i} 가 Γ6⁺ 를 보존하지 않습니다")
        return tuple(self._point_index[y] for y in images)

    def coordinate_permutation(self, pi: Sequence[int]) -> Optional[Permutation]:
        """좌표 순열 x -> (x_{π(1)}, ..., x_{π(5)}) 의 Γ6⁺ 위 작용"""
        images = [FpVector(3, tuple(x.entries[k] for k in pi)) for x in self.gamma6]
        if any(y not in self._point_index for y in images):
            return None
        return tuple(self._point_index[y] for y in images)

    def sign_flip(self) -> Permutation:
        """(x1, x2, x3, x4, x5) -> (-x1, -x2, -x3, -x4, x5)"""
        images = [FpVector(3, tuple((-d) % 3 for d in x.entries[:4]) + x.entries[4:]) for x in self.gamma6]
        return tuple(self._point_index[y] for y in images)

    def twist_symmetries(self) -> Tuple[bool, int, Optional[str]]:
        """v3, v4, v5 비틀기는 좌표 순열로 S5 를 생성하고 v6 비틀기는 부호 반전"""
        top = self.top_stratum()
        coordinate_perms = {}
        for pi in permutations(range(5)):
            perm = self.coordinate_permutation(pi)
            if perm is not None:
                coordinate_perms[perm] = pi
        if len(coordinate_perms) != 120:
            return False, len(coordinate_perms), "S5 가 Γ6⁺ 에 충실하게 작용하지 않음"

        generators = []
        for i in (3, 4, 5):
            perm = self.transported_twist(i)
            if perm not in coordinate_perms:
                return False, i, f"비틀기 v{i} 가 좌표 순열이 아님"
            logger.debug(f"E6 비틀기 v{i}: 좌표 순열 {coordinate_perms[perm]}")
            generators.append(perm)
        group = permutation_closure(generators)
        if len(group) != 120:
            return False, len(group), f"생성된 군의 위수 {len(group)}"
        if self.transported_twist(6) != self.sign_flip():
            return False, len(group), "비틀기 v6 가 부호 반전과 다름"
        return len(top) == 16, len(group), None

    # ---------- T-그래프 ----------

    @staticmethod
    def t_adjacent(x: FpVector, y: FpVector) -> bool:
        return sum(1 for a, b in zip(x.entries, y.entries) if a == b) == 1

    def t_graph3(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.space)
        for x, y in combinations(self.space, 2):
            if self.t_adjacent(x, y):
                graph.add_edge(x, y)
        return graph

    def link3(self, v: FpVector) -> FrozenSet[FpVector]:
        return frozenset(x for x in self.space if self.t_adjacent(v, x))

    def t_graph_parameters(self) -> Optional[Tuple[int, int, int, int]]:
        return srg_parameters(self.t_graph3())

    def t_equals_o_on_strata6(self) -> Tuple[bool, int, Optional[str]]:
        count = 0
        for s in sorted(self.gamma_s):
            for beta, beta2 in combinations(self.strata[s], 2):
                x, y = self.map.table[beta], self.map.table[beta2]
                count += 1
                t_side = self.t_adjacent(x, y)
                o_side = form_eval(self.form, x, y) == 0
                root_side = self.system.inner(beta, beta2) == 0
                if not (t_side == o_side == root_side):
                    return False, count, f"s = {s}: {x.label}, {y.label}"
        return True, count, None

    # ---------- 순서 복원 ----------

    def order_step6(self, x: FpVector, alpha: Sequence[int]) -> bool:
        """x + f(α) ∈ Γ_s⁺ 여부"""
        alpha = self.system.check_vector(alpha)
        if not self.system.is_positive(alpha):
            raise ModelError(f"양의 루트가 아닙니다: {format_coeffs(alpha)}")
        s = self.stratum_of.get(x)
        if s is None:
            raise ModelError(f"양의 루트 층 이미지가 아닙니다: {x.label}")
        return (x + self.f(alpha)) in self.gamma_s[s]

    def order_steps6(self) -> Tuple[bool, int, Optional[str]]:
        """x + f(α) ∈ Γ_s⁺ <=> β + α ∈ Δ_s⁺ 전수 검사"""
        count = 0
        for s, roots in self.strata.items():
            members = set(roots)
            for beta in roots:
                x = self.map.table[beta]
                for alpha in self.system.positive_roots:
                    count += 1
                    if self.order_step6(x, alpha) != (add(beta, alpha) in members):
                        return False, count, f"s = {s}, β = {format_coeffs(beta)}, α = {format_coeffs(alpha)}"
        return True, count, None

    def hasse_from_images6(self, s: int) -> nx.Graph:
        """y - x 가 단순근의 상인 쌍을 잇는 그래프 (원상 기준)"""
        if s not in self.gamma_s:
            raise ModelError(f"층 라벨 오류: {s}")
        images = self.gamma_s[s]
        graph = nx.Graph()
        graph.add_nodes_from(self.preimage(x) for x in images)
        for x in images:
            for simple in self.map.S:
                y = x + simple
                if y in images:
                    graph.add_edge(self.preimage(x), self.preimage(y))
        return graph

    def order_recovery6(self) -> Tuple[bool, int, Optional[str]]:
        count = 0
        for s in sorted(self.gamma_s):
            count += 1
            recovered = self.hasse_from_images6(s)
            direct = hasse(self.system, self.strata[s])
            if set(recovered.nodes) != set(direct.nodes) or edge_set(recovered) != edge_set(direct):
                return False, count, f"하세 도표 불일치: s = {s}"
        return True, count, None

    # ---------- 배치 ----------

    def square_layout(self, x: FpVector) -> Tuple[int, int]:
        """행 = (x1, x2), 열 = (x3, x4) 로 정한 4x4 격자 위치"""
        if x not in self.gamma_s[6]:
            raise ModelError(f"Γ6⁺ 의 원소가 아닙니다: {x.label}")
        x1, x2, x3, x4, _ = x.entries
        return 2 * (x1 - 1) + (x2 - 1), 2 * (x3 - 1) + (x4 - 1)


@lru_cache(maxsize=None)
def get_e6_model() -> E6Model:
    """E6 모델 (캐시됨)"""
    logger.debug("E6 모델 생성")
    return E6Model()
