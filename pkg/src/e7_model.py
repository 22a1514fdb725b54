"""
E7 압축 모델: Δ⁺(E7) ∪ {0} -> F³ (F = Z/2 x Z/2)

T-그래프, 링크, 층 이미지, 직교 삼중쌍, 순서 복원, W(E6) 작용,
더블 식스, 정육면체 모서리 배치를 제공합니다.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from compression import CompressionMap, verify_injective
from config import CLOSURE_LIMIT
from fp_space import FpVector, form_eval, klein_symplectic_form, o_graph, srg_parameters, n_graph
from logger import logger
from root_core import (
    Coeffs,
    STRATUM_LABELS,
    add,
    build_root_system,
    dynkin_twist,
    format_coeffs,
    hasse,
    pad,
    stratum,
    strata,
    sub,
    tilde,
    unit,
    zeta,
)

E7_S_LABELS = ("100", "030", "300", "111", "003", "001", "033")

FACES = ("a", "b", "c")

Permutation = Tuple[int, ...]


class ModelError(ValueError):
    """E7/E6 모델 연산 오류"""


@dataclass(frozen=True)
class StratumImage:
    s: int
    images: FrozenSet[FpVector]
    anchor: FpVector

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "anchor": self.anchor.label,
            "images": sorted(x.label for x in self.images),
        }


@dataclass(frozen=True)
class DoubleSix:
    """r_α 가 맞바꾸는 12 개 정점: A = {<α,β> = 1}, B = A ⊕ f(α)"""
    alpha: Coeffs
    half_a: Tuple[FpVector, ...]
    half_b: Tuple[FpVector, ...]

    @property
    def vertices(self) -> FrozenSet[FpVector]:
        return frozenset(self.half_a) | frozenset(self.half_b)

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "A": [x.label for x in self.half_a],
            "B": [x.label for x in self.half_b],
        }


def edge_set(graph: nx.Graph) -> FrozenSet[FrozenSet]:
    return frozenset(frozenset(edge) for edge in graph.edges)


def standard_e7_map() -> CompressionMap:
    """s_1 = 100, ..., s_7 = 033"""
    form = klein_symplectic_form(3)
    system = build_root_system("E", 7)
    return CompressionMap(system, form, [form.vector(label) for label in E7_S_LABELS], name="E7/F^3")


# ==================== 순열군 ====================

def compose(g: Permutation, h: Permutation) -> Permutation:
    """(g ∘ h)(i) = g(h(i))"""
    return tuple(g[i] for i in h)


def permutation_closure(generators: Iterable[Permutation], limit: int = CLOSURE_LIMIT) -> FrozenSet[Permutation]:
    """생성원으로 만든 유한 순열군 (BFS)"""
    generators = list(generators)
    if not generators:
        return frozenset()
    identity = tuple(range(len(generators[0])))
    group = {identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for gen in generators:
            h = compose(gen, g)
            if h not in group:
                group.add(h)
                if len(group) > limit:
                    raise ModelError(f"순열군 크기가 제한({limit})을 넘었습니다")
                queue.append(h)
    return frozenset(group)


class E7Model:
    """표준 E7 압축 사상 위의 구조"""

    def __init__(self):
        self.map = standard_e7_map()
        result = verify_injective(self.map)
        if not (result.injective and result.in_gamma):
            raise ModelError("표준 E7 사상이 Δ⁺ 에서 단사가 아닙니다")

        self.system = self.map.system
        self.form = self.map.form
        self.space: List[FpVector] = self.form.vectors()
        self.zero = self.map.apply((0,) * 7)

        self.strata: Dict[int, List[Coeffs]] = strata(self.system)
        self.stratum_of: Dict[FpVector, int] = {}
        for s, roots in self.strata.items():
            for beta in roots:
                self.stratum_of[self.map.table[beta]] = s
        self.gamma_s: Dict[int, FrozenSet[FpVector]] = {
            s: frozenset(self.map.table[b] for b in roots) for s, roots in self.strata.items()
        }
        self.z: Dict[int, FpVector] = {s: self.map.apply(zeta(s)) for s in self.strata}

        # Γ7⁺ 정점 순서 (자릿수 사전식)
        self.gamma7: List[FpVector] = sorted(self.gamma_s[7])
        self._point_index = {x: k for k, x in enumerate(self.gamma7)}
        self._links: Dict[FpVector, FrozenSet[FpVector]] = {}

    def f(self, beta: Sequence[int]) -> FpVector:
        return self.map.apply(beta)

    def preimage(self, x: FpVector) -> Coeffs:
        """Δ⁺ ∪ {0} 에서의 원상 (F³ 전체에서 전단사)"""
        beta = self.map.preimage(x)
        if beta is None:
            raise ModelError(f"원상 없음: {x.label}")
        return beta

    def vector(self, label: str) -> FpVector:
        return self.form.vector(label)

    # ---------- T-그래프 / 링크 ----------

    @staticmethod
    def t_adjacent(x: FpVector, y: FpVector) -> bool:
        """자릿수 중 정확히 하나가 같으면 인접"""
        return sum(1 for a, b in zip(x.digits, y.digits) if a == b) == 1

    def t_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.space)
        for x, y in combinations(self.space, 2):
            if self.t_adjacent(x, y):
                graph.add_edge(x, y)
        return graph

    def link(self, v: FpVector) -> FrozenSet[FpVector]:
        if v not in self._links:
            self._links[v] = frozenset(x for x in self.space if self.t_adjacent(v, x))
        return self._links[v]

    def antilink(self, v: FpVector) -> FrozenSet[FpVector]:
        return frozenset(self.space) - self.link(v) - {v}

    def translation_invariant(self) -> Tuple[bool, int, Optional[str]]:
        """𝓛(x ⊕ t) = 𝓛(x) ⊕ t"""
        count = 0
        base = self.link(self.zero)
        for t in self.space:
            count += 1
            if self.link(t) != frozenset(x ^ t for x in base):
                return False, count, f"𝓛({t.label}) 가 𝓛(0) ⊕ t 와 다름"
        return True, count, None

    # ---------- 층 이미지 ----------

    def stratum_images(self) -> List[StratumImage]:
        return [StratumImage(s, self.gamma_s[s], self.z[s]) for s in sorted(self.gamma_s)]

    def gamma7_is_link_of_zero(self) -> bool:
        """Γ7⁺ = 𝓛(0) = {정확히 한 자리가 0}"""
        exactly_one_zero = frozenset(x for x in self.space if x.digits.count(0) == 1)
        return self.gamma_s[7] == self.link(self.zero) == exactly_one_zero

    def stratum_identities(self) -> Tuple[bool, int, Optional[str]]:
        """층을 링크/안티링크로 표현하는 두 항등식"""
        labels = sorted(self.gamma_s)
        count = 0
        for s in labels:
            higher = [t for t in labels if t > s]
            expected = set(self.link(self.z[s]))
            for t in higher:
                expected &= self.antilink(self.z[t])
            count += 1
            if frozenset(expected) != self.gamma_s[s]:
                return False, count, f"항등식 (1) 실패: s = {s}"

            shifted = frozenset(x ^ self.z[s] for x in self.gamma_s[s])
            expected = set(self.link(self.z[7]))
            for t in [t for t in labels if s <= t < 7]:
                expected &= self.antilink(self.z[t])
            count += 1
            if frozenset(expected) != shifted:
                return False, count, f"항등식 (2) 실패: s = {s}"
        return True, count, None

    def partitions_space(self) -> bool:
        """{0} 과 Γ_s⁺ 들이 F³ 을 분할"""
        seen = {self.zero}
        for images in self.gamma_s.values():
            if seen & images:
                return False
            seen |= images
        return seen == set(self.space)

    def t_equals_o_on_strata(self) -> Tuple[bool, int, Optional[str]]:
        """각 층 이미지에서 T-인접 <=> (x|y) = 0 <=> 원상 직교"""
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

    # ---------- 직교 삼중쌍 ----------

    def _require_gamma7(self, x: FpVector):
        if x not in self.gamma_s[7]:
            raise ModelError(f"Γ7⁺ 의 원소가 아닙니다: {x.label}")

    def orth_triple(self, x1: FpVector, x2: FpVector) -> FpVector:
        """직교하는 x1, x2 ∈ Γ7⁺ 에 대해 x3 = x1 ⊕ x2 (E8 계산으로 교차검증)"""
        self._require_gamma7(x1)
        self._require_gamma7(x2)
        if x1 == x2 or form_eval(self.form, x1, x2) != 0:
            raise ModelError(f"직교하지 않는 쌍: {x1.label}, {x2.label}")
        x3 = x1 ^ x2
        if x3 not in self.gamma_s[7]:
            raise ModelError(f"x1 ⊕ x2 = {x3.label} 가 Γ7⁺ 에 없습니다")

        # β3 = θ8 - 2α8 - β1 - β2
        e8 = build_root_system("E", 8)
        beta3 = sub(sub(sub(e8.highest_root, (0,) * 7 + (2,)), pad(self.preimage(x1))), pad(self.preimage(x2)))
        if beta3[7] != 0 or not self.system.is_positive(beta3[:7]) or self.f(beta3[:7]) != x3:
            raise ModelError(f"E8 교차검증 실패: β3 = {format_coeffs(beta3)}")
        return x3

    def orth_triples(self) -> Tuple[bool, int, Optional[str]]:
        """모든 쌍: 유일한 완성, 역방향, 층별 (x|y) = 0 <=> x ⊕ y ∈ Γ7⁺"""
        gamma7 = self.gamma_s[7]
        count = 0
        for x1, x2 in combinations(self.gamma7, 2):
            count += 1
            orthogonal = form_eval(self.form, x1, x2) == 0
            if orthogonal:
                x3 = self.orth_triple(x1, x2)
                completions = [
                    x for x in self.gamma7
                    if x not in (x1, x2)
                    and form_eval(self.form, x, x1) == 0
                    and form_eval(self.form, x, x2) == 0
                    and (x1 ^ x2 ^ x).is_zero()
                ]
                if completions != [x3]:
                    return False, count, f"완성 불일치: {x1.label}, {x2.label}"
            elif (x1 ^ x2) in gamma7 or form_eval(self.form, x1, x2) != 1:
                return False, count, f"역방향 실패: {x1.label}, {x2.label}"

        for s in sorted(self.gamma_s):
            for x, y in combinations(sorted(self.gamma_s[s]), 2):
                count += 1
                if (form_eval(self.form, x, y) == 0) != ((x ^ y) in gamma7):
                    return False, count, f"층 {s}: {x.label}, {y.label}"
        return True, count, None

    # ---------- 순서 복원 ----------

    def order_step(self, x: FpVector, alpha: Sequence[int]) -> bool:
        """x ⊕ f(α) ∈ Γ_s⁺ 여부 (α ∈ Δ⁺ ∖ Δ7⁺)"""
        alpha = self.system.check_vector(alpha)
        if not self.system.is_positive(alpha) or stratum(alpha) == 7:
            raise ModelError(f"α 는 Δ7⁺ 밖의 양의 루트여야 합니다: {format_coeffs(alpha)}")
        s = self.stratum_of.get(x)
        if s is None:
            raise ModelError(f"층 이미지가 아닙니다: {x.label}")
        return (x ^ self.f(alpha)) in self.gamma_s[s]

    def order_steps(self) -> Tuple[bool, int, Optional[str]]:
        """x ⊕ f(α) ∈ Γ_s⁺ <=> β ± α ∈ Δ_s⁺ 전수 검사"""
        e6_roots = [b for b in self.system.positive_roots if b[6] == 0]
        count = 0
        for s, roots in self.strata.items():
            members = set(roots)
            for beta in roots:
                x = self.map.table[beta]
                for alpha in e6_roots:
                    count += 1
                    expected = add(beta, alpha) in members or sub(beta, alpha) in members
                    if self.order_step(x, alpha) != expected:
                        return False, count, f"s = {s}, β = {format_coeffs(beta)}, α = {format_coeffs(alpha)}"
        return True, count, None

    def hasse_from_images(self, s: int) -> nx.Graph:
        """x 와 x ⊕ f(α_i) (i <= 6) 를 잇는 그래프를 원상으로 옮긴 것"""
        if s not in self.gamma_s:
            raise ModelError(f"층 라벨 오류: {s}")
        images = self.gamma_s[s]
        graph = nx.Graph()
        graph.add_nodes_from(self.preimage(x) for x in images)
        for x in images:
            for i in range(1, 7):
                y = x ^ self.map.S[i - 1]
                if y in images:
                    graph.add_edge(self.preimage(x), self.preimage(y))
        return graph

    def order_recovery(self) -> Tuple[bool, int, Optional[str]]:
        count = 0
        for s in sorted(self.gamma_s):
            count += 1
            recovered = self.hasse_from_images(s)
            direct = hasse(self.system, self.strata[s])
            if set(recovered.nodes) != set(direct.nodes) or edge_set(recovered) != edge_set(direct):
                return False, count, f"하세 도표 불일치: s = {s}"
        return True, count, None

    def cross_stratum(self, alpha: Sequence[int], beta: Sequence[int]) -> Tuple[bool, bool]:
        """β̃ 들로 계산한 (α <= β, α ⊥ β)"""
        s, t = stratum(alpha), stratum(beta)
        if s > t:
            raise ModelError(f"층 순서 오류: s = {s} > t = {t}")
        at, bt = tilde(alpha), tilde(beta)
        leq = self.system.leq(at, bt)
        if s == t:
            return leq, self.system.inner(at, bt) == 0
        # s < t 에서는 mod 2: (f(α̃)|f(β̃)) = (z_s|f(β̃))
        fb = self.f(bt)
        return leq, form_eval(self.form, self.f(at), fb) == form_eval(self.form, self.z[s], fb)

    def cross_strata(self) -> Tuple[bool, int, Optional[str]]:
        count = 0
        for alpha in self.system.positive_roots:
            for beta in self.system.positive_roots:
                if stratum(alpha) > stratum(beta):
                    continue
                count += 1
                leq, orth = self.cross_stratum(alpha, beta)
                if leq != self.system.leq(alpha, beta) or orth != (self.system.inner(alpha, beta) == 0):
                    return False, count, f"{format_coeffs(alpha)}, {format_coeffs(beta)}"
        return True, count, None

    # ---------- W(E6) 작용 ----------

    def _e6_root(self, alpha: Sequence[int]) -> Coeffs:
        alpha = pad(alpha, 7)
        if not self.system.is_root(alpha) or alpha[6] != 0:
            raise ModelError(f"E6 의 루트가 아닙니다: {format_coeffs(alpha)}")
        return alpha

    def reflect(self, alpha: Sequence[int], x: FpVector) -> FpVector:
        """r_α(x) = x ⊕ f(α) (Γ7⁺ 안에 있을 때), 아니면 x"""
        alpha = self._e6_root(alpha)
        self._require_gamma7(x)
        y = x ^ self.f(alpha)
        return y if y in self.gamma_s[7] else x

    def reflection_permutation(self, alpha: Sequence[int]) -> Permutation:
        return tuple(self._point_index[self.reflect(alpha, x)] for x in self.gamma7)

    def point_permutation(self, func: Callable[[FpVector], FpVector]) -> Permutation:
        return tuple(self._point_index[func(x)] for x in self.gamma7)

    def reflections_agree(self) -> Tuple[bool, int, Optional[str]]:
        """F³ 위의 r_α 가 루트 반사와 일치하고 여섯 쌍을 맞바꾸는지"""
        count = 0
        for alpha in [b for b in self.system.positive_roots if b[6] == 0]:
            swapped = 0
            for beta in self.strata[7]:
                count += 1
                x = self.map.table[beta]
                image = self.reflect(alpha, x)
                if image != self.f(self.system.reflect(alpha, beta)) or self.reflect(alpha, image) != x:
                    return False, count, f"α = {format_coeffs(alpha)}, x = {x.label}"
                swapped += image != x
            if swapped != 12:
                return False, count, f"α = {format_coeffs(alpha)}: 교환 정점 {swapped}개"
        return True, count, None

    def double_sixes(self) -> List[DoubleSix]:
        result = []
        for alpha in [b for b in self.system.positive_roots if b[6] == 0]:
            fa = self.f(alpha)
            half_a = tuple(sorted(self.map.table[b] for b in self.strata[7] if self.system.inner(alpha, b) == 1))
            half_b = tuple(x ^ fa for x in half_a)
            result.append(DoubleSix(alpha, half_a, half_b))
        return result

    def double_six_structure(self) -> Tuple[bool, int, Optional[str]]:
        """반쪽은 O-그래프에서 독립, 슐래플리 그래프에서 극대 6-클릭; O-그래프는 K6,6 - 완전매칭"""
        o = o_graph(self.form, self.gamma7)
        schlafli = n_graph(self.form, self.gamma7)
        sixes = self.double_sixes()
        if len(sixes) != 36 or len({frozenset((ds.half_a, ds.half_b)) for ds in sixes}) != 36:
            return False, len(sixes), "더블 식스 개수 불일치"
        count = 0
        for ds in sixes:
            count += 1
            for half in (ds.half_a, ds.half_b):
                if len(set(half)) != 6:
                    return False, count, f"α = {format_coeffs(ds.alpha)}: 반쪽 크기"
                if any(o.has_edge(x, y) for x, y in combinations(half, 2)):
                    return False, count, f"α = {format_coeffs(ds.alpha)}: O-그래프에서 독립 아님"
                outside = [v for v in self.gamma7 if v not in half]
                if any(all(schlafli.has_edge(v, x) for x in half) for v in outside):
                    return False, count, f"α = {format_coeffs(ds.alpha)}: 극대 클릭 아님"
            for k, x in enumerate(ds.half_a):
                for m, y in enumerate(ds.half_b):
                    if o.has_edge(x, y) != (k != m):
                        return False, count, f"α = {format_coeffs(ds.alpha)}: K6,6 구조 아님"
        return True, count, None

    def weyl_e6_closure(self) -> FrozenSet[Permutation]:
        generators = [self.reflection_permutation(unit(7, i)) for i in range(1, 7)]
        group = permutation_closure(generators)
        logger.debug(f"W(E6) 폐포 크기: {len(group)}")
        return group

    def coordinate_symmetries(self) -> Dict[str, FrozenSet[Permutation]]:
        """F 의 자기동형(각 좌표별)과 좌표 순열이 만드는 군"""
        result = {}
        for k, face in enumerate(FACES):
            perms = []
            for phi in permutations((1, 2, 3)):
                mapping = {0: 0, 1: phi[0], 2: phi[1], 3: phi[2]}
                perms.append(self.point_permutation(
                    lambda x, k=k, mapping=mapping: self._with_digit(x, k, mapping[x.digits[k]])
                ))
            result[face] = frozenset(perms)
        result["swap"] = frozenset(
            self.point_permutation(lambda x, pi=pi: self._permute_digits(x, pi))
            for pi in permutations(range(3))
        )
        return result

    def _with_digit(self, x: FpVector, k: int, value: int) -> FpVector:
        digits = list(x.digits)
        digits[k] = value
        return self.vector("".join(str(d) for d in digits))

    def _permute_digits(self, x: FpVector, pi: Sequence[int]) -> FpVector:
        return self.vector("".join(str(x.digits[i]) for i in pi))

    def weyl_action(self) -> Tuple[bool, int, Optional[str]]:
        """|W(E6)| = 51840, 좌표 자기동형 포함, 반사 쌍 생성 관계, O-그래프 보존"""
        group = self.weyl_e6_closure()
        if len(group) != 51840:
            return False, len(group), f"군의 위수 {len(group)}"

        o = o_graph(self.form, self.gamma7)
        edges = {frozenset((self._point_index[x], self._point_index[y])) for x, y in o.edges}
        for i in range(1, 7):
            perm = self.reflection_permutation(unit(7, i))
            if {frozenset((perm[a], perm[b])) for a, b in map(tuple, edges)} != edges:
                return False, len(group), f"r_α{i} 가 O-그래프를 보존하지 않음"

        symmetries = self.coordinate_symmetries()
        for name, perms in symmetries.items():
            if not perms <= group:
                return False, len(group), f"좌표 대칭 {name} 이 군에 없음"

        theta6 = build_root_system("E", 6).highest_root + (0,)
        pairs = {"a": (unit(7, 1), unit(7, 3)), "b": (theta6, unit(7, 2)), "c": (unit(7, 6), unit(7, 5))}
        for face, (r1, r2) in pairs.items():
            generated = permutation_closure([self.reflection_permutation(r1), self.reflection_permutation(r2)])
            if generated != symmetries[face]:
                return False, len(group), f"좌표 {face} 의 S3 가 반사 쌍으로 생성되지 않음"
        return True, len(group), None

    # ---------- 디킨 비틀기 ----------

    def transported_twist(self, i: int) -> Permutation:
        """dynkin_twist(E7, i) 를 f 로 옮긴 Γ7⁺ 위의 순열"""
        twist = dynkin_twist(self.system, i)
        table = twist.permutation()
        return self.point_permutation(lambda x: self.f(table[self.preimage(x)]))

    def listed_symmetries(self) -> List[Permutation]:
        """(c,b,a), (a,c,b), a 의 1->2->3->1, a 의 2<->3"""
        cycle = {0: 0, 1: 2, 2: 3, 3: 1}
        swap = {0: 0, 1: 1, 2: 3, 3: 2}
        return [
            self.point_permutation(lambda x: self._permute_digits(x, (2, 1, 0))),
            self.point_permutation(lambda x: self._permute_digits(x, (0, 2, 1))),
            self.point_permutation(lambda x: self._with_digit(x, 0, cycle[x.digits[0]])),
            self.point_permutation(lambda x: self._with_digit(x, 0, swap[x.digits[0]])),
        ]

    def symmetry_groups(self) -> Dict[str, int]:
        twists = permutation_closure(self.transported_twist(i) for i in (7, 6, 4, 3))
        listed = permutation_closure(self.listed_symmetries())
        return {
            "twists": len(twists),
            "listed": len(listed),
            "equal": int(twists == listed),
        }

    def twist_check(self) -> Tuple[bool, int, Optional[str]]:
        """비틀기 7, 6, 3 은 나열된 대칭과 같고, 두 생성원 집합은 같은 군을 생성"""
        listed = self.listed_symmetries()
        expected = {7: listed[0], 6: listed[1], 3: listed[3]}
        count = 0
        for i, perm in expected.items():
            count += 1
            if self.transported_twist(i) != perm:
                return False, count, f"비틀기 v{i} 불일치"
        groups = self.symmetry_groups()
        count += 1
        if not groups["equal"] or groups["twists"] != 1296:
            return False, count, f"대칭군 불일치: {groups}"
        return True, count, None

    # ---------- 배치 ----------

    def cube_layout(self, x: FpVector) -> Tuple[str, int, int]:
        """(면, 행, 열): 면 = 0 인 좌표, 행/열 = 나머지 두 자릿수"""
        self._require_gamma7(x)
        digits = x.digits
        k = digits.index(0)
        row, col = [d for m, d in enumerate(digits) if m != k]
        return FACES[k], row, col

    def graph_parameters(self) -> Dict[str, Optional[Tuple[int, int, int, int]]]:
        return {
            "t_graph": srg_parameters(self.t_graph()),
            "o_graph_gamma7": srg_parameters(o_graph(self.form, self.gamma7)),
            "schlafli": srg_parameters(n_graph(self.form, self.gamma7)),
        }


@lru_cache(maxsize=None)
def get_e7_model() -> E7Model:
    """E7 모델 (캐시됨)"""
    logger.debug("E7 모델 생성")
    return E7Model()
