"""
층 포셋의 순서 아이디얼, 열린 사상 h_s, 표준 동형 ψ_s, 그리고
μ, ρ, μ~, ρ~, ν, σ 대칭 체계

루트는 모두 E8 계수(길이 8)로 다룹니다.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from e7_model import get_e7_model
from logger import logger
from root_core import (
    Coeffs,
    add,
    build_root_system,
    dynkin_twist,
    format_coeffs,
    hasse,
    negate,
    pad,
    s_prime,
    sort_key,
    strata,
    sub,
    unit,
)

# 아핀 E7 디킨 도표의 대합 (0 = 아핀 정점)
EPSILON = {0: 7, 7: 0, 1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}

# α̌7 = f⁻¹(303)
CHECK_ALPHA7_LABEL = "303"


class IdealError(ValueError):
    """순서 아이디얼 / 열린 사상 오류"""


@dataclass(frozen=True)
class OrderIdeal:
    s: int
    mask: int
    members: FrozenSet[Coeffs]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, beta) -> bool:
        return tuple(beta) in self.members

    def to_dict(self, poset: "StratumPoset") -> dict:
        return {
            "s": self.s,
            "mask": self.mask,
            "members": [format_coeffs(b) for b in poset.elements if b in self.members],
        }


@dataclass(frozen=True)
class OpenMap:
    s: int
    table: Dict[Coeffs, int]

    def __getitem__(self, beta: Sequence[int]) -> int:
        return self.table[pad(beta, 8)]

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "table": [{"root": format_coeffs(b), "label": h} for b, h in self.table.items()],
        }


@dataclass(frozen=True)
class OpenMapSearch:
    """탐색 결과: 해의 개수와 (유일하면) 그 해"""
    s: int
    solutions: int
    open_map: Optional[OpenMap]
    nodes_visited: int


# ==================== 층 포셋 ====================

class StratumPoset:
    """Δ_s⁺ (E8 계수) 와 루트 순서"""

    def __init__(self, s: int):
        if s not in strata(build_root_system("E", 8)):
            raise IdealError(f"층 라벨 오류: {s}")
        self.s = s
        self.system = build_root_system("E", 8)
        self.elements: List[Coeffs] = strata(self.system)[s]
        self.index: Dict[Coeffs, int] = {b: k for k, b in enumerate(self.elements)}
        # below[k]: 원소 k 이하의 원소들 (자기 자신 포함) 비트마스크
        self.below: List[int] = []
        for beta in self.elements:
            mask = 0
            for k, gamma in enumerate(self.elements):
                if self.system.leq(gamma, beta):
                    mask |= 1 << k
            self.below.append(mask)
        self.full_mask = (1 << len(self.elements)) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def hasse(self) -> nx.Graph:
        return hasse(self.system, self.elements)

    def mask_of(self, members: Iterable[Sequence[int]]) -> int:
        mask = 0
        for beta in members:
            beta = pad(beta, 8)
            if beta not in self.index:
                raise IdealError(f"Δ{self.s}⁺ 의 원소가 아닙니다: {format_coeffs(beta)}")
            mask |= 1 << self.index[beta]
        return mask

    def members_of(self, mask: int) -> FrozenSet[Coeffs]:
        return frozenset(b for k, b in enumerate(self.elements) if mask >> k & 1)

    def is_ideal_mask(self, mask: int) -> bool:
        return all(self.below[k] & ~mask == 0 for k in range(len(self.elements)) if mask >> k & 1)

    def ideal(self, members: Iterable[Sequence[int]]) -> OrderIdeal:
        mask = self.mask_of(members)
        if not self.is_ideal_mask(mask):
            raise IdealError(f"Δ{self.s}⁺ 의 순서 아이디얼이 아닙니다")
        return OrderIdeal(self.s, mask, self.members_of(mask))

    def down_set(self, beta: Sequence[int]) -> OrderIdeal:
        """{β' <= β}"""
        k = self.index[pad(beta, 8)]
        return OrderIdeal(self.s, self.below[k], self.members_of(self.below[k]))


@lru_cache(maxsize=None)
def get_poset(s: int) -> StratumPoset:
    return StratumPoset(s)


@lru_cache(maxsize=None)
def enumerate_ideals(s: int) -> Tuple[OrderIdeal, ...]:
    """모든 순서 아이디얼 (크기, 비트마스크 순)"""
    if not 3 <= s <= 8:
        raise IdealError(f"아이디얼 열거는 3 <= s <= 8 에서만 지원합니다: s = {s}")
    poset = get_poset(s)
    n = len(poset)
    found = {0}
    queue = deque([0])
    while queue:
        mask = queue.popleft()
        for k in range(n):
            if mask >> k & 1:
                continue
            # k 아래의 원소가 모두 이미 들어 있으면 k 를 추가할 수 있음
            if poset.below[k] & ~mask == 1 << k:
                nxt = mask | 1 << k
                if nxt not in found:
                    found.add(nxt)
                    queue.append(nxt)
    ordered = sorted(found, key=lambda m: (bin(m).count("1"), m))
    return tuple(OrderIdeal(s, m, poset.members_of(m)) for m in ordered)


# ==================== 열린 사상 ====================

def find_open_map(s: int) -> OpenMapSearch:
    """h_s(α_s) = s 인 열린 사상 H_s -> Dyn(E_s) 전수 탐색 (해의 개수까지 셈)"""
    if not 3 <= s <= 8:
        raise IdealError(f"열린 사상 탐색은 3 <= s <= 8 에서만 지원합니다: s = {s}")
    poset = get_poset(s)
    graph = poset.hasse()
    dynkin = build_root_system("E", s).dynkin_graph()
    dyn_neighbours = {v: set(dynkin[v]) for v in dynkin}
    neighbours = {v: list(graph[v]) for v in graph}

    start = pad(unit(s, s), 8)
    # 시작점에서 BFS 순서, 연결되지 않은 성분은 뒤에 이어 붙임
    order: List[Coeffs] = []
    for component_root in [start] + poset.elements:
        if component_root in order:
            continue
        order.extend(v for v in nx.bfs_tree(graph, component_root) if v not in order)

    labels: Dict[Coeffs, int] = {}
    solutions: List[Dict[Coeffs, int]] = []
    visited = 0

    def consistent(v: Coeffs) -> bool:
        """v 와 이미 정해진 이웃들에 대해 준동형/국소 전사 조건 확인"""
        for u in [v] + [w for w in neighbours[v] if w in labels]:
            label = labels[u]
            assigned = [labels[w] for w in neighbours[u] if w in labels]
            if any(a not in dyn_neighbours[label] for a in assigned):
                return False
            missing = dyn_neighbours[label] - set(assigned)
            unassigned = sum(1 for w in neighbours[u] if w not in labels)
            if len(missing) > unassigned:
                return False
        return True

    def search(depth: int):
        nonlocal visited
        visited += 1
        if depth == len(order):
            solutions.append(dict(labels))
            return
        v = order[depth]
        if v == start:
            candidates = [s]
        else:
            fixed = [labels[w] for w in neighbours[v] if w in labels]
            if fixed:
                candidates = sorted(set.intersection(*(dyn_neighbours[a] for a in fixed)))
            else:
                candidates = list(range(1, s + 1))
        for label in candidates:
            labels[v] = label
            if consistent(v):
                search(depth + 1)
            del labels[v]

    search(0)
    logger.debug(f"열린 사상 탐색 s = {s}: 해 {len(solutions)}개, 노드 {visited}개")
    unique = None
    if len(solutions) == 1:
        unique = OpenMap(s, {b: solutions[0][b] for b in poset.elements})
    return OpenMapSearch(s, len(solutions), unique, visited)


@lru_cache(maxsize=None)
def open_map(s: int) -> OpenMap:
    """유일한 h_s (없거나 유일하지 않으면 오류)"""
    result = find_open_map(s)
    if result.open_map is None:
        raise IdealError(f"s = {s}: 유일한 열린 사상이 없습니다 (해 {result.solutions}개)")
    return result.open_map


def psi(s: int, ideal: OrderIdeal) -> Coeffs:
    """ψ_s(J) = α_{s'} + Σ_{β∈J} α_{h_s(β)}"""
    if not 3 <= s <= 7:
        raise IdealError(f"ψ_s 는 3 <= s <= 7 에서 정의됩니다: s = {s}")
    poset = get_poset(s)
    if ideal.s != s or not poset.is_ideal_mask(ideal.mask):
        raise IdealError(f"Δ{s}⁺ 의 순서 아이디얼이 아닙니다")
    h = open_map(s)
    result = unit(8, s_prime(s))
    for beta in ideal.members:
        result = add(result, unit(8, h.table[beta]))
    return result


def psi_target(s: int) -> List[Coeffs]:
    """ψ_s 의 공역: Δ_{s'}⁺ (s <= 6) 또는 Δ8⁺ ∖ {θ8}"""
    target = strata(build_root_system("E", 8))[s_prime(s)]
    if s == 7:
        theta8 = build_root_system("E", 8).highest_root
        target = [b for b in target if b != theta8]
    return target


def psi_isomorphism(s: int) -> Tuple[bool, int, Optional[str]]:
    """ψ_s 가 전단사이고 J ⊆ J' <=> ψ(J) <= ψ(J') 인지 전수 검사"""
    system = build_root_system("E", 8)
    ideals = enumerate_ideals(s)
    images = [psi(s, J) for J in ideals]
    target = set(psi_target(s))
    if len(set(images)) != len(images) or set(images) != target:
        return False, len(ideals), f"s = {s}: ψ_s 가 {len(target)}개 공역으로의 전단사가 아님"
    count = 0
    for (J, x), (K, y) in combinations(zip(ideals, images), 2):
        count += 1
        if (J.mask & ~K.mask == 0) != system.leq(x, y) or (K.mask & ~J.mask == 0) != system.leq(y, x):
            return False, count, f"s = {s}: 순서 불일치 {format_coeffs(x)}, {format_coeffs(y)}"
    return True, count, None


def open_map_properties(s: int) -> Tuple[bool, int, Optional[str]]:
    """h_s(α_s) = s, 준동형, 국소 전사를 정점별로 확인"""
    h = open_map(s)
    graph = get_poset(s).hasse()
    dynkin = build_root_system("E", s).dynkin_graph()
    if h.table[pad(unit(s, s), 8)] != s:
        return False, 0, f"h_{s}(α_{s}) ≠ {s}"
    count = 0
    for v in graph:
        count += 1
        image = {h.table[w] for w in graph[v]}
        if image != set(dynkin[h.table[v]]):
            return False, count, f"s = {s}: {format_coeffs(v)} 에서 국소 전사 실패"
    return True, count, None


def lattice_closure(s: int) -> Tuple[bool, int, Optional[str]]:
    """𝒥(Δ_s⁺) 가 ∩, ∪ 에 닫혀 있고 모든 원소가 아래로 닫혀 있는지"""
    poset = get_poset(s)
    ideals = enumerate_ideals(s)
    masks = {J.mask for J in ideals}
    count = 0
    for J in ideals:
        count += 1
        if not poset.is_ideal_mask(J.mask):
            return False, count, f"s = {s}: 아래로 닫히지 않은 원소"
    for J, K in combinations(ideals, 2):
        count += 1
        if (J.mask & K.mask) not in masks or (J.mask | K.mask) not in masks:
            return False, count, f"s = {s}: 격자 연산에 닫혀 있지 않음"
    return True, count, None


# ==================== 대칭 체계 (s = 7) ====================

class InvolutionSystem:
    """Δ7⁺ 위의 μ, ρ 와 아이디얼 위의 μ~, ρ~, Δ8 쪽의 ν, σ"""

    def __init__(self):
        self.model = get_e7_model()
        self.poset = get_poset(7)
        self.e8 = build_root_system("E", 8)
        self.e7 = self.model.system
        self.theta7 = self.e7.highest_root
        self.theta8 = self.e8.highest_root
        self.alpha7 = unit(7, 7)
        self.alpha8 = unit(8, 8)
        self.check_alpha7: Coeffs = self.model.preimage(self.model.vector(CHECK_ALPHA7_LABEL))
        self.h7 = open_map(7)
        self._twist6 = None

        self.mu_table: Dict[Coeffs, Coeffs] = {b: self._mu(b) for b in self.model.strata[7]}
        self.rho_table: Dict[Coeffs, Coeffs] = {b: self._rho(b) for b in self.model.strata[7]}

    # ---------- 루트 위의 사상 ----------

    def simple(self, k: int) -> Coeffs:
        """α_k (k = 0 은 아핀 정점 α̂7 = -θ7)"""
        return negate(self.theta7) if k == 0 else unit(7, k)

    def _mu(self, beta: Coeffs) -> Coeffs:
        """μ(β) = -Σ β^k α_{ε(k)}"""
        result = (0,) * 7
        for k, c in enumerate(beta, 1):
            if c:
                result = sub(result, tuple(c * v for v in self.simple(EPSILON[k])))
        return result

    def _rho(self, beta: Coeffs) -> Coeffs:
        """ρ = μ ∘ (v6 비틀기), 음의 루트는 부호를 바꿔 Δ7⁺ 로"""
        if self._twist6 is None:
            self._twist6 = dynkin_twist(self.e7, 6).permutation()
        image = self._twist6[beta]
        if not self.e7.is_positive(image):
            image = negate(image)
        return self._mu(image)

    def mu(self, beta: Sequence[int]) -> Coeffs:
        return self.mu_table[tuple(beta)[:7]]

    def rho(self, beta: Sequence[int]) -> Coeffs:
        return self.rho_table[tuple(beta)[:7]]

    def nu(self, beta: Sequence[int]) -> Coeffs:
        """ν(β) = θ8 - β"""
        return sub(self.theta8, pad(beta, 8))

    def sigma(self, beta: Sequence[int]) -> Coeffs:
        """σ(β) = θ8 - α8 - μ(β - α8)"""
        lowered = sub(pad(beta, 8), self.alpha8)
        if lowered[7] != 0 or lowered[:7] not in self.mu_table:
            raise IdealError(f"σ 의 정의역 밖입니다: {format_coeffs(beta)}")
        return sub(sub(self.theta8, self.alpha8), pad(self.mu(lowered[:7]), 8))

    # ---------- 아이디얼 위의 사상 ----------

    def ideal_of(self, members: Iterable[Sequence[int]]) -> OrderIdeal:
        return self.poset.ideal(pad(b, 8) for b in members)

    def up_set(self, beta: Sequence[int]) -> FrozenSet[Coeffs]:
        beta = tuple(beta)[:7]
        return frozenset(b for b in self.model.strata[7] if self.e7.leq(beta, b))

    def down_set7(self, beta: Sequence[int]) -> FrozenSet[Coeffs]:
        beta = tuple(beta)[:7]
        return frozenset(b for b in self.model.strata[7] if self.e7.leq(b, beta))

    def members7(self, ideal: OrderIdeal) -> FrozenSet[Coeffs]:
        return frozenset(b[:7] for b in ideal.members)

    def mu_tilde(self, ideal: OrderIdeal) -> OrderIdeal:
        """μ~(J) = {μ(β) : β ∉ J}"""
        inside = self.members7(ideal)
        return self.ideal_of(self.mu(b) for b in self.model.strata[7] if b not in inside)

    def part(self, ideal: OrderIdeal) -> int:
        """𝒥_0 .. 𝒥_3 분할 번호"""
        if not ideal.members:
            return 0
        if ideal.mask == self.poset.full_mask:
            return 3
        return 2 if pad(self.check_alpha7, 8) in ideal.members else 1

    def rho_tilde(self, ideal: OrderIdeal) -> OrderIdeal:
        """ρ~(J) = ρ(J ∖ {α7}) ∪ {β <= α̌7} (J ∈ 𝒥_1)"""
        if self.part(ideal) != 1:
            raise IdealError("ρ~ 는 𝒥_1 에서만 정의됩니다")
        inside = self.members7(ideal) - {self.alpha7}
        return self.ideal_of(set(self.rho(b) for b in inside) | self.down_set7(self.check_alpha7))

    def psi7(self, ideal: OrderIdeal) -> Coeffs:
        return psi(7, ideal)

    # ---------- 부분 포셋 ----------

    def d_set(self) -> FrozenSet[Coeffs]:
        """D = Δ7⁺ ∖ ({α7} ∪ {β >= α̌7})"""
        return frozenset(self.model.strata[7]) - {self.alpha7} - self.up_set(self.check_alpha7)

    def antilink_preimage(self, label: str) -> FrozenSet[Coeffs]:
        v = self.model.vector(label)
        return frozenset(self.model.preimage(x) for x in self.model.antilink(v) & self.model.gamma_s[7])

    @staticmethod
    def sub_ideals(elements: FrozenSet[Coeffs], leq) -> List[FrozenSet[Coeffs]]:
        """작은 부분 포셋의 순서 아이디얼 (아래로 닫힌 부분집합)"""
        ordered = sorted(elements, key=sort_key)
        found = {frozenset()}
        queue = deque([frozenset()])
        while queue:
            current = queue.popleft()
            for beta in ordered:
                if beta in current:
                    continue
                if all(g in current for g in ordered if g != beta and leq(g, beta)):
                    nxt = current | {beta}
                    if nxt not in found:
                        found.add(nxt)
                        queue.append(nxt)
        return sorted(found, key=lambda m: (len(m), sorted(m)))

    # ---------- 검증 ----------

    def coordinate_descriptions(self) -> Tuple[bool, int, Optional[str]]:
        """f 아래에서 μ(abc) = cba, ρ(abc) = bca, μ(α̌7) = α̌7"""
        count = 0
        for beta in self.model.strata[7]:
            count += 1
            a, b, c = self.model.f(beta).digits
            if self.model.f(self.mu(beta)).digits != (c, b, a):
                return False, count, f"μ({format_coeffs(beta)}) 불일치"
            if self.model.f(self.rho(beta)).digits != (b, c, a):
                return False, count, f"ρ({format_coeffs(beta)}) 불일치"
        if self.mu(self.check_alpha7) != self.check_alpha7:
            return False, count, "α̌7 가 μ 의 고정점이 아님"
        if self.e7.inner(self.check_alpha7, self.alpha7) != 0 or self.e7.inner(self.check_alpha7, self.theta7) != 0:
            return False, count, "α̌7 가 α7, α̂7 과 직교하지 않음"
        return True, count, None

    def partition_checks(self) -> Tuple[bool, int, Optional[str]]:
        """μ~ 는 포함 역전 대합, 𝒥_i <-> 𝒥_{3-i}, ψ7∘μ~ = ν∘ψ7, ψ7(𝒥_i) = {β^8 = 1, β^7 = i}"""
        ideals = enumerate_ideals(7)
        count = 0
        sizes = [0, 0, 0, 0]
        for J in ideals:
            count += 1
            i = self.part(J)
            sizes[i] += 1
            image = self.mu_tilde(J)
            if self.mu_tilde(image) != J or self.part(image) != 3 - i:
                return False, count, f"μ~ 분할 불일치 (𝒥_{i})"
            x = self.psi7(J)
            if self.psi7(image) != self.nu(x):
                return False, count, "ψ7∘μ~ ≠ ν∘ψ7"
            if x[7] != 1 or x[6] != i:
                return False, count, f"ψ7(J) = {format_coeffs(x)} 가 𝒥_{i} 설명과 다름"
        for J, K in combinations(ideals, 2):
            count += 1
            if (J.mask & ~K.mask == 0) != (self.mu_tilde(K).mask & ~self.mu_tilde(J).mask == 0):
                return False, count, "μ~ 가 포함 관계를 뒤집지 않음"
        if sizes != [1, 27, 27, 1]:
            return False, count, f"분할 크기 {sizes}"
        return True, count, None

    def rotation_checks(self) -> Tuple[bool, int, Optional[str]]:
        """𝒥_1 ≅ 𝒥(𝓛ᶜ(033)), 𝒥_2 ≅ 𝒥(𝓛ᶜ(330)), ρ(D) = P2, ρ~ 전단사, ψ7∘ρ~ = σ∘ψ7"""
        d = self.d_set()
        p2 = self.antilink_preimage("330")
        if d != self.antilink_preimage("033"):
            return False, 0, "D ≠ f⁻¹(𝓛ᶜ(033) ∩ Γ7⁺)"
        if frozenset(self.rho(b) for b in d) != p2:
            return False, 0, "ρ(D) ≠ f⁻¹(𝓛ᶜ(330) ∩ Γ7⁺)"

        ideals = enumerate_ideals(7)
        part1 = {J.mask for J in ideals if self.part(J) == 1}
        part2 = {J.mask for J in ideals if self.part(J) == 2}
        leq = self.e7.leq
        from_d = {self.ideal_of(set(I) | {self.alpha7}).mask for I in self.sub_ideals(d, leq)}
        down = self.down_set7(self.check_alpha7)
        from_p2 = {self.ideal_of(set(I) | down).mask for I in self.sub_ideals(p2, leq)}
        if from_d != part1 or from_p2 != part2:
            return False, 0, "𝒥_1 / 𝒥_2 의 부분 포셋 설명 불일치"

        count = 0
        images = set()
        for J in ideals:
            if self.part(J) != 1:
                continue
            count += 1
            K = self.rho_tilde(J)
            images.add(K.mask)
            if self.part(K) != 2:
                return False, count, "ρ~(J) ∉ 𝒥_2"
            if self.psi7(K) != self.sigma(self.psi7(J)):
                return False, count, "ψ7∘ρ~ ≠ σ∘ψ7"
        if images != part2:
            return False, count, "ρ~ 가 전단사가 아님"
        return True, count, None

    def label_symmetries(self) -> Tuple[bool, int, Optional[str]]:
        """h7∘μ = h7 (전체), h7∘ρ = ε∘h7 (D 위), ε-류의 S3 불변성"""
        count = 0
        for beta in self.model.strata[7]:
            count += 1
            if self.h7[self.mu(beta)] != self.h7[beta]:
                return False, count, f"h7∘μ ≠ h7 at {format_coeffs(beta)}"
        for beta in sorted(self.d_set(), key=sort_key):
            count += 1
            if self.h7[self.rho(beta)] != EPSILON[self.h7[beta]]:
                return False, count, f"h7∘ρ ≠ ε∘h7 at {format_coeffs(beta)}"

        def eps_class(x) -> int:
            label = self.h7[self.model.preimage(x)]
            return min(label, EPSILON[label]) if label != 7 else 7

        for pi in permutations(range(3)):
            for x in self.model.gamma7:
                count += 1
                y = self.model.vector("".join(str(x.digits[k]) for k in pi))
                if eps_class(x) != eps_class(y):
                    return False, count, f"ε-류가 S3 불변이 아님: {x.label}"
        return True, count, None

    def face_rule(self) -> Dict[int, Tuple[int, int]]:
        """라벨별 (같은 면 위의 H7 경로로 7 에 닿는 원소 수, 전체 원소 수)"""
        graph = get_poset(7).hasse()
        model = self.model
        face_of = {v: model.cube_layout(model.f(v[:7]))[0] for v in graph}
        result: Dict[int, Tuple[int, int]] = {}
        for label in (1, 3, 5, 6):
            members = [b for b in model.strata[7] if self.h7[b] == label]
            reached = 0
            for beta in members:
                node = pad(beta, 8)
                same_face = graph.subgraph(v for v in graph if face_of[v] == face_of[node])
                component = nx.node_connected_component(same_face, node)
                reached += any(self.h7[v] == 7 for v in component)
            result[label] = (reached, len(members))
        return result

    def face_rule_check(self) -> Tuple[bool, int, Optional[str]]:
        """5, 6 은 모두 닿고 1, 3 은 하나도 닿지 않음"""
        rule = self.face_rule()
        ok = all(rule[k][0] == rule[k][1] for k in (5, 6)) and all(rule[k][0] == 0 for k in (1, 3))
        return ok, sum(total for _, total in rule.values()), None if ok else f"면 규칙 불일치: {rule}"


@lru_cache(maxsize=None)
def get_involution_system() -> InvolutionSystem:
    return InvolutionSystem()
