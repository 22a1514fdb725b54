"""
단순 레이스(simply-laced) 루트 시스템 구성 모듈

- 루트는 단순근 기저에 대한 정수 계수 튜플(Coeffs)로 표현합니다.
- A_n, D_n, E_n (3 <= n <= 8) 을 지원합니다.
- E_n 의 단순근 번호는 E_8 디킨 도표(1-3-4-5-6-7-8, 2 는 4 에 연결)를 따릅니다.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

Coeffs = Tuple[int, ...]

# E_8 디킨 도표의 변 (E_n 은 n 이하의 정점으로 제한)
E_DYNKIN_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))

# s = 2 는 s = 3 에 합쳐짐
STRATUM_LABELS = (1, 3, 4, 5, 6, 7, 8)

# R^8 좌표를 2배 한 정수 좌표 (표시/교차검증 전용)
AMBIENT_SIMPLE_ROOTS_X2 = (
    (2, -2, 0, 0, 0, 0, 0, 0),
    (-1, -1, -1, 1, 1, 1, 1, 1),
    (0, 2, -2, 0, 0, 0, 0, 0),
    (0, 0, 2, -2, 0, 0, 0, 0),
    (0, 0, 0, 2, -2, 0, 0, 0),
    (0, 0, 0, 0, 2, -2, 0, 0),
    (0, 0, 0, 0, 0, 2, -2, 0),
    (0, 0, 0, 0, 0, 0, 2, -2),
)


class RootSystemError(ValueError):
    """루트 시스템 구성/연산 오류"""


# ==================== 계수 벡터 연산 ====================

def height(beta: Sequence[int]) -> int:
    return sum(beta)


def sort_key(beta: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """(높이, 사전식 계수) 정렬 키"""
    return (sum(beta), tuple(beta))


def unit(rank: int, i: int) -> Coeffs:
    """i 번째 단순근 (1부터 시작)"""
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


def add(x: Sequence[int], y: Sequence[int]) -> Coeffs:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> Coeffs:
    return tuple(a - b for a, b in zip(x, y))


def negate(x: Sequence[int]) -> Coeffs:
    return tuple(-a for a in x)


def scale(c: int, x: Sequence[int]) -> Coeffs:
    return tuple(c * a for a in x)


def pad(beta: Sequence[int], rank: int = 8) -> Coeffs:
    """E_n 계수를 E_8 (또는 더 큰 랭크) 계수로 확장"""
    if len(beta) > rank:
        raise RootSystemError(f"랭크 {rank} 로 확장할 수 없습니다: {tuple(beta)}")
    return tuple(beta) + (0,) * (rank - len(beta))


def format_coeffs(beta: Sequence[int]) -> str:
    """계수 벡터 표기 (예: 1122111, 음수는 괄호)"""
    if all(0 <= c <= 9 for c in beta):
        return "".join(str(c) for c in beta)
    return "(" + ",".join(str(c) for c in beta) + ")"


def parse_coeffs(text: str) -> Coeffs:
    """'1,1,2,2,1,1,1' 또는 '1122111' 형태의 계수 문자열 파싱"""
    text = text.strip().strip("()")
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise RootSystemError(f"계수 벡터 형식이 아닙니다: {text}")


# ==================== 디킨 도표 / 카르탕 행렬 ====================

def dynkin_edges(family: str, rank: int) -> List[Tuple[int, int]]:
    """디킨 도표 변 목록 (정점 번호 1..rank)"""
    family = family.upper()
    _validate_type(family, rank)
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    return [(i, j) for i, j in E_DYNKIN_EDGES if i <= rank and j <= rank]


def cartan_matrix(family: str, rank: int) -> List[List[int]]:
    """카르탕(콕세터) 행렬 A_ij = <α_i, α_j>"""
    matrix = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in dynkin_edges(family, rank):
        matrix[i - 1][j - 1] = -1
        matrix[j - 1][i - 1] = -1
    return matrix


def _validate_type(family: str, rank: int):
    ok = (
        (family == "A" and rank >= 1)
        or (family == "D" and rank >= 3)
        or (family == "E" and 3 <= rank <= 8)
    )
    if not ok:
        raise RootSystemError(f"지원하지 않는 루트 시스템: {family}{rank}")


# ==================== 루트 시스템 ====================

class RootSystem:
    """단순 레이스 루트 시스템 (계수 벡터 표현, 생성 후 불변)"""

    def __init__(self, family: str, rank: int):
        family = family.upper()
        _validate_type(family, rank)
        self.family = family
        self.rank = rank
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(row) for row in cartan_matrix(family, rank)
        )
        self.simple_roots: List[Coeffs] = [unit(rank, i) for i in range(1, rank + 1)]
        self.positive_roots: List[Coeffs] = self._enumerate_positive_roots()
        self.roots: List[Coeffs] = sorted(
            self.positive_roots + [negate(b) for b in self.positive_roots],
            key=sort_key,
        )
        self._index: Dict[Coeffs, int] = {beta: k for k, beta in enumerate(self.roots)}
        self._positive = frozenset(self.positive_roots)
        self.highest_root: Coeffs = self.positive_roots[-1]
        self.lowest_root: Coeffs = negate(self.highest_root)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, roots={len(self.roots)})"

    def _enumerate_positive_roots(self) -> List[Coeffs]:
        """단순근에서 시작해 노름 2 를 유지하는 단순근 덧셈으로 닫기"""
        found = set(self.simple_roots)
        queue = deque(self.simple_roots)
        while queue:
            beta = queue.popleft()
            for i, alpha in enumerate(self.simple_roots):
                # β + α_i 가 루트 <=> <β, α_i> = -1
                if self.inner(beta, alpha) == -1:
                    nxt = add(beta, alpha)
                    if nxt not in found:
                        found.add(nxt)
                        queue.append(nxt)
        return sorted(found, key=sort_key)

    # ---------- 기본 연산 ----------

    def check_vector(self, beta: Sequence[int]) -> Coeffs:
        if len(beta) != self.rank:
            raise RootSystemError(
                f"루트 시스템 불일치: {self.name} 에 길이 {len(beta)} 벡터 {tuple(beta)}"
            )
        return tuple(beta)

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        """<x, y> = x^T A y"""
        self.check_vector(x)
        self.check_vector(y)
        total = 0
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.cartan[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return total

    def norm(self, x: Sequence[int]) -> int:
        return self.inner(x, x)

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self._index

    def is_positive(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self._positive

    def index(self, beta: Sequence[int]) -> int:
        try:
            return self._index[tuple(beta)]
        except KeyError:
            raise RootSystemError(f"{self.name} 의 루트가 아닙니다: {tuple(beta)}")

    def leq(self, beta: Sequence[int], beta2: Sequence[int]) -> bool:
        """루트 순서: β' - β 가 0 이거나 양의 루트들의 합 (계수별 비교, 추이적)"""
        self.check_vector(beta)
        self.check_vector(beta2)
        return all(a <= b for a, b in zip(beta, beta2))

    def differs_by_positive_root(self, beta: Sequence[int], beta2: Sequence[int]) -> bool:
        """문자 그대로의 관계: β' - β ∈ Δ⁺ ∪ {0} (추이적이지 않음)"""
        diff = sub(self.check_vector(beta2), self.check_vector(beta))
        return not any(diff) or self.is_positive(diff)

    def comparable(self, beta: Sequence[int], beta2: Sequence[int]) -> bool:
        return self.leq(beta, beta2) or self.leq(beta2, beta)

    def reflect(self, alpha: Sequence[int], beta: Sequence[int]) -> Coeffs:
        """r_α(β) = β - <α, β> α"""
        return sub(beta, scale(self.inner(alpha, beta), alpha))

    # ---------- 디킨 도표 ----------

    def dynkin_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.rank + 1))
        graph.add_edges_from(dynkin_edges(self.family, self.rank))
        return graph

    def affine_dynkin_graph(self) -> nx.Graph:
        """최저 루트 정점(0)을 붙인 아핀 디킨 도표"""
        graph = self.dynkin_graph()
        graph.add_node(0)
        for j, alpha in enumerate(self.simple_roots, 1):
            if self.inner(self.lowest_root, alpha) == -1:
                graph.add_edge(0, j)
        return graph

    def subsystem_lowest_root(self, vertices: Iterable[int]) -> Coeffs:
        """정점 부분집합이 생성하는 부분 루트 시스템의 최저 루트"""
        support = set(vertices)
        inside = [
            beta for beta in self.positive_roots
            if all(c == 0 or (k + 1) in support for k, c in enumerate(beta))
        ]
        if not inside:
            raise RootSystemError(f"빈 부분 도표: {sorted(support)}")
        return negate(max(inside, key=sort_key))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "cartan": [list(row) for row in self.cartan],
            "roots": [
                {
                    "coeffs": list(beta),
                    "stratum": stratum(beta) if self.family == "E" else None,
                }
                for beta in self.roots
            ],
        }


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """루트 시스템 생성 (캐시됨, 불변 객체 공유)"""
    return RootSystem(family.upper(), rank)


def system_from_name(name: str) -> RootSystem:
    """'e7', 'D4', 'a2' 형태의 이름으로 루트 시스템 생성"""
    text = name.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise RootSystemError(f"루트 시스템 이름 형식 오류: {name}")
    return build_root_system(text[0], int(text[1:]))


def lowest_root(system: RootSystem) -> Coeffs:
    return system.lowest_root


def ambient_coordinates(beta: Sequence[int]) -> Tuple[int, ...]:
    """E_n (n <= 8) 계수 벡터의 R^8 좌표 x2 (정수)"""
    beta = pad(beta, 8)
    return tuple(
        sum(c * AMBIENT_SIMPLE_ROOTS_X2[i][k] for i, c in enumerate(beta))
        for k in range(8)
    )


# ==================== 층(strata) ====================

def stratum(beta: Sequence[int]) -> int:
    """층 라벨: 0 이 아닌 마지막 계수의 번호 (2 는 3 으로 합침)"""
    nonzero = [k + 1 for k, c in enumerate(beta) if c != 0]
    if not nonzero:
        raise RootSystemError("영벡터는 층을 갖지 않습니다")
    label = nonzero[-1]
    return 3 if label == 2 else label


def s_prime(s: int) -> int:
    """s' = max{3, s + 1}"""
    return max(3, s + 1)


def strata(system: RootSystem) -> Dict[int, List[Coeffs]]:
    """양의 루트를 층별로 분할"""
    if system.family != "E":
        raise RootSystemError(f"층 분할은 E 계열만 지원합니다: {system.name}")
    result: Dict[int, List[Coeffs]] = {s: [] for s in STRATUM_LABELS if s <= system.rank}
    for beta in system.positive_roots:
        result[stratum(beta)].append(beta)
    return result


def zeta(s: int, rank: int = 7) -> Coeffs:
    """ζ_s = Σ_{i=s'}^{7} α_i (E_7 계수)"""
    start = s_prime(s)
    return tuple(1 if start <= k <= 7 else 0 for k in range(1, rank + 1))


def tilde(beta: Sequence[int]) -> Coeffs:
    """β~ = β + ζ_s, Δ_7^+ 로의 들어올림"""
    e7 = build_root_system("E", 7)
    beta = tuple(beta)
    if len(beta) != 7 or not e7.is_positive(beta):
        raise RootSystemError(f"E7 의 양의 루트가 아닙니다: {beta}")
    return add(beta, zeta(stratum(beta)))


# ==================== 하세 도표 ====================

def hasse(system: RootSystem, subset: Iterable[Sequence[int]]) -> nx.Graph:
    """부분집합의 덮개 관계 그래프 (루트 순서 기준)"""
    elements = sorted({system.check_vector(b) for b in subset}, key=sort_key)
    order = nx.DiGraph()
    order.add_nodes_from(elements)
    for a, b in combinations(elements, 2):
        if system.leq(a, b):
            order.add_edge(a, b)
        elif system.leq(b, a):
            order.add_edge(b, a)
    covers = nx.transitive_reduction(order)

    graph = nx.Graph()
    for beta in elements:
        graph.add_node(beta, height=height(beta), label=format_coeffs(beta))
    graph.add_edges_from(covers.edges())
    return graph


# ==================== 디킨 도표 비틀기 ====================

class RootTwist:
    """단순근의 상(image)으로 정해지는 루트 격자 자기동형"""

    def __init__(self, system: RootSystem, vertex: int, images: Sequence[Coeffs]):
        self.system = system
        self.vertex = vertex
        self.images: Tuple[Coeffs, ...] = tuple(tuple(img) for img in images)
        self._table: Optional[Dict[Coeffs, Coeffs]] = None

    def apply(self, beta: Sequence[int]) -> Coeffs:
        beta = self.system.check_vector(beta)
        result = [0] * self.system.rank
        for c, image in zip(beta, self.images):
            if c:
                for k, v in enumerate(image):
                    result[k] += c * v
        return tuple(result)

    def permutation(self) -> Dict[Coeffs, Coeffs]:
        """Δ 위의 치환표"""
        if self._table is None:
            table = {}
            for beta in self.system.roots:
                image = self.apply(beta)
                if not self.system.is_root(image):
                    raise RootSystemError(f"비틀기 v{self.vertex}: 루트가 아닌 상 {image}")
                table[beta] = image
            self._table = table
        return self._table

    def is_bijection(self) -> bool:
        table = self.permutation()
        return len(set(table.values())) == len(self.system.roots)

    def preserves_inner_products(self) -> bool:
        table = self.permutation()
        roots = self.system.roots
        inner = self.system.inner
        return all(
            inner(table[a], table[b]) == inner(a, b)
            for a in roots for b in roots
        )


def dynkin_twist(system: RootSystem, i: int) -> RootTwist:
    """정점 v_i 에 대한 장식 디킨 도표 구성으로 얻는 루트 시스템 자기동형"""
    if system.family != "E":
        raise RootSystemError(f"비틀기는 E 계열만 지원합니다: {system.name}")
    if i in (1, 2, 8) or not 3 <= i <= system.rank:
        raise RootSystemError(f"비틀기 정점 번호 오류: v{i} ({system.name})")

    n = system.rank
    graph = system.dynkin_graph()

    # 1. 변 (v_i, v_i+1) 제거, v_1 을 포함하는 성분 D'
    cut = graph.copy()
    if cut.has_edge(i, i + 1):
        cut.remove_edge(i, i + 1)
    d_prime = sorted(nx.node_connected_component(cut, 1))
    d_second = [v for v in range(1, n + 1) if v not in d_prime]

    # 2~3. 아핀 정점 추가 후 D^' 의 장식 부호 반전, v_i 제거
    decorations: Dict[object, Coeffs] = {"hat": negate(system.subsystem_lowest_root(d_prime))}
    for v in d_prime:
        if v != i:
            decorations[v] = negate(unit(n, v))
    for v in d_second:
        decorations[v] = unit(n, v)

    # 4. 장식의 내적으로 새 도표의 변 결정 (D'' 는 아핀 정점에 붙음)
    twisted = nx.Graph()
    twisted.add_nodes_from(decorations)
    for a, b in combinations(decorations, 2):
        value = system.inner(decorations[a], decorations[b])
        if value == -1:
            twisted.add_edge(a, b)
        elif value != 0:
            raise RootSystemError(f"비틀기 v{i}: 장식 내적 {value} ({a}, {b})")

    matcher = isomorphism.GraphMatcher(twisted, graph)
    candidates = [
        mapping for mapping in matcher.isomorphisms_iter()
        if mapping["hat"] == i and all(mapping[v] == v for v in d_second)
    ]
    if len(candidates) != 1:
        raise RootSystemError(f"비틀기 v{i}: 동형사상 {len(candidates)}개 (유일하지 않음)")

    inverse = {target: source for source, target in candidates[0].items()}
    images = [decorations[inverse[j]] for j in range(1, n + 1)]
    return RootTwist(system, i, images)
