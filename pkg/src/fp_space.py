"""
Z/p 위의 벡터 공간, 쌍선형 형식, Γ 집합, O/N 그래프, mod p 선형대수 모듈

F = Z/2 x Z/2 는 2비트 블록(block=2)으로 표현하며,
자릿수 표기는 블록 값 0..3 (⊕ = 비트별 XOR) 을 사용합니다.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

import networkx as nx


class FpSpaceError(ValueError):
    """Z/p 공간 연산 오류"""


# ==================== 벡터 ====================

@dataclass(frozen=True, order=True)
class FpVector:
    """(Z/p)^m 의 원소. block=2 이면 두 좌표씩 묶어 F = Z/2 x Z/2 의 한 자리로 표기"""
    p: int
    entries: Tuple[int, ...]
    block: int = 1

    def __post_init__(self):
        if any(not 0 <= e < self.p for e in self.entries):
            raise FpSpaceError(f"정규화되지 않은 성분: {self.entries} (mod {self.p})")
        if len(self.entries) % self.block:
            raise FpSpaceError(f"블록 크기 {self.block} 와 차원 {len(self.entries)} 불일치")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def _check(self, other: "FpVector"):
        if (self.p, self.dim, self.block) != (other.p, other.dim, other.block):
            raise FpSpaceError(
                f"차원/법 불일치: {self.label}(mod {self.p}) vs {other.label}(mod {other.p})"
            )

    def __add__(self, other: "FpVector") -> "FpVector":
        self._check(other)
        return FpVector(self.p, tuple((a + b) % self.p for a, b in zip(self.entries, other.entries)), self.block)

    def __sub__(self, other: "FpVector") -> "FpVector":
        self._check(other)
        return FpVector(self.p, tuple((a - b) % self.p for a, b in zip(self.entries, other.entries)), self.block)

    def __neg__(self) -> "FpVector":
        return FpVector(self.p, tuple((-a) % self.p for a in self.entries), self.block)

    def __xor__(self, other: "FpVector") -> "FpVector":
        # p = 2 에서 ⊕ 는 덧셈과 같음
        return self + other

    def scaled(self, c: int) -> "FpVector":
        return FpVector(self.p, tuple((c * a) % self.p for a in self.entries), self.block)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def reduce(self, p2: int) -> "FpVector":
        """Z/p -> Z/p' 축소 (p' | p)"""
        if self.p % p2:
            raise FpSpaceError(f"{p2} 는 {self.p} 의 약수가 아닙니다")
        return FpVector(p2, tuple(a % p2 for a in self.entries), self.block)

    @property
    def digits(self) -> Tuple[int, ...]:
        """표기용 자릿수 (block=2 이면 0..3)"""
        if self.block == 1:
            return self.entries
        return tuple(
            int("".join(str(b) for b in self.entries[k:k + self.block]), 2)
            for k in range(0, self.dim, self.block)
        )

    @property
    def label(self) -> str:
        return "".join(str(d) for d in self.digits)

    def __str__(self) -> str:
        return self.label


def vector_from_digits(digits: Sequence[int], p: int, block: int = 1) -> FpVector:
    if block == 1:
        return FpVector(p, tuple(int(d) % p for d in digits), 1)
    if p != 2:
        raise FpSpaceError("블록 표기는 p = 2 에서만 지원합니다")
    entries: List[int] = []
    for d in digits:
        d = int(d)
        if not 0 <= d < 2 ** block:
            raise FpSpaceError(f"블록 자릿수 범위 오류: {d}")
        entries.extend((d >> (block - 1 - k)) & 1 for k in range(block))
    return FpVector(2, tuple(entries), block)


def parse_vector(label: str, p: int, block: int = 1) -> FpVector:
    """'033', '12000' 같은 자릿수 문자열 파싱"""
    label = label.strip()
    if not label.isdigit():
        raise FpSpaceError(f"벡터 표기 형식 오류: {label}")
    return vector_from_digits([int(ch) for ch in label], p, block)


def zero_vector(p: int, dim: int, block: int = 1) -> FpVector:
    return FpVector(p, (0,) * dim, block)


def all_vectors(p: int, dim: int, block: int = 1) -> List[FpVector]:
    """전체 공간 열거 (자릿수 사전식 순서)"""
    return sorted(FpVector(p, entries, block) for entries in product(range(p), repeat=dim))


# ==================== 쌍선형 형식 ====================

@dataclass(frozen=True)
class FpForm:
    """(Z/p)^m 위의 대칭 쌍선형 형식 (그람 행렬)"""
    p: int
    gram: Tuple[Tuple[int, ...], ...]
    block: int = 1

    def __post_init__(self):
        m = len(self.gram)
        if any(len(row) != m for row in self.gram):
            raise FpSpaceError("그람 행렬이 정사각 행렬이 아닙니다")
        for i in range(m):
            for j in range(m):
                if (self.gram[i][j] - self.gram[j][i]) % self.p:
                    raise FpSpaceError("그람 행렬이 대칭이 아닙니다")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def evaluate(self, x: FpVector, y: FpVector) -> int:
        return form_eval(self, x, y)

    def vectors(self) -> List[FpVector]:
        return all_vectors(self.p, self.dim, self.block)

    def vector(self, label: str) -> FpVector:
        v = parse_vector(label, self.p, self.block)
        if v.dim != self.dim:
            raise FpSpaceError(f"차원 불일치: {label} (dim {self.dim})")
        return v

    def is_alternating(self) -> bool:
        """모든 x 에 대해 (x|x) = 0"""
        return all(form_eval(self, x, x) == 0 for x in self.vectors())

    def is_nondegenerate(self) -> bool:
        return det_mod(self.gram, self.p) != 0

    def reduce(self, p2: int) -> "FpForm":
        if self.p % p2:
            raise FpSpaceError(f"{p2} 는 {self.p} 의 약수가 아닙니다")
        return FpForm(p2, tuple(tuple(g % p2 for g in row) for row in self.gram), self.block)


def form_eval(form: FpForm, x: FpVector, y: FpVector) -> int:
    """(x|y) = x^T G y mod p"""
    if x.dim != form.dim or y.dim != form.dim or x.p != form.p or y.p != form.p:
        raise FpSpaceError(
            f"차원/법 불일치: form(dim {form.dim}, mod {form.p}), x={x.label}, y={y.label}"
        )
    total = 0
    for i, xi in enumerate(x.entries):
        if xi:
            row = form.gram[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y.entries) if yj)
    return total % form.p


def standard_form(p: int, dim: int) -> FpForm:
    """표준 대칭 형식 Σ x_i y_i"""
    return FpForm(p, tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)))


def klein_symplectic_form(copies: int) -> FpForm:
    """F^copies, F = Z/2 x Z/2 위의 심플렉틱 형식.

    F 에서 (a|a') = 0 (a=0, a'=0 또는 a=a'), 그 외 1. 비트로는 x1*y0 + x0*y1.
    """
    dim = 2 * copies
    gram = [[0] * dim for _ in range(dim)]
    for k in range(0, dim, 2):
        gram[k][k + 1] = 1
        gram[k + 1][k] = 1
    return FpForm(2, tuple(tuple(row) for row in gram), block=2)


# ==================== Γ 집합 / 그래프 ====================

def gamma(form: FpForm) -> Tuple[FpVector, ...]:
    """Γ = {x ≠ 0 : (x|x) = 2 mod p}"""
    target = 2 % form.p
    return tuple(
        x for x in form.vectors()
        if not x.is_zero() and form_eval(form, x, x) == target
    )


def o_graph(form: FpForm, vertices: Optional[Sequence[FpVector]] = None) -> nx.Graph:
    """O-그래프: x ≠ y, (x|y) = 0 인 쌍을 변으로"""
    nodes = list(vertices) if vertices is not None else form.vectors()
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for x, y in combinations(nodes, 2):
        if form_eval(form, x, y) == 0:
            graph.add_edge(x, y)
    return graph


def n_graph(form: FpForm, vertices: Optional[Sequence[FpVector]] = None) -> nx.Graph:
    """N-그래프: O-그래프의 여그래프 (같은 정점 집합)"""
    return nx.complement(o_graph(form, vertices))


def srg_parameters(graph: nx.Graph) -> Optional[Tuple[int, int, int, int]]:
    """강정칙 그래프이면 (n, k, λ, μ), 아니면 None"""
    degrees = {d for _, d in graph.degree()}
    if len(degrees) != 1:
        return None
    k = degrees.pop()
    lam, mu = set(), set()
    neighbours = {v: set(graph[v]) for v in graph}
    for x, y in combinations(list(graph), 2):
        common = len(neighbours[x] & neighbours[y])
        (lam if y in neighbours[x] else mu).add(common)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return (graph.number_of_nodes(), k, lam.pop() if lam else 0, mu.pop() if mu else 0)


# ==================== mod p 선형대수 ====================

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """정수 행렬식 (Bareiss 분수 없는 소거)"""
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise FpSpaceError("정사각 행렬이 아닙니다")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_mod(matrix: Sequence[Sequence[int]], p: int) -> int:
    """행렬식 mod p"""
    return det_int(matrix) % p


def rref_mod(matrix: Sequence[Sequence[int]], p: int) -> Tuple[List[List[int]], List[int]]:
    """Z/p (p 소수) 위의 기약 행사다리꼴과 피벗 열"""
    if not is_prime(p):
        raise FpSpaceError(f"p = {p} 는 소수가 아닙니다 (체 위의 소거만 지원)")
    rows = [[v % p for v in row] for row in matrix]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def kernel_mod(matrix: Sequence[Sequence[int]], p: int) -> List[Tuple[int, ...]]:
    """A x = 0 (mod p) 의 해공간 기저"""
    rows, pivots = rref_mod(matrix, p)
    n_cols = len(matrix[0]) if matrix else 0
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n_cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rows[r][f]) % p
        basis.append(tuple(v))
    return basis

