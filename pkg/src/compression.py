"""
압축 사상(compression map) 모듈

단순근의 상 S = (s_1, ..., s_n) 이 (s_i|s_j) = <α_i, α_j> (mod p) 를
만족하면 f(β) = Σ β^i s_i 는 내적을 mod p 로 보존하는 준동형이 됩니다.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from fp_space import (
    FpForm,
    FpSpaceError,
    FpVector,
    det_mod,
    form_eval,
    gamma,
    is_prime,
    rref_mod,
    zero_vector,
)
from logger import logger
from root_core import Coeffs, RootSystem, format_coeffs, system_from_name


class CompressionError(ValueError):
    """압축 사상 구성 오류"""


@dataclass
class SViolation:
    """조건 위반 한 건"""
    i: int
    j: int
    kind: str  # "inner" 또는 "distinct"
    expected: int
    actual: int

    def describe(self) -> str:
        if self.kind == "distinct":
            return f"s{self.i} = s{self.j} (p = 2 에서 서로 달라야 함)"
        return f"(s{self.i}|s{self.j}) = {self.actual}, <α{self.i},α{self.j}> = {self.expected}"


@dataclass
class SCheckReport:
    valid: bool
    violations: List[SViolation] = field(default_factory=list)


@dataclass
class InjectivityResult:
    injective: bool
    domain_size: int
    image_size: int
    in_gamma: bool
    offending: Optional[Tuple[Coeffs, Coeffs]] = None
    outside_gamma: Optional[Coeffs] = None


def check_S(system: RootSystem, form: FpForm, S: Sequence[FpVector]) -> SCheckReport:
    """(s_i|s_j) = <α_i, α_j> (mod p) 와 p = 2 일 때 서로 다름을 검사"""
    if len(S) != system.rank:
        raise CompressionError(f"|S| = {len(S)} 가 랭크 {system.rank} 와 다릅니다")
    for s in S:
        if s.dim != form.dim or s.p != form.p:
            raise CompressionError(f"S 의 벡터 {s.label} 가 공간(dim {form.dim}, mod {form.p})과 맞지 않습니다")

    violations: List[SViolation] = []
    for i in range(system.rank):
        for j in range(i, system.rank):
            expected = system.cartan[i][j] % form.p
            actual = form_eval(form, S[i], S[j])
            if actual != expected:
                violations.append(SViolation(i + 1, j + 1, "inner", expected, actual))
    if form.p == 2:
        for i, j in combinations(range(system.rank), 2):
            if S[i] == S[j]:
                violations.append(SViolation(i + 1, j + 1, "distinct", 1, 1))
    return SCheckReport(valid=not violations, violations=violations)


class CompressionMap:
    """루트 격자에서 (Z/p)^m 으로의 준동형 f 와 역표"""

    def __init__(self, system: RootSystem, form: FpForm, S: Sequence[FpVector], name: str = ""):
        self.system = system
        self.form = form
        self.S: Tuple[FpVector, ...] = tuple(S)
        self.p = form.p
        self.name = name or f"{system.name}/Z{form.p}^{form.dim}"

        report = check_S(system, form, self.S)
        if not report.valid:
            detail = "; ".join(v.describe() for v in report.violations)
            raise CompressionError(f"S 조건 위반 ({self.name}): {detail}")

        # 목표 랭크가 더 작으면 p | det(A) 이어야 함
        if form.dim < system.rank and is_prime(self.p) and det_mod(system.cartan, self.p) != 0:
            raise CompressionError(
                f"{self.name}: 랭크가 줄었는데 p = {self.p} 가 det(A) 를 나누지 않습니다"
            )

        self.table: Dict[Coeffs, FpVector] = {beta: self.apply(beta) for beta in system.roots}
        self.inverse: Dict[FpVector, Coeffs] = {}
        self._gamma: Optional[frozenset] = None

    def __repr__(self) -> str:
        return f"CompressionMap({self.name})"

    @property
    def gamma(self) -> frozenset:
        if self._gamma is None:
            self._gamma = frozenset(gamma(self.form))
        return self._gamma

    def in_gamma(self, x: FpVector) -> bool:
        """x ∈ Γ 판정 (공간 전체를 열거하지 않음)"""
        return not x.is_zero() and form_eval(self.form, x, x) == 2 % self.p

    def apply(self, beta: Sequence[int]) -> FpVector:
        """f(β) = Σ β^i s_i"""
        beta = self.system.check_vector(beta)
        entries = [0] * self.form.dim
        for c, s in zip(beta, self.S):
            if c:
                for k, v in enumerate(s.entries):
                    entries[k] += c * v
        return FpVector(self.p, tuple(e % self.p for e in entries), self.form.block)

    def domain(self) -> List[Coeffs]:
        """단사성 검사 영역: p = 2 이면 Δ⁺, 그 외 Δ"""
        return list(self.system.positive_roots if self.p == 2 else self.system.roots)

    def preimage(self, x: FpVector) -> Optional[Coeffs]:
        """역표 조회 (루트의 상이 아니면 None)"""
        if not self.inverse:
            verify_injective(self)
        return self.inverse.get(x)

    def vector(self, label: str) -> FpVector:
        return self.form.vector(label)

    def table_rows(self) -> List[Tuple[Optional[Coeffs], FpVector]]:
        """익스포트용 표: p = 2 이면 {0} ∪ Δ⁺, 그 외 Δ"""
        rows: List[Tuple[Optional[Coeffs], FpVector]] = []
        if self.p == 2:
            rows.append((tuple([0] * self.system.rank), zero_vector(self.p, self.form.dim, self.form.block)))
        rows.extend((beta, self.table[beta]) for beta in self.domain())
        return rows

    def to_dict(self) -> dict:
        return {
            "system": self.system.name,
            "p": self.p,
            "dim": self.form.dim,
            "block": self.form.block,
            "gram": [list(row) for row in self.form.gram],
            "S": [s.label for s in self.S],
            "table": [
                {"root": list(beta), "image": image.label}
                for beta, image in self.table_rows()
            ],
        }


def map_from_dict(data: dict) -> CompressionMap:
    """to_dict() 결과로부터 사상 재구성"""
    try:
        system = system_from_name(data["system"])
        form = FpForm(int(data["p"]), tuple(tuple(row) for row in data["gram"]), int(data.get("block", 1)))
        S = [form.vector(label) for label in data["S"]]
    except (KeyError, TypeError, FpSpaceError) as e:
        raise CompressionError(f"사상 데이터 형식 오류: {e}")
    return CompressionMap(system, form, S)


def verify_injective(cmap: CompressionMap) -> InjectivityResult:
    """f 가 영역에서 단사이고 상이 Γ 에 포함되는지 전수 검사 (역표를 함께 구성)"""
    inverse: Dict[FpVector, Coeffs] = {}
    offending = None
    outside = None
    for beta in cmap.domain():
        image = cmap.table[beta]
        if outside is None and not cmap.in_gamma(image):
            outside = beta
        if image in inverse:
            if offending is None:
                offending = (inverse[image], beta)
            continue
        inverse[image] = beta

    if cmap.p == 2:
        # 0 과 음의 루트도 조회 가능하게 (f(-β) = f(β))
        inverse.setdefault(zero_vector(2, cmap.form.dim, cmap.form.block), tuple([0] * cmap.system.rank))
    cmap.inverse = inverse

    result = InjectivityResult(
        injective=offending is None,
        domain_size=len(cmap.domain()),
        image_size=len({cmap.table[b] for b in cmap.domain()}),
        in_gamma=outside is None,
        offending=offending,
        outside_gamma=outside,
    )
    if not result.injective:
        a, b = offending
        logger.warning(f"✗ {cmap.name}: 단사 아님 - f({format_coeffs(a)}) = f({format_coeffs(b)})")
    return result


def verify_inner_products(cmap: CompressionMap) -> Tuple[bool, int, Optional[Tuple[Coeffs, Coeffs]]]:
    """모든 β, β' ∈ Δ 에 대해 (f(β)|f(β')) = <β, β'> (mod p)"""
    roots = cmap.system.roots
    count = 0
    for a in roots:
        for b in roots:
            count += 1
            if form_eval(cmap.form, cmap.table[a], cmap.table[b]) != cmap.system.inner(a, b) % cmap.p:
                return False, count, (a, b)
    return True, count, None


def verify_orthogonality_transfer(cmap: CompressionMap) -> Tuple[bool, int, Optional[Tuple[Coeffs, Coeffs]]]:
    """β ≠ β' 에 대해 <β, β'> = 0 <=> (f(β)|f(β')) = 0"""
    roots = cmap.system.roots
    count = 0
    for a, b in combinations(roots, 2):
        count += 1
        root_side = cmap.system.inner(a, b) == 0
        image_side = form_eval(cmap.form, cmap.table[a], cmap.table[b]) == 0
        if root_side != image_side:
            return False, count, (a, b)
    return True, count, None


def canonical_compression(system: RootSystem, p: int) -> CompressionMap:
    """V = (Z/p)^n / ker(A_p), s_i = e_i 의 상"""
    if not is_prime(p):
        raise CompressionError(f"p = {p} 는 소수가 아닙니다")
    if det_mod(system.cartan, p) != 0:
        raise CompressionError(f"{system.name}: p = {p} 가 det(A) 를 나누지 않아 압축할 수 없습니다")

    rows, pivots = rref_mod(system.cartan, p)
    rank = len(pivots)
    # 몫 사상 x -> R x, 피벗 열 위의 기저에서 유도 형식은 A 의 피벗 소행렬
    S = [
        FpVector(p, tuple(rows[r][i] for r in range(rank)))
        for i in range(system.rank)
    ]
    gram = tuple(tuple(system.cartan[a][b] % p for b in pivots) for a in pivots)
    form = FpForm(p, gram)

    if any(s.is_zero() for s in S) or len(set(S)) != len(S):
        labels = ", ".join(s.label for s in S)
        raise CompressionError(f"{system.name} (p = {p}): 유도된 S 가 퇴화 ({labels})")

    logger.debug(f"표준 몫 압축 {system.name} (p = {p}): 차원 {rank}, S = {[s.label for s in S]}")
    return CompressionMap(system, form, S, name=f"canonical {system.name}/Z{p}^{rank}")


def quotient_images(system: RootSystem, p: int) -> List[FpVector]:
    """퇴화 여부와 무관하게 몫 공간에서의 e_i 상 (음성 대조군 분석용)"""
    rows, pivots = rref_mod(system.cartan, p)
    return [FpVector(p, tuple(rows[r][i] for r in range(len(pivots)))) for i in range(system.rank)]


def identity_lift(system: RootSystem, p: int) -> CompressionMap:
    """V = (Z/p)^n, 그람 = A mod p, S = 표준 기저 (합성수 p 에도 유효)"""
    n = system.rank
    form = FpForm(p, tuple(tuple(v % p for v in row) for row in system.cartan))
    S = [FpVector(p, tuple(1 if k == i else 0 for k in range(n))) for i in range(n)]
    return CompressionMap(system, form, S, name=f"lattice {system.name}/Z{p}^{n}")


def reduce_composite(cmap: CompressionMap, p2: int) -> CompressionMap:
    """f' = ρ ∘ f, ρ: Z/p -> Z/p' (p' | p, p' ≠ 2)"""
    if p2 == 2:
        raise CompressionError("p' = 2 로의 축소는 허용되지 않습니다")
    if p2 < 2 or cmap.p % p2:
        raise CompressionError(f"p' = {p2} 는 p = {cmap.p} 의 약수가 아닙니다")
    form = cmap.form.reduce(p2)
    S = [s.reduce(p2) for s in cmap.S]
    return CompressionMap(cmap.system, form, S, name=f"{cmap.name} mod {p2}")
