# series_analysis/index_sets.py
"""
指标集代数模块
指标集 ℰ ⊂ ℂ×ℕ 由有限个生成元 (j,k) 生成，闭包为 {(j+n, κ) : n ∈ ℕ, κ ≤ k}，
支持平移、缩放、并集、枚举以及文本序列化
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

import numpy as np

from utils.errors import DomainError, UnsupportedOperationError

# 复指数相等判定容差
EXPONENT_TOL = 1e-12
EMPTY_TOKEN = "EMPTY"


def _is_nonneg_integer(z: complex) -> bool:
    """判断复数 z 是否（在容差内）为非负整数"""
    if abs(z.imag) > EXPONENT_TOL:
        return False
    n = round(z.real)
    return n >= 0 and abs(z.real - n) <= EXPONENT_TOL


def _exponent_key(j: complex) -> Tuple[float, float]:
    return (round(j.real, 10) + 0.0, round(j.imag, 10) + 0.0)


@dataclass(frozen=True)
class IndexTerm:
    """单个指标 (j, k)：幂指数 j 与最大对数幂 k"""

    j: complex
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "j", complex(self.j))
        if not np.isfinite(self.j.real) or not np.isfinite(self.j.imag):
            raise DomainError(f"指数必须有限：{self.j}")
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"对数幂必须为非负整数：{self.k}")
        object.__setattr__(self, "k", int(self.k))

    def same_exponent(self, other: "IndexTerm") -> bool:
        return abs(self.j - other.j) <= EXPONENT_TOL

    def sort_key(self):
        return (self.j.real, self.j.imag, self.k)


@dataclass(frozen=True)
class IndexSet:
    """
    指标集（不可变）

    generators 为极小生成元列表；is_empty_flag 为 True 表示空集（即 Schwartz 行为 '∞'）
    """

    generators: Tuple[IndexTerm, ...] = ()
    is_empty_flag: bool = False

    def __post_init__(self):
        gens = tuple(g if isinstance(g, IndexTerm) else IndexTerm(*g) for g in self.generators)
        if self.is_empty_flag:
            gens = ()
        object.__setattr__(self, "generators", _minimalize(gens))
        object.__setattr__(self, "is_empty_flag", len(self.generators) == 0)

    @classmethod
    def empty(cls) -> "IndexSet":
        return cls((), True)

    @classmethod
    def of(cls, *pairs) -> "IndexSet":
        """由 (j,k) 元组快速构造，例如 IndexSet.of((0,0), (0.5,0))"""
        return cls(tuple(IndexTerm(j, k) for j, k in pairs))

    def __str__(self):
        return format_index_set(self)


def _dominates(big: IndexTerm, small: IndexTerm) -> bool:
    """big 的闭包是否包含 small"""
    return _is_nonneg_integer(small.j - big.j) and small.k <= big.k


def _minimalize(gens: Iterable[IndexTerm]) -> Tuple[IndexTerm, ...]:
    # 删除被其他生成元支配的生成元，得到规范形式
    gens = sorted(gens, key=IndexTerm.sort_key)
    kept: List[IndexTerm] = []
    for g in gens:
        if any(_dominates(h, g) for h in kept):
            continue
        kept = [h for h in kept if not _dominates(g, h)]
        kept.append(g)
    return tuple(sorted(kept, key=IndexTerm.sort_key))


def contains(s: IndexSet, t: IndexTerm) -> bool:
    """
    判断 t 是否属于 s 的闭包

    Args:
        s: 指标集
        t: 待判断的指标

    Returns:
        bool
    """
    return any(_dominates(g, t) for g in s.generators)


def shift(s: IndexSet, c: complex) -> IndexSet:
    """每个生成元 (j,k) 平移为 (j+c, k)；空集保持不变"""
    c = complex(c)
    return IndexSet(tuple(IndexTerm(g.j + c, g.k) for g in s.generators), s.is_empty_flag)


def scale(s: IndexSet, c: float) -> IndexSet:
    """
    缩放指标集：定义为"缩放后闭包的闭包"，再做极小化

    对有理数 c = p/q，闭包元素 c(j+n) 按 n mod q 分类，每一类的最小元就是新生成元。

    Args:
        s: 指标集
        c: 正实数缩放因子

    Returns:
        IndexSet
    """
    if not np.isreal(c) or float(np.real(c)) <= 0:
        raise DomainError(f"缩放因子必须为正实数：{c}")
    c = float(np.real(c))
    frac = Fraction(c).limit_denominator(1000)
    if abs(float(frac) - c) > EXPONENT_TOL:
        raise UnsupportedOperationError(f"仅支持有理缩放因子：{c}")
    new_gens = []
    for g in s.generators:
        for n in range(frac.denominator):
            new_gens.append(IndexTerm(c * (g.j + n), g.k))
    return IndexSet(tuple(new_gens), s.is_empty_flag)


def union(a: IndexSet, b: IndexSet) -> IndexSet:
    """并集：生成元合并后极小化"""
    return IndexSet(a.generators + b.generators)


def enumerate_terms(s: IndexSet, re_max: float) -> List[IndexTerm]:
    """
    枚举闭包中 Re j ≤ re_max 的全部指标

    每个 j 给出其最大对数幂以及所有更小的对数幂，按 (Re j, Im j, k) 排序。

    Args:
        s: 指标集
        re_max: 实部阈值

    Returns:
        IndexTerm 列表
    """
    max_log = {}
    exponent = {}
    for g in s.generators:
        n = 0
        while g.j.real + n <= re_max + EXPONENT_TOL:
            j = g.j + n
            key = _exponent_key(j)
            if key not in max_log or g.k > max_log[key]:
                max_log[key] = g.k
                exponent.setdefault(key, j)
            n += 1
    terms = [IndexTerm(exponent[key], kappa)
             for key, kmax in max_log.items() for kappa in range(kmax + 1)]
    return sorted(terms, key=IndexTerm.sort_key)


def max_log_power(s: IndexSet, j: complex) -> int:
    """返回闭包中指数 j 对应的最大对数幂；不在闭包中时返回 -1"""
    best = -1
    for g in s.generators:
        if _is_nonneg_integer(complex(j) - g.j):
            best = max(best, g.k)
    return best


def _format_exponent(j: complex) -> str:
    if abs(j.imag) <= EXPONENT_TOL:
        frac = Fraction(j.real).limit_denominator(64)
        if abs(float(frac) - j.real) <= EXPONENT_TOL:
            return str(frac)
        return repr(j.real)
    return repr(j)


def format_index_set(s: IndexSet) -> str:
    """序列化为 "j:k[,j:k...]"，空集为 "EMPTY" """
    if s.is_empty_flag:
        return EMPTY_TOKEN
    return ",".join(f"{_format_exponent(g.j)}:{g.k}" for g in s.generators)


def _parse_exponent(text: str) -> complex:
    text = text.strip()
    try:
        return complex(float(Fraction(text)))
    except ValueError:
        return complex(text.replace("i", "j"))


def parse_index_set(text: str) -> IndexSet:
    """
    解析文本形式的指标集（CLI --indexset 参数使用）

    Args:
        text: 例如 "0:0,1/2:0" 或 "EMPTY"

    Returns:
        IndexSet
    """
    text = text.strip()
    if not text or text.upper() == EMPTY_TOKEN:
        return IndexSet.empty()
    terms = []
    for token in text.split(","):
        try:
            j_text, k_text = token.rsplit(":", 1)
            terms.append(IndexTerm(_parse_exponent(j_text), int(k_text)))
        except ValueError as exc:
            raise DomainError(f"无法解析指标 '{token}'：{exc}") from exc
    return IndexSet(tuple(terms))


def theorem_d_index_sets(E: IndexSet, F: IndexSet) -> dict:
    """
    主引理中 I_+[φ] 的指标集：kf 处 ℰ/2+1，parF 处 ℱ+2，Σ 处 (0,0)

    Args:
        E: 零能面 (σ→0) 的指标集
        F: bf 面 (r→∞) 的指标集

    Returns:
        dict: 面名称 → IndexSet
    """
    return {
        "kf": shift(scale(E, 0.5), 1.0),
        "parF": shift(F, 2.0),
        "Sigma": IndexSet.of((0, 0)),
    }


def theorem_b_kf_stages(E: IndexSet) -> dict:
    """
    kf 处指标集的两个阶段：交集之前含 (1/2,1)，交集之后为 (1/2,0)

    两者同时记录，不判断哪个是最优的。
    """
    before = union(union(union(IndexSet.of((-0.5, 0)), IndexSet.of((0, 0))),
                         IndexSet.of((0.5, 1))), E)
    after = union(union(IndexSet.of((0, 0)), IndexSet.of((0.5, 0))), E)
    return {"before_intersection": before, "after_intersection": after}
