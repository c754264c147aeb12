# series_analysis/phg_series.py
"""
多齐次展开数据模型
单边界变量的截断展开 Σ coeff·x^j·log^k x，系数可以是常数，也可以是其余参数的函数；
以及被积函数 φ(σ,r) 的描述对象 PhgProfile
"""

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from utils.errors import DomainError, InvalidTruncationError, UnsupportedOperationError

Coefficient = Union[complex, Callable]
KEY_TOL = 1e-12


def _as_callable(coeff: Coefficient) -> Callable:
    if callable(coeff):
        return coeff
    value = complex(coeff)
    return lambda params=None: value


@dataclass(frozen=True)
class PhgTerm:
    """展开项 coeff·x^j·log^k x；coeff 接收参数点，必须可并发调用"""

    j: complex
    k: int
    coeff: Coefficient = 1.0

    def __post_init__(self):
        object.__setattr__(self, "j", complex(self.j))
        if self.k < 0 or int(self.k) != self.k:
            raise DomainError(f"对数幂必须为非负整数：{self.k}")
        object.__setattr__(self, "k", int(self.k))

    def value(self, params=None) -> complex:
        return complex(_as_callable(self.coeff)(params))


@dataclass(frozen=True)
class PhgSeries:
    """
    截断多齐次展开

    Args:
        terms: PhgTerm 列表
        remainder_order: 余项阶数 α（np.inf 表示无余项限制）
        variable_name: 边界变量名称
    """

    terms: Tuple[PhgTerm, ...] = ()
    remainder_order: float = np.inf
    variable_name: str = "x"

    def __post_init__(self):
        terms = tuple(self.terms)
        keys = set()
        for term in terms:
            if np.isfinite(self.remainder_order) and term.j.real > self.remainder_order + KEY_TOL:
                raise DomainError(
                    f"项 ({term.j}, {term.k}) 超过余项阶数 {self.remainder_order}")
            key = (round(term.j.real, 10), round(term.j.imag, 10), term.k)
            if key in keys:
                raise DomainError(f"重复的展开项 ({term.j}, {term.k})")
            keys.add(key)
        object.__setattr__(self, "terms", tuple(sorted(terms, key=lambda t: (t.j.real, t.j.imag, t.k))))

    def __len__(self):
        return len(self.terms)

    def leading(self) -> Optional[PhgTerm]:
        return self.terms[0] if self.terms else None

    def min_exponent(self) -> float:
        return min((t.j.real for t in self.terms), default=np.inf)


def truncate(s: PhgSeries, gamma: float) -> PhgSeries:
    """
    截断到阶数 γ：保留 Re j ≤ γ 的项，余项阶数变为 γ

    Args:
        s: 展开
        gamma: 截断阶数（不能超过余项阶数）

    Returns:
        PhgSeries
    """
    if gamma > s.remainder_order + KEY_TOL:
        raise InvalidTruncationError(f"截断阶数 {gamma} 超过余项阶数 {s.remainder_order}")
    kept = tuple(t for t in s.terms if t.j.real <= gamma + KEY_TOL)
    return PhgSeries(kept, gamma, s.variable_name)


def eval_series(s: PhgSeries, x, params=None):
    """
    计算 Σ coeff(params)·x^j·(log x)^k

    Args:
        s: 展开
        x: 正实数（标量或数组）
        params: 参数点，传给系数函数

    Returns:
        复数（或复数组）
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise DomainError("展开变量必须为正数")
    log_x = np.log(x_arr)
    total = np.zeros_like(x_arr, dtype=complex)
    for term in s.terms:
        total = total + term.value(params) * np.exp(term.j * log_x) * log_x ** term.k
    return complex(total) if np.ndim(x) == 0 else total


def monomial_multiply(s: PhgSeries, j0: complex, k0: int = 0) -> PhgSeries:
    """乘以单项式 x^{j0}；对数幂乘法 (k0 > 0) 不支持"""
    if k0 > 0:
        raise UnsupportedOperationError("不支持对数幂乘法 (k0 > 0)")
    j0 = complex(j0)
    terms = tuple(PhgTerm(t.j + j0, t.k, t.coeff) for t in s.terms)
    return PhgSeries(terms, s.remainder_order + j0.real, s.variable_name)


def substitute_scale(s: PhgSeries, c: float, params=None, variable_name: str = "y") -> PhgSeries:
    """
    变量替换 x = c·y，并在参数点处冻结系数

    x^j log^k x = c^j y^j Σ_κ C(k,κ) (log c)^{k−κ} log^κ y，结果按 (j, κ) 合并。

    Args:
        s: x 变量的展开
        c: 正缩放因子
        params: 参数点
        variable_name: 新变量名称

    Returns:
        y 变量的常系数展开
    """
    if c <= 0:
        raise DomainError(f"缩放因子必须为正：{c}")
    log_c = np.log(c)
    merged = {}
    exponents = {}
    for term in s.terms:
        base = term.value(params) * np.exp(term.j * log_c)
        for kappa in range(term.k + 1):
            key = (round(term.j.real, 10), round(term.j.imag, 10), kappa)
            exponents[key] = term.j
            merged[key] = merged.get(key, 0j) + base * comb(term.k, kappa) * log_c ** (term.k - kappa)
    terms = tuple(PhgTerm(exponents[key], key[2], complex(v)) for key, v in merged.items())
    return PhgSeries(terms, s.remainder_order, variable_name)


def series_to_frame(s: PhgSeries, params=None) -> pd.DataFrame:
    """导出为表格：列 (re_j, im_j, k, re_coeff, im_coeff)"""
    rows = []
    for term in s.terms:
        value = term.value(params)
        rows.append({
            "re_j": term.j.real,
            "im_j": term.j.imag,
            "k": term.k,
            "re_coeff": value.real,
            "im_coeff": value.imag,
        })
    return pd.DataFrame(rows, columns=["re_j", "im_j", "k", "re_coeff", "im_coeff"])


@dataclass(frozen=True)
class CornerCoefficient:
    """
    角区 (σ 小, λ = σr 大) 展开系数 φ_{j,k}(λ)

    evaluate 在实轴上可用；tail_start 之后 evaluate 对复 λ 解析（用于尾部射线积分）。
    lower 为支撑下界 Λ。
    """

    evaluate: Callable
    lower: float
    tail_start: float

    def __call__(self, lam):
        return self.evaluate(lam)


@dataclass(frozen=True)
class LambdaCoefficient:
    """
    r 展开系数 φ_{j,k}(λ)

    support 给出 λ 的紧支撑区间；否则 evaluate 须对复 λ 解析，poles 列出全部极点。
    """

    evaluate: Callable
    support: Optional[Tuple[float, float]] = None
    poles: Tuple[complex, ...] = ()

    def __call__(self, lam):
        return self.evaluate(lam)


@dataclass(frozen=True)
class PhgProfile:
    """
    被积函数 φ(σ, r) 的描述

    Args:
        name: 名称
        evaluate: (σ, r) → 复数，σ 支持 numpy 数组；analytic 时也支持复 σ
        sigma_expansion: σ→0 展开，系数为 r 的函数
        r_expansion: 固定 λ=σr 时 ρ=1/r → 0 的展开，系数为 λ 的函数
        corner_expansion: 固定 λ 时 σ→0 的展开，系数为 CornerCoefficient
        support_hint: σ 的支撑区间 (lo, hi)，可以是 r 的函数
        decay: 'gaussian' | 'schwartz' | 'compact'
        gaussian_rate: 高斯因子 e^{−gσ²} 的速率 g（无则为 0）
        reduced: 去掉高斯因子后的剩余部分 (σ, r) → 复数，支持复 σ
        poles: r → 剩余部分的极点列表
        derivative: (σ, r, n) → n 阶 σ 导数（可选，精确值优先于差分）
        even: φ 是否关于 σ 为偶函数
        remainder_delta: σ 展开余项的额外阶数 δ
    """

    name: str
    evaluate: Callable
    sigma_expansion: PhgSeries = field(default_factory=PhgSeries)
    r_expansion: Optional[PhgSeries] = None
    corner_expansion: Optional[PhgSeries] = None
    support_hint: Optional[Union[Tuple[float, float], Callable]] = None
    decay: str = "gaussian"
    gaussian_rate: float = 0.0
    reduced: Optional[Callable] = None
    poles: Callable = lambda r: []
    derivative: Optional[Callable] = None
    even: bool = False
    remainder_delta: float = 1.0

    @property
    def analytic(self) -> bool:
        return self.reduced is not None

    def __call__(self, sigma, r):
        return self.evaluate(sigma, r)

    def support(self, r) -> Optional[Tuple[float, float]]:
        hint = self.support_hint
        if hint is None:
            return None
        return tuple(hint(r)) if callable(hint) else tuple(hint)

    def lambda_expansion(self, r: float) -> PhgSeries:
        """λ = σr → 0 展开，在给定 r 处为常系数"""
        return substitute_scale(self.sigma_expansion, 1.0 / r, params=r, variable_name="lambda")

    def sigma_truncation(self, sigma, r, gamma: float):
        """σ 展开截断到 γ 后的值"""
        return eval_series(truncate(self.sigma_expansion, gamma), sigma, params=r)


def scaled_profile(profile: PhgProfile, weight: Callable, name: str,
                   support_hint=None, decay: Optional[str] = None,
                   corner_expansion: Optional[PhgSeries] = None) -> PhgProfile:
    """
    用截断权重 w(σ, r) 乘被积函数（单位分解的各部分）

    权重一般不解析，因此结果不再提供 reduced/poles；σ 展开只在 w ≡ 1 于 σ=0 附近时保留。
    """
    return PhgProfile(
        name=name,
        evaluate=lambda sigma, r: weight(sigma, r) * profile.evaluate(sigma, r),
        sigma_expansion=PhgSeries(),
        r_expansion=None,
        corner_expansion=corner_expansion,
        support_hint=support_hint,
        decay=decay or profile.decay,
        gaussian_rate=profile.gaussian_rate,
        even=False,
    )


def coerce_series(terms: Sequence[Tuple[complex, int, Coefficient]], remainder_order=np.inf,
                  variable_name="x") -> PhgSeries:
    """由 (j, k, coeff) 元组列表快速构造展开"""
    return PhgSeries(tuple(PhgTerm(j, k, c) for j, k, c in terms), remainder_order, variable_name)
