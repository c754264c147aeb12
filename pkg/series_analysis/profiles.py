# series_analysis/profiles.py
"""
被积函数样例库
高斯、数值示例 e^{−σ²}/(2(1+κ²σ²r²))、σ 紧支撑鼓包、λ=σr 紧支撑鼓包、高能部分与中能部分
"""

from math import factorial

import numpy as np
from scipy import special

from geometry_analysis.compactification import bump, cutoff, partition_weights
from series_analysis.phg_series import (
    CornerCoefficient,
    LambdaCoefficient,
    PhgProfile,
    PhgSeries,
    PhgTerm,
    coerce_series,
)
from utils.config import PARTITION_CONFIG
from utils.errors import DomainError

# σ 展开保留的偶次项个数
_TAYLOR_TERMS = 6


def _gaussian_derivative(sigma, r, n, rate=1.0):
    """dⁿ/dσⁿ e^{−gσ²} = (−√g)ⁿ Hₙ(√g σ) e^{−gσ²}"""
    root = np.sqrt(rate)
    x = root * np.asarray(sigma, dtype=float)
    return (-root) ** n * special.eval_hermite(n, x) * np.exp(-x * x)


def gaussian_profile(rate: float = 1.0) -> PhgProfile:
    """
    φ(σ) = e^{−gσ²}，与 r 无关

    σ 展开 Σ (−g)ⁿ σ^{2n}/n!；I₊ 在 r=0 有闭式 1/(g − it)
    """
    if rate <= 0:
        raise DomainError(f"高斯速率必须为正：{rate}")
    sigma_expansion = coerce_series(
        [(2 * n, 0, (-rate) ** n / factorial(n)) for n in range(_TAYLOR_TERMS)],
        remainder_order=2 * _TAYLOR_TERMS - 1,
        variable_name="sigma",
    )
    return PhgProfile(
        name="gaussian",
        evaluate=lambda sigma, r: np.exp(-rate * np.asarray(sigma) ** 2),
        sigma_expansion=sigma_expansion,
        decay="gaussian",
        gaussian_rate=rate,
        reduced=lambda sigma, r: np.ones_like(np.asarray(sigma), dtype=complex),
        poles=lambda r: [],
        derivative=lambda sigma, r, n: _gaussian_derivative(sigma, r, n, rate),
        even=True,
        remainder_delta=1.0,
    )


def _example_sigma_coefficient(n: int, scale: float):
    """数值示例 σ^{2n} 项系数：½ Σ_{m+l=n} (−1)ⁿ (κr)^{2m}/l!"""

    def coeff(r):
        kr2 = (scale * r) ** 2
        return 0.5 * (-1) ** n * sum(kr2 ** m / factorial(n - m) for m in range(n + 1))

    return coeff


def _example_r_coefficient(n: int, scale: float):
    """固定 λ 时 ρ^{2n} 项系数：(−1)ⁿ λ^{2n}/(n!·2(1+κ²λ²))"""

    def coeff(lam):
        lam = np.asarray(lam)
        return (-1) ** n * lam ** (2 * n) / (factorial(n) * 2.0 * (1.0 + (scale * lam) ** 2))

    return coeff


def example_profile(scale: float = 1.0) -> PhgProfile:
    """
    数值示例被积函数 φ(σ, r) = e^{−σ²}/(2(1+κ²σ²r²))

    Args:
        scale: 分母长度尺度 κ（κ=1 为原始形式）

    Returns:
        PhgProfile：偶函数，极点 σ = ±i/(κr)
    """
    if scale <= 0:
        raise DomainError(f"分母尺度必须为正：{scale}")

    def evaluate(sigma, r):
        sigma = np.asarray(sigma)
        return np.exp(-sigma ** 2) / (2.0 * (1.0 + (scale * sigma * r) ** 2))

    def reduced(sigma, r):
        sigma = np.asarray(sigma)
        return 1.0 / (2.0 * (1.0 + (scale * sigma * r) ** 2))

    sigma_expansion = PhgSeries(
        tuple(PhgTerm(2 * n, 0, _example_sigma_coefficient(n, scale)) for n in range(_TAYLOR_TERMS)),
        remainder_order=2 * _TAYLOR_TERMS - 1,
        variable_name="sigma",
    )
    r_expansion = PhgSeries(
        tuple(PhgTerm(2 * n, 0, LambdaCoefficient(_example_r_coefficient(n, scale),
                                                 poles=(1j / scale, -1j / scale)))
              for n in range(3)),
        remainder_order=5,
        variable_name="rho",
    )
    return PhgProfile(
        name="example",
        evaluate=evaluate,
        sigma_expansion=sigma_expansion,
        r_expansion=r_expansion,
        corner_expansion=example_corner_expansion(scale),
        decay="gaussian",
        gaussian_rate=1.0,
        reduced=reduced,
        poles=lambda r: [1j / (scale * r), -1j / (scale * r)],
        even=True,
        remainder_delta=1.0,
    )


def example_corner_expansion(scale: float = 1.0, terms: int = 3,
                             lambda_0: float = None) -> PhgSeries:
    """
    数值示例中能部分在角区 (σ→0, λ 固定) 的展开

    系数 φ_{2n,0}(λ) = (1 − cut(λ/Λ₀))·(−1)ⁿ/(n!·2(1+κ²λ²))；λ ≥ Λ₀ 之后解析。
    """
    lambda_0 = PARTITION_CONFIG["LAMBDA_0"] if lambda_0 is None else lambda_0
    low_flat, low_zero = PARTITION_CONFIG["LOW_BAND"]

    def make(n):
        def coeff(lam):
            lam = np.asarray(lam)
            lam_real = np.real(lam)
            # 尾部 (λ ≥ Λ₀) 截断权重恒为 1，复 λ 上只保留解析部分
            weight = np.where(lam_real >= lambda_0, 1.0,
                              1.0 - cutoff(lam_real / lambda_0, low_flat, low_zero))
            return weight * (-1) ** n / (factorial(n) * 2.0 * (1.0 + (scale * lam) ** 2))

        return CornerCoefficient(evaluate=coeff, lower=low_flat * lambda_0, tail_start=lambda_0)

    return PhgSeries(
        tuple(PhgTerm(2 * n, 0, make(n)) for n in range(terms)),
        remainder_order=2 * terms - 1,
        variable_name="sigma",
    )


def bump_profile(center: float = 0.7, half_width: float = 0.5) -> PhgProfile:
    """σ 紧支撑鼓包 φ(σ) = b((σ−c)/w)；σ=0 附近恒为 0（空展开）"""
    if half_width <= 0 or center - half_width < 0:
        raise DomainError("鼓包支撑必须位于 σ ≥ 0")
    return PhgProfile(
        name="bump",
        evaluate=lambda sigma, r: bump((np.asarray(sigma) - center) / half_width),
        sigma_expansion=PhgSeries(variable_name="sigma"),
        support_hint=(center - half_width, center + half_width),
        decay="compact",
    )


def lambda_bump_profile(lower: float = 1.0, upper: float = 3.0) -> PhgProfile:
    """
    λ = σr 紧支撑鼓包 φ(σ, r) = B(σr)

    r 展开只有一项 (0,0)，系数就是 B(λ) 本身，因此 parF 展开精确。
    """
    if not 0 <= lower < upper:
        raise DomainError("λ 支撑区间无效")
    center, half_width = 0.5 * (lower + upper), 0.5 * (upper - lower)

    def shape(lam):
        return bump((np.asarray(lam) - center) / half_width)

    return PhgProfile(
        name="lambda_bump",
        evaluate=lambda sigma, r: shape(np.asarray(sigma) * r),
        sigma_expansion=PhgSeries(variable_name="sigma"),
        r_expansion=coerce_series([(0, 0, LambdaCoefficient(shape, support=(lower, upper)))],
                                  variable_name="rho"),
        support_hint=lambda r: (lower / r, upper / r),
        decay="compact",
    )


def high_energy_profile(sigma_1: float = None) -> PhgProfile:
    """高能部分 w_high(σ)·e^{−σ²}：σ < Σ₁ 时恒为 0，σ ≥ 2Σ₁ 时 w_high ≡ 1"""
    sigma_1 = PARTITION_CONFIG["SIGMA_1"] if sigma_1 is None else sigma_1
    sigma_0 = min(PARTITION_CONFIG["SIGMA_0"], 0.5 * sigma_1)

    def evaluate(sigma, r):
        sigma = np.asarray(sigma, dtype=float)
        weights = partition_weights(sigma, max(r, 1.0), sigma_0=sigma_0, sigma_1=sigma_1)
        return weights[2] * np.exp(-sigma ** 2)

    return PhgProfile(
        name="high_energy",
        evaluate=evaluate,
        sigma_expansion=PhgSeries(variable_name="sigma"),
        support_hint=(sigma_1, np.inf),
        decay="gaussian",
        gaussian_rate=1.0,
    )


def mid_piece_profile(scale: float = 1.0) -> PhgProfile:
    """数值示例的中能部分 w_mid·φ，支撑在 σ ≤ 2Σ₁ 且 σr ≥ Λ₀/4"""
    base = example_profile(scale)
    sigma_1 = PARTITION_CONFIG["SIGMA_1"]
    high_zero = PARTITION_CONFIG["HIGH_BAND"][1]
    low_flat = PARTITION_CONFIG["LOW_BAND"][0]
    lambda_0 = PARTITION_CONFIG["LAMBDA_0"]

    def evaluate(sigma, r):
        sigma = np.asarray(sigma, dtype=float)
        return partition_weights(sigma, r)[1] * base.evaluate(sigma, r)

    return PhgProfile(
        name="mid_piece",
        evaluate=evaluate,
        sigma_expansion=PhgSeries(variable_name="sigma"),
        corner_expansion=example_corner_expansion(scale),
        support_hint=lambda r: (low_flat * lambda_0 / r, high_zero * sigma_1),
        decay="compact",
    )


def truncated_exponential(cut: float = 40.0):
    """
    半直线样例 f(ξ) = e^{−ξ}·1_{[0,cut]}

    Returns:
        (f, support, ξ→0 展开 {(0,0):1, (1,0):−1})
    """
    def f(xi):
        xi = np.asarray(xi, dtype=float)
        return np.where(xi <= cut, np.exp(-xi), 0.0)

    expansion = coerce_series([(0, 0, 1.0), (1, 0, -1.0)], remainder_order=2, variable_name="xi")
    return f, (0.0, cut), expansion


PROFILE_FACTORIES = {
    "gaussian": gaussian_profile,
    "example": example_profile,
    "bump": bump_profile,
    "lambda_bump": lambda_bump_profile,
    "high_energy": high_energy_profile,
    "mid_piece": mid_piece_profile,
}


def get_profile(name: str, **kwargs) -> PhgProfile:
    """按名称创建样例被积函数（CLI 使用）"""
    try:
        factory = PROFILE_FACTORIES[name]
    except KeyError as exc:
        raise DomainError(f"未知被积函数 '{name}'，可选：{sorted(PROFILE_FACTORIES)}") from exc
    return factory(**kwargs)
