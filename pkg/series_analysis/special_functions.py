# series_analysis/special_functions.py
"""
特殊函数模块
复 Γ 函数及其导数、展开系数 c_{j,k,κ;±}、Fresnel/高斯振荡矩
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, pi

import numpy as np
from scipy import special

from utils.config import EXPANSION_CONFIG
from utils.errors import DomainError, GammaPoleError, UnsupportedOperationError

EULER_GAMMA = float(np.euler_gamma)

# 多伽马渐近级数参数
_ASYMPTOTIC_RADIUS = 20.0
_ASYMPTOTIC_TERMS = 10


class BranchPolicy:
    """
    复幂函数的统一分支约定：主值对数，(±i)^z = exp(±πiz/2)

    所有复底数的幂运算都经过这里，保证同一分支割线。
    """

    @staticmethod
    def log(w: complex) -> complex:
        w = complex(w)
        if w == 0:
            raise DomainError("对数在 0 处无定义")
        return complex(np.log(w))

    @classmethod
    def power(cls, w: complex, z: complex) -> complex:
        """主值幂 w^z = exp(z·Log w)"""
        return complex(np.exp(complex(z) * cls.log(w)))

    @staticmethod
    def i_power(sign: int, z: complex) -> complex:
        """(±i)^z = exp(±πiz/2)"""
        return complex(np.exp(sign * 0.5j * pi * complex(z)))


BRANCH = BranchPolicy()


def _check_pole(z: complex):
    z = complex(z)
    if abs(z.imag) < 1e-300 and z.real <= 0 and float(z.real).is_integer():
        raise GammaPoleError(f"Γ 在非正整数 {z.real:g} 处有极点")


def gamma(z: complex) -> complex:
    """
    欧拉 Γ 函数（复变量）

    Args:
        z: 复数，不能是非正整数

    Returns:
        Γ(z)
    """
    _check_pole(z)
    z = complex(z)
    if z.imag == 0:
        return complex(special.gamma(z.real))
    return complex(special.gamma(z))


def polygamma(m: int, z: complex) -> complex:
    """
    复变量多伽马函数 ψ^{(m)}(z)

    m = 0 直接调用 scipy 的 digamma；m ≥ 1 先向上递推到 Re z ≥ 20，
    再用含 Bernoulli 数的渐近级数。
    """
    _check_pole(z)
    z = complex(z)
    if m == 0:
        return complex(special.psi(z))

    sign = (-1) ** (m + 1)
    shift_sum = 0j
    w = z
    while w.real < _ASYMPTOTIC_RADIUS:
        # ψ^{(m)}(w) = ψ^{(m)}(w+1) − (−1)^m m!/w^{m+1}
        shift_sum += sign * factorial(m) / w ** (m + 1)
        w += 1.0

    bern = _bernoulli_numbers()
    series = factorial(m - 1) / w ** m + factorial(m) / (2.0 * w ** (m + 1))
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        series += bern[2 * k] * factorial(2 * k + m - 1) / (factorial(2 * k) * w ** (2 * k + m))
    return sign * series + shift_sum


@lru_cache(maxsize=1)
def _bernoulli_numbers():
    return tuple(float(b) for b in special.bernoulli(2 * _ASYMPTOTIC_TERMS))


def gamma_derivative(z: complex, n: int) -> complex:
    """
    Γ 的 n 阶导数

    使用 Γ' = Γψ 的 Leibniz 递推：Γ^{(n+1)} = Σ_k C(n,k) Γ^{(n−k)} ψ^{(k)}。

    Args:
        z: 复数，不能是非正整数
        n: 导数阶数（0 ≤ n ≤ 8）

    Returns:
        dⁿΓ/dzⁿ (z)
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"导数阶数必须为非负整数：{n}")
    if n > EXPANSION_CONFIG["MAX_DERIVATIVE_ORDER"]:
        raise UnsupportedOperationError(
            f"Γ 导数阶数上限为 {EXPANSION_CONFIG['MAX_DERIVATIVE_ORDER']}，收到 {n}")
    return _gamma_derivatives(complex(z), int(n))[n]


@lru_cache(maxsize=4096)
def _gamma_derivatives(z: complex, n: int):
    derivs = [gamma(z)]
    psis = [polygamma(k, z) for k in range(n)]
    for order in range(n):
        derivs.append(sum(comb(order, k) * derivs[order - k] * psis[k] for k in range(order + 1)))
    return tuple(derivs)


@dataclass(frozen=True)
class CCoeffKey:
    """c_{j,k,κ;±} 的索引"""

    j: complex
    k: int
    kappa: int
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "j", complex(self.j))
        if self.j.real <= -1:
            raise DomainError(f"需要 Re j > −1：{self.j}")
        if self.k < 0 or not 0 <= self.kappa <= self.k:
            raise DomainError(f"需要 0 ≤ κ ≤ k：k={self.k}, κ={self.kappa}")
        if self.sign not in (1, -1):
            raise DomainError(f"sign 必须为 ±1：{self.sign}")


def c_coeff(key: CCoeffKey) -> complex:
    """
    展开系数 c_{j,k,κ;±}

    c = (±i)^{j+1} (−1)^κ C(k,κ) Σ_ϰ C(k−κ,ϰ) (±πi/2)^{k−κ−ϰ} Γ^{(ϰ)}(j+1)，
    其中 ± 为 τ 的符号。
    """
    j, k, kappa, s = key.j, key.k, key.kappa, key.sign
    m = k - kappa
    half_turn = s * 0.5j * pi
    total = sum(comb(m, p) * half_turn ** (m - p) * gamma_derivative(j + 1, p) for p in range(m + 1))
    return BRANCH.i_power(s, j + 1) * (-1) ** kappa * comb(k, kappa) * total


def fresnel_moment(m: int, tau: float) -> complex:
    """
    全直线 Gauss-Fresnel 矩 ∫ e^{iδ²/τ} δ^{2m} dδ = Γ(m+1/2)·(iτ)^{m+1/2}

    Args:
        m: 非负整数（偶次幂 2m）
        tau: 正实数

    Returns:
        复数矩
    """
    if tau <= 0:
        raise DomainError(f"需要 τ > 0：{tau}")
    if m < 0 or int(m) != m:
        raise DomainError(f"m 必须为非负整数：{m}")
    a = m + 0.5
    return gamma(a) * tau ** a * BRANCH.i_power(1, a)


def fresnel_power_moment(p: int, tau: float) -> complex:
    """任意幂次 p 的 Fresnel 矩；奇次幂为 0"""
    if p % 2:
        return 0j
    return fresnel_moment(p // 2, tau)


def stationary_moment(k: int, t: float) -> complex:
    """驻相矩 ∫ e^{itu²} u^k du = (−it)^{−(k+1)/2} Γ((k+1)/2)（k 为奇数时为 0）"""
    if t <= 0:
        raise DomainError(f"需要 t > 0：{t}")
    if k % 2:
        return 0j
    a = (k + 1) / 2.0
    return gamma(a) * BRANCH.power(-1j * t, -a)
