# asymptotic_analysis/face_expansions.py
"""
kf 与 parF 面的渐近展开
kf：τ = t/r² → ∞，由 λ = σr 展开经半直线 Fourier 变换得到；
parF：r → ∞ 固定 τ，由 r 展开的系数函数做数值振荡积分得到
"""

from dataclasses import dataclass, field
from math import factorial
from typing import Optional, Tuple

import numpy as np

from fourier_analysis.halfline_fourier import (
    evaluate_fourier_expansion,
    numeric_halfline_fourier,
    phg_fourier_expansion,
)
from fourier_analysis.oscillatory_quadrature import OscIntegrand, quad_contour
from geometry_analysis.compactification import RegimeLabel
from series_analysis.phg_series import PhgProfile, PhgSeries, PhgTerm, truncate
from series_analysis.special_functions import BRANCH, CCoeffKey, c_coeff
from utils.config import CUTOFF_CONFIG, EXPANSION_CONFIG, QUADRATURE_CONFIG
from utils.errors import DomainError, UnsupportedOperationError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class CutoffParams:
    """驻相窗口 ψ 与时间截断 χ 的参数（χ ≡ 1 于 t ≤ chi_flat，要求 chi_flat > 0）"""

    psi_flat: float = CUTOFF_CONFIG["PSI_FLAT"]
    psi_support: float = CUTOFF_CONFIG["PSI_SUPPORT"]
    chi_flat: float = CUTOFF_CONFIG["CHI_FLAT"]
    chi_zero: float = CUTOFF_CONFIG["CHI_ZERO"]

    def __post_init__(self):
        if not 0 < self.psi_flat < self.psi_support:
            raise DomainError("需要 0 < psi_flat < psi_support")
        if not 0 < self.chi_flat < self.chi_zero:
            raise DomainError("需要 0 < chi_flat < chi_zero（0 ∉ supp(1−χ)）")


@dataclass(frozen=True)
class ExpansionRequest:
    """
    渐近展开请求

    Args:
        profile: 被积函数
        sign: I₊ (+1) 或 I₋ (−1)
        face: 渐近区域
        order: 截断阶数 γ
        cutoff_params: 截断函数参数
    """

    profile: PhgProfile
    sign: int = 1
    face: RegimeLabel = RegimeLabel.KF
    order: float = 2.0
    cutoff_params: CutoffParams = field(default_factory=CutoffParams)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign 必须为 ±1：{self.sign}")


@dataclass(frozen=True)
class ExpansionResult:
    """展开求值结果：数值、使用的项数、区域外警告与元数据"""

    value: complex
    face: RegimeLabel
    terms_used: int = 0
    warnings: Tuple[str, ...] = ()
    metadata: dict = field(default_factory=dict)


def _regime_warning(face: RegimeLabel, message: str) -> str:
    logger.warning(f"[{face.value}] {message}")
    return message


def xi_series_from_lambda(lam_series: PhgSeries, sign: int, order: float) -> Tuple[PhgSeries, int]:
    """
    e^{±iλ}·Σ φ^{j,K} λ^j log^K λ 在 ξ = λ² 下的展开

    λ^j log^K λ = ξ^{j/2} log^K ξ / 2^K，e^{±iλ} = Σ (±i)^{j₀} λ^{j₀}/j₀!；
    j₀ 截断到 order − min Re j。

    Returns:
        (ξ 的常系数展开, j₀ 上限)
    """
    terms = truncate(lam_series, order).terms
    if not terms:
        return PhgSeries(variable_name="xi"), 0
    j0_max = int(np.floor(order - min(t.j.real for t in terms) + 1e-12))
    merged, exponents = {}, {}
    for term in terms:
        base = term.value() / 2.0 ** term.k
        for j0 in range(j0_max + 1):
            j = term.j + j0
            if j.real > order + 1e-12:
                break
            key = (round(j.real, 10), round(j.imag, 10), term.k)
            exponents[key] = j / 2.0
            merged[key] = merged.get(key, 0j) + base * (sign * 1j) ** j0 / factorial(j0)
    xi_terms = tuple(PhgTerm(exponents[key], key[2], value) for key, value in merged.items())
    return PhgSeries(xi_terms, order / 2.0, "xi"), j0_max


def kf_expansion(req: ExpansionRequest, t: float, r: float) -> ExpansionResult:
    """
    kf 面 (τ → ∞) 展开

    ρ²·Σ_{(j,k)} [Σ_{j₀} Σ_{K≥k} (±i)^{j₀}/(j₀!2^K)·φ^{j−j₀,K}·c_{j/2,K,k}]·τ^{−j/2−1} log^k τ

    Args:
        req: 展开请求（order 为 λ 指数的截断）
        t, r: 时空点 (t > 0, r > 0)

    Returns:
        ExpansionResult
    """
    if t <= 0 or r <= 0:
        raise DomainError(f"kf 展开需要 t > 0, r > 0：t={t}, r={r}")
    rho = 1.0 / r
    tau = t * rho ** 2
    warnings = []
    if tau <= EXPANSION_CONFIG["KF_MIN_TAU"]:
        warnings.append(_regime_warning(RegimeLabel.KF, f"τ = {tau:.3g} ≤ {EXPANSION_CONFIG['KF_MIN_TAU']:g}，超出 kf 区域"))

    lam_series = req.profile.lambda_expansion(r)
    xi_series, j0_max = xi_series_from_lambda(lam_series, req.sign, req.order)
    if not xi_series.terms:
        return ExpansionResult(0j, RegimeLabel.KF, 0, tuple(warnings), {"tau": tau, "j0_max": 0})

    fourier = phg_fourier_expansion(xi_series, req.order / 2.0, 1)
    value = rho ** 2 * evaluate_fourier_expansion(fourier, tau)
    return ExpansionResult(value, RegimeLabel.KF, len(fourier), tuple(warnings),
                           {"tau": tau, "j0_max": j0_max})


def kf_leading_term(profile: PhgProfile, t: float, r: float) -> ExpansionResult:
    """
    kf 展开首项 ρ²·φ^{j,k}·c_{j/2,k,k;+}/2^k·τ^{−j/2−1} log^k τ

    c_{j/2,k,k;+} = i^{1+j/2}(−1)^k Γ(1+j/2)；(j,k) 取 λ 展开中 Re j 最小、k 最大的项。
    """
    rho = 1.0 / r
    tau = t * rho ** 2
    terms = profile.lambda_expansion(r).terms
    if not terms:
        return ExpansionResult(0j, RegimeLabel.KF, 0, (), {"tau": tau})
    j_min = min(term.j.real for term in terms)
    lead = max((term for term in terms if abs(term.j.real - j_min) < 1e-12), key=lambda term: term.k)
    half_j = lead.j / 2.0
    coeff = lead.value() * c_coeff(CCoeffKey(half_j, lead.k, lead.k, 1)) / 2.0 ** lead.k
    value = rho ** 2 * coeff * BRANCH.power(tau, -half_j - 1) * np.log(tau) ** lead.k
    return ExpansionResult(complex(value), RegimeLabel.KF, 1, (),
                           {"tau": tau, "j": lead.j, "k": lead.k})


def _lambda_profile(coefficient, name: str) -> PhgProfile:
    """把解析的 r 展开系数 φ_{j,k}(λ) 包装成 λ 变量的被积函数（无高斯因子）"""
    return PhgProfile(
        name=name,
        evaluate=lambda lam, r: coefficient(lam),
        reduced=lambda lam, r: coefficient(lam),
        poles=lambda r: list(coefficient.poles),
        decay="schwartz",
        gaussian_rate=0.0,
    )


def lambda_oscillatory_integral(coefficient, tau: float, sign: int, tol: float = None) -> complex:
    """
    2∫₀^∞ e^{iλ²τ ± iλ} φ(λ) λ dλ

    紧支撑系数在 ξ = λ² 下做数值半直线变换；否则沿复 λ 路径做围道积分。
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    support = getattr(coefficient, "support", None)
    if support is not None:
        lo, hi = support

        def in_xi(xi):
            lam = np.sqrt(np.maximum(xi, 0.0))
            return np.exp(sign * 1j * lam) * coefficient(lam)

        return numeric_halfline_fourier(in_xi, tau, (lo ** 2, hi ** 2), tol).value
    if not hasattr(coefficient, "poles"):
        raise UnsupportedOperationError("r 展开系数既无紧支撑也无解析信息")
    integrand = OscIntegrand(_lambda_profile(coefficient, "parF-coefficient"), sign)
    return quad_contour(integrand, tau, 1.0, tol).value


def parF_expansion(req: ExpansionRequest, t: float, r: float,
                   tol: Optional[float] = None) -> ExpansionResult:
    """
    parF 面 (r → ∞，τ = t/r² 固定) 展开

    Σ ρ^{j+2} log^k ρ · F_{ξ→τ}(e^{±iξ^{1/2}} φ_{j,k}(ξ^{1/2}))(τ)，截断到 req.order。

    Args:
        req: 展开请求
        t, r: 时空点 (t > 0)
        tol: 每个系数积分的容差

    Returns:
        ExpansionResult
    """
    if req.profile.r_expansion is None:
        raise UnsupportedOperationError(f"被积函数 '{req.profile.name}' 没有 r 展开")
    if t <= 0 or r <= 0:
        raise DomainError(f"parF 展开需要 t > 0, r > 0：t={t}, r={r}")
    rho = 1.0 / r
    tau = t * rho ** 2
    warnings = []
    if r < 10:
        warnings.append(_regime_warning(RegimeLabel.PARF, f"r = {r:g} 较小，parF 展开可能不准确"))

    series = truncate(req.profile.r_expansion, req.order)
    total = 0j
    integrals = {}
    for term in series.terms:
        integral = lambda_oscillatory_integral(term.coeff, tau, req.sign, tol)
        integrals[(term.j.real, term.k)] = integral
        total += BRANCH.power(rho, term.j + 2) * np.log(rho) ** term.k * integral
    return ExpansionResult(total, RegimeLabel.PARF, len(series.terms), tuple(warnings),
                           {"tau": tau, "integrals": integrals})
