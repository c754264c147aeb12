# asymptotic_analysis/corner_analysis.py
"""
角区 (σ 小, λ = σr 有界以下) 的 kf 展开，以及驻点附近 Fresnel 型矩 𝒥_k 的 τ 缩放检查
"""

from math import ceil, comb
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from fourier_analysis.gauss_kronrod import integrate_panels, uniform_edges
from fourier_analysis.oscillatory_quadrature import phase_edges
from geometry_analysis.compactification import stationary_window
from series_analysis.phg_series import CornerCoefficient, PhgProfile, PhgSeries, truncate
from utils.config import CUTOFF_CONFIG, EXPANSION_CONFIG, ORACLE_CONFIG, QUADRATURE_CONFIG
from utils.errors import AccuracyError, DomainError, UnsupportedOperationError
from utils.fitting import fit_loglog_slope
from utils.logger import get_logger

logger = get_logger(__name__)


def _ray_length(tau: float, start: float, sign: int, angle: float) -> float:
    """射线 λ = T + u·e^{iθ} 上 |e^{iτλ² ± iλ}| = e^{−(τu²sin2θ + b·u)}，求衰减到 PATH_DECAY 的 u"""
    target = QUADRATURE_CONFIG["PATH_DECAY"] * 1.5
    a = tau * np.sin(2.0 * angle)
    b = 2.0 * tau * start * np.sin(angle) + sign * np.sin(angle)
    if a <= 0:
        raise UnsupportedOperationError("尾部射线上被积函数不衰减")
    return (-b + np.sqrt(b * b + 4.0 * a * target)) / (2.0 * a)


def lambda_moment(coefficient: CornerCoefficient, j: complex, log_power: int, tau: float,
                  sign: int, tol: float = None) -> complex:
    """
    ∫_Λ^∞ e^{iλ²τ ± iλ} φ(λ) λ^{1+j} log^p λ dλ

    [lower, tail_start] 上按相位分段积分；tail_start 之后沿角度 π/4 的射线积分，
    对不绝对收敛的积分给出振荡积分意义下的值。

    Args:
        coefficient: 角区系数（tail_start 之后解析）
        j: 幂指数
        log_power: 对数幂 p
        tau: τ > 0
        sign: ±1
        tol: 绝对容差

    Returns:
        复数积分值
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    if tau <= 0:
        raise DomainError(f"角区积分需要 τ > 0：{tau}")
    lower, start = float(coefficient.lower), float(coefficient.tail_start)

    def integrand(lam):
        lam = np.asarray(lam, dtype=complex)
        return (np.exp(1j * (tau * lam * lam + sign * lam)) * coefficient(lam)
                * lam ** (1.0 + j) * np.log(lam) ** log_power)

    value, error, converged = 0j, 0.0, True
    if start > lower:
        edges = phase_edges(tau, float(sign), lower, start)
        near = integrate_panels(lambda lam: integrand(np.asarray(lam, dtype=float)), edges, 0.5 * tol)
        value, error, converged = near.value, near.error, near.converged

    angle = EXPANSION_CONFIG["CORNER_TAIL_ANGLE"]
    direction = np.exp(1j * angle)
    length = _ray_length(tau, start, sign, angle)
    oscillation = 2.0 * tau * (start + length) + 1.0
    width = min(length / 64.0, QUADRATURE_CONFIG["PHASE_STEP"] / oscillation)
    far = integrate_panels(
        integrand, uniform_edges(0.0, length, width), 0.5 * tol,
        path=(lambda u: start + u * direction, lambda u: direction * np.ones_like(u, dtype=complex)),
    )
    value += far.value
    error += far.error
    if not (converged and far.converged) or error > tol:
        raise AccuracyError(f"角区 λ 积分 (j={j}, p={log_power}) 未收敛",
                            best_value=value, err_estimate=error)
    return value


def corner_kf_terms(corner_series: PhgSeries, tau: float, r: float, order: float, sign: int = 1,
                    tol: float = None) -> Dict[Tuple[float, int], complex]:
    """
    角区展开的各项 2r^{−j} Σ_κ (−1)^κ C(k,κ) log^κ r · ∫ e^{iλ²τ±iλ} φ_{j,k}(λ) λ^{1+j} log^{k−κ} λ dλ

    Returns:
        {(Re j, k): 该项数值}，不含 ρ² 因子
    """
    if r <= 0:
        raise DomainError(f"需要 r > 0：{r}")
    log_r = np.log(r)
    terms = {}
    for term in truncate(corner_series, order).terms:
        coefficient = term.coeff
        if not isinstance(coefficient, CornerCoefficient):
            raise UnsupportedOperationError("角区展开系数必须是 CornerCoefficient")
        total = 0j
        for kappa in range(term.k + 1):
            moment = lambda_moment(coefficient, term.j, term.k - kappa, tau, sign, tol)
            total += (-1) ** kappa * comb(term.k, kappa) * log_r ** kappa * moment
        terms[(term.j.real, term.k)] = 2.0 * np.exp(-term.j * log_r) * total
    return terms


def corner_kf_expansion(profile: PhgProfile, tau: float, r: float, order: float,
                        sign: int = 1, tol: float = None) -> complex:
    """
    角区展开对 I± 的预测 ρ²·Σ corner_kf_terms

    Args:
        profile: 带 corner_expansion 的被积函数
        tau: τ = t/r²
        r: 半径
        order: 截断阶数
        sign: ±1

    Returns:
        复数预测值
    """
    if profile.corner_expansion is None:
        raise UnsupportedOperationError(f"被积函数 '{profile.name}' 没有角区展开")
    terms = corner_kf_terms(profile.corner_expansion, tau, r, order, sign, tol)
    logger.debug(f"角区展开 {profile.name} (τ={tau}, r={r}): {len(terms)} 项")
    return complex(sum(terms.values()) / r ** 2)


def moment_scaling_exponent(k: int, m: int) -> float:
    """驻点处 m 阶消失的振幅对应 𝒥_k ~ τ^{⌈(k+m)/2⌉ + 1/2}"""
    if k < 0 or m < 0:
        raise DomainError("k, m 必须非负")
    return ceil((k + m) / 2) + 0.5


def default_moment_fixture(order: int) -> Callable:
    """样例振幅 x^m·e^{−x²}·(1+x)，在 x=0 处 m 阶消失"""

    def fixture(x):
        x = np.asarray(x, dtype=float)
        return x ** order * np.exp(-x * x) * (1.0 + x)

    return fixture


def fresnel_moment(k: int, tau: float, fixture: Callable, width: float = None,
                   tol: float = 1e-12) -> complex:
    """
    𝒥_k(τ) = ∫ e^{iδ²/τ} δ^k ψ(2δ) φ(δ/w) dδ

    在 x = δ/w 下积分：w^{k+1}∫ e^{ix²/τ'} x^k ψ(2wx) φ(x) dx，τ' = τ/w²。
    """
    width = ORACLE_CONFIG["JLEM_WIDTH"] if width is None else width
    scaled_tau = tau / width ** 2
    reach = 0.5 * CUTOFF_CONFIG["PSI_SUPPORT"] / width
    lo, hi = -min(8.0, reach), min(8.0, reach)

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return (np.exp(1j * x * x / scaled_tau) * x ** k
                * stationary_window(2.0 * width * x) * fixture(x))

    res = integrate_panels(integrand, phase_edges(1.0 / scaled_tau, 0.0, lo, hi), tol)
    if not res.converged:
        raise AccuracyError(f"𝒥_{k} 在 τ={tau:g} 未收敛", best_value=res.value, err_estimate=res.error)
    return width ** (k + 1) * res.value


def fresnel_moment_scaling_check(k: int, tau_grid: Optional[Sequence[float]] = None,
                                 fixture: Optional[Callable] = None, width: float = None) -> float:
    """
    𝒥_k 在 τ → 0 时的 log-log 斜率

    默认样例在驻点处 k 阶消失，因此斜率应为 1/2 + k。

    Args:
        k: 矩阶数
        tau_grid: τ 网格，默认 w²·[1e-2, 1e-1] 上对数均匀 9 点
        fixture: 振幅 φ(x)，默认 default_moment_fixture(k)
        width: 高斯宽度 w

    Returns:
        拟合斜率；数据为零或残差过大时抛出 InconclusiveFitError
    """
    if k < 0:
        raise DomainError(f"k 必须非负：{k}")
    width = ORACLE_CONFIG["JLEM_WIDTH"] if width is None else width
    if tau_grid is None:
        lo, hi = ORACLE_CONFIG["JLEM_TAU_RANGE"]
        tau_grid = width ** 2 * np.logspace(np.log10(lo), np.log10(hi), ORACLE_CONFIG["JLEM_POINTS"])
    fixture = default_moment_fixture(k) if fixture is None else fixture
    tau_grid = np.asarray(tau_grid, dtype=float)
    values = np.array([fresnel_moment(k, tau, fixture, width) for tau in tau_grid])
    fit = fit_loglog_slope(tau_grid, values)
    logger.info(f"𝒥_{k} 缩放斜率 {fit.slope:.4f}")
    return fit.slope
