# asymptotic_analysis/stationary_phase.py
"""
驻相分析模块
dilF 面的驻相展开、I₋ 的驻相/非驻相分解、主引理的 I₋ = e^{i·phase}·I_osc + I_phg 分解，
以及非驻相部分的快速衰减检查
"""

from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence, Tuple

import numpy as np

from asymptotic_analysis.face_expansions import ExpansionRequest, ExpansionResult
from fourier_analysis.halfline_fourier import QuadResult
from fourier_analysis.oscillatory_quadrature import OscIntegrand, quad_panels
from geometry_analysis.compactification import RegimeLabel, cutoff, time_cutoff
from series_analysis.phg_series import PhgProfile, scaled_profile
from series_analysis.special_functions import stationary_moment
from utils.config import EXPANSION_CONFIG, QUADRATURE_CONFIG
from utils.errors import AccuracyError, DomainError
from utils.fitting import fit_loglog_slope
from utils.logger import get_logger

logger = get_logger(__name__)

_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class DecompositionResult:
    """
    I₋ 的分解结果

    predicted_total = exp(i·phase)·osc_value + phg_value
    """

    osc_value: complex
    phg_value: complex
    phase: float
    predicted_total: complex
    err_estimate: float


def _finite_difference(profile: PhgProfile, sigma: float, r: float, n: int, h: float) -> Tuple[complex, float]:
    """n 阶中心差分 h^{−n} Σ_i (−1)^i C(n,i) φ(σ + (n/2 − i)h)，同时返回所用样本的最大模"""
    offsets = (0.5 * n - np.arange(n + 1)) * h
    weights = np.array([(-1) ** i * comb(n, i) for i in range(n + 1)], dtype=float)
    values = np.asarray(profile.evaluate(sigma + offsets, r), dtype=complex)
    return complex(weights @ values) / h ** n, float(np.max(np.abs(values)))


def sigma_derivative(profile: PhgProfile, sigma: float, r: float, n: int) -> complex:
    """
    φ 的 n 阶 σ 导数

    有精确导数回调时直接使用；否则用中心差分，步长 h = min(0.05, r̂/20)（σ = r̂/2），
    并做 Richardson 外推。

    Args:
        profile: 被积函数
        sigma: 求导点 σ > 0
        r: 半径
        n: 导数阶数

    Returns:
        复数导数值
    """
    if n == 0:
        return complex(np.asarray(profile.evaluate(np.array([sigma]), r))[0])
    if profile.derivative is not None:
        return complex(np.asarray(profile.derivative(np.array([sigma]), r, n))[0])

    h = min(EXPANSION_CONFIG["FD_STEP_MAX"], 2.0 * sigma / EXPANSION_CONFIG["FD_STEP_RATIO"])
    levels = EXPANSION_CONFIG["RICHARDSON_LEVELS"]
    table = []
    scale = 0.0
    for level in range(levels):
        value, size = _finite_difference(profile, sigma, r, n, h / 2 ** level)
        table.append(value)
        scale = max(scale, size)
    # 中心差分误差按 h² 展开
    for m in range(1, levels):
        factor = 4.0 ** m
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    result = table[0]

    noise = np.finfo(float).eps * 2 ** n * scale / (h / 2 ** (levels - 1)) ** n
    if result != 0 and noise > 0.5 * abs(result):
        raise AccuracyError(f"{n} 阶差分被舍入误差淹没（噪声 {noise:.3g}）",
                            best_value=result, err_estimate=noise)
    return result


def amplitude_derivative(profile: PhgProfile, sigma: float, r: float, n: int) -> complex:
    """振幅 a(σ) = 2σφ(σ,r) 的 n 阶导数：2(σφ^{(n)} + nφ^{(n−1)})"""
    value = sigma * sigma_derivative(profile, sigma, r, n)
    if n > 0:
        value += n * sigma_derivative(profile, sigma, r, n - 1)
    return 2.0 * value


def stationary_phase_dilf(req: ExpansionRequest, t: float, rhat: float, K: int) -> ExpansionResult:
    """
    dilF 面驻相展开（r = t·r̂，t → ∞）

    e^{−ir²/4t}·Σ_{j=0}^{K} Γ(j+1/2)/((2j)!(−it)^{j+1/2})·a^{(2j)}(r̂/2)，a = 2σφ(σ, t·r̂)

    Args:
        req: 展开请求（sign 必须为 −）
        t: 时间 t > 0
        rhat: r̂ = r/t > 0
        K: 截断项数

    Returns:
        ExpansionResult
    """
    if req.sign != -1:
        raise DomainError("驻相展开只适用于 I₋")
    if t <= 0 or rhat <= 0:
        raise DomainError(f"需要 t > 0, r̂ > 0：t={t}, r̂={rhat}")
    if K < 0:
        raise DomainError(f"K 必须非负：{K}")
    r = t * rhat
    sigma_star = 0.5 * rhat
    total = 0j
    for j in range(K + 1):
        total += amplitude_derivative(req.profile, sigma_star, r, 2 * j) / factorial(2 * j) \
            * stationary_moment(2 * j, t)
    value = np.exp(-1j * r * r / (4.0 * t)) * total
    return ExpansionResult(complex(value), RegimeLabel.DILF, K + 1, (),
                           {"sigma_star": sigma_star, "r": r})


def _window_profiles(profile: PhgProfile, t: float, r: float, flat: float, support: float):
    sigma_star = r / (2.0 * t)

    def window(sigma, r_):
        return cutoff(np.asarray(sigma) - sigma_star, flat, support)

    def complement(sigma, r_):
        return 1.0 - window(sigma, r_)

    lo = max(0.0, sigma_star - support)
    stat = scaled_profile(profile, window, f"{profile.name}-stat",
                          support_hint=(lo, sigma_star + support), decay="compact")
    non = scaled_profile(profile, complement, f"{profile.name}-non",
                         support_hint=profile.support_hint)
    return stat, non


def stationary_split(req: ExpansionRequest, t: float, r: float,
                     tol: float = None) -> Tuple[QuadResult, QuadResult]:
    """
    I₋ = I_{−,stat} + I_{−,non}，窗口 ψ(σ − r/2t)

    Args:
        req: 展开请求（sign 必须为 −）
        t, r: 时空点 (t > 0)
        tol: 每个积分的容差

    Returns:
        (stat, non) 两个 QuadResult
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    if req.sign != -1:
        raise DomainError("驻相分解只适用于 I₋")
    if t <= 0:
        raise DomainError(f"需要 t > 0：{t}")
    params = req.cutoff_params
    stat_profile, non_profile = _window_profiles(req.profile, t, r, params.psi_flat, params.psi_support)
    stat = quad_panels(OscIntegrand(stat_profile, -1), t, r, tol)
    non = quad_panels(OscIntegrand(non_profile, -1), t, r, tol)
    return stat, non


def thmD_decompose(req: ExpansionRequest, t: float, r: float, tol: float = None) -> DecompositionResult:
    """
    I₋ = exp(i·phase)·I_osc + I_phg，phase = −(1 − χ(t))r²/(4t)

    I_osc 为去掉相位因子的驻相部分，I_phg 为非驻相部分。
    """
    if t <= 0:
        raise DomainError(f"需要 t > 0：{t}")
    params = req.cutoff_params
    stat, non = stationary_split(req, t, r, tol)
    chi = time_cutoff(t, params.chi_flat, params.chi_zero)
    phase = -(1.0 - chi) * r * r / (4.0 * t)
    osc_value = stat.value * np.exp(-1j * phase)
    predicted = np.exp(1j * phase) * osc_value + non.value
    return DecompositionResult(complex(osc_value), non.value, float(phase), complex(predicted),
                               stat.err_estimate + non.err_estimate)


def nonstationary_decay_report(profile: PhgProfile, times: Sequence[float],
                               early: Sequence[float] = (40.0, 45.0, 50.0, 55.0, 60.0),
                               late: Sequence[float] = (400.0, 450.0, 500.0, 550.0, 600.0),
                               ray: float = 2.0, power: int = None, tol: float = 1e-12) -> dict:
    """
    非驻相衰减检查（沿 r = ray·t）

    Args:
        profile: 被积函数（σ = 0 附近为 0）
        times: t^power·|I₊| 的时间网格，斜率取最后十倍区间
        early, late: 比较 |I_{−,non}|/|I_{−,stat}| 的两组时间
        ray: 射线系数
        power: 幂次，默认 EXPANSION_CONFIG['NONSTAT_POWER']
        tol: 积分容差

    Returns:
        dict：scaled_plus、plus_sup、plus_trend、ratio_early、ratio_late、ratio_drop、split_consistent
    """
    power = EXPANSION_CONFIG["NONSTAT_POWER"] if power is None else power
    times = np.asarray(times, dtype=float)
    scaled_plus = np.array([t ** power * abs(quad_panels(OscIntegrand(profile, 1), t, ray * t, tol).value)
                            for t in times])
    last_decade = times >= times[-1] / 10.0
    trend = fit_loglog_slope(times[last_decade], scaled_plus[last_decade], max_residual=-1.0)

    req = ExpansionRequest(profile, sign=-1, face=RegimeLabel.DILF)
    split_ok = []

    def max_ratio(group):
        ratios = []
        for t in group:
            r = ray * t
            stat, non = stationary_split(req, t, r, tol)
            minus = quad_panels(OscIntegrand(profile, -1), t, r, tol)
            split_ok.append(abs(stat.value + non.value - minus.value)
                            <= stat.err_estimate + non.err_estimate + minus.err_estimate)
            # 驻相部分可以恰好为 0（支撑不含驻点）
            ratios.append(abs(non.value) / max(abs(stat.value), _TINY))
        return max(ratios)

    ratio_early, ratio_late = max_ratio(early), max_ratio(late)
    logger.info(f"非驻相衰减：t^{power}|I₊| 末段斜率 {trend.slope:.3f}，"
                f"|I_non|/|I_stat| {ratio_early:.3e} → {ratio_late:.3e}")
    return {
        "t": times,
        "scaled_plus": scaled_plus,
        "plus_sup": float(np.max(scaled_plus)),
        "plus_trend": trend.slope,
        "ratio_early": ratio_early,
        "ratio_late": ratio_late,
        "ratio_drop": ratio_early / max(ratio_late, _TINY),
        "split_consistent": bool(all(split_ok)),
    }
