# fourier_analysis/oscillatory_quadrature.py
"""
振荡积分 I±[φ](t,r) = 2∫₀^∞ e^{iσ²t ± iσr} φ(σ,r) σ dσ 的两种独立数值预言机
面板法（按相位四分之一周期分段 + G7/K15）与围道法（最速下降路径 + 留数）
"""

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from fourier_analysis.gauss_kronrod import integrate_panels, refine_edges, uniform_edges
from fourier_analysis.halfline_fourier import QuadResult
from series_analysis.phg_series import PhgProfile
from utils.config import QUADRATURE_CONFIG
from utils.errors import (
    AccuracyError,
    DomainError,
    IllConditionedContourError,
    UnsupportedOperationError,
)
from utils.logger import get_logger

logger = get_logger(__name__)

# 路径积分截断：指数衰减到 e^{-PATH_DECAY·_PATH_MARGIN}
_PATH_MARGIN = 1.5


@dataclass(frozen=True)
class OscIntegrand:
    """
    振荡被积函数 e^{iσ²t ± iσr}·φ(σ,r)·2σ

    Args:
        profile: 被积函数 φ
        sign: +1 或 −1（线性相位的符号）
    """

    profile: PhgProfile
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign 必须为 ±1：{self.sign}")

    @property
    def analytic_in_sector(self) -> bool:
        return self.profile.analytic

    @property
    def decay(self) -> str:
        return self.profile.decay

    def pole_list(self, r: float) -> List[complex]:
        return [complex(p) for p in self.profile.poles(r)] if self.analytic_in_sector else []

    def on_axis(self, t: float, r: float, sign: int = None) -> Callable:
        """实轴上的被积函数 σ → 2σφ(σ,r)e^{i(tσ² + sign·rσ)}"""
        s = self.sign if sign is None else sign
        profile = self.profile

        def h(sigma):
            return 2.0 * sigma * profile.evaluate(sigma, r) * np.exp(1j * (t * sigma * sigma + s * r * sigma))

        return h

    def analytic_continuation(self, t: float, r: float, sign: int = None) -> Callable:
        """复 σ 上的被积函数，高斯因子与相位合并为一个指数"""
        if not self.analytic_in_sector:
            raise UnsupportedOperationError(f"被积函数 '{self.profile.name}' 不可解析延拓")
        s = self.sign if sign is None else sign
        reduced = self.profile.reduced
        exponent = 1j * t - self.profile.gaussian_rate

        def h(z):
            z = np.asarray(z, dtype=complex)
            return 2.0 * z * reduced(z, r) * np.exp(exponent * z * z + 1j * s * r * z)

        return h


def phase_edges(t: float, b: float, lo: float, hi: float, step: float = None,
                max_width: float = None) -> np.ndarray:
    """
    相位 Φ(σ) = tσ² + bσ 在 [lo, hi] 上每增加 π/2 的断点

    在 Φ 的单调分支上解析求逆，再把过宽的面板等分。

    Args:
        t: 二次项系数 (≥ 0)
        b: 一次项系数
        lo, hi: 区间
        step: 相位增量
        max_width: 面板最大宽度

    Returns:
        递增断点数组
    """
    step = QUADRATURE_CONFIG["PHASE_STEP"] if step is None else step
    max_width = QUADRATURE_CONFIG["MAX_PANEL_WIDTH"] if max_width is None else max_width
    edges = [lo, hi]

    branches = [(lo, hi)]
    if t > 0:
        critical = -b / (2.0 * t)
        if lo < critical < hi:
            branches = [(lo, critical), (critical, hi)]
            edges.append(critical)

    for p, q in branches:
        phi_p, phi_q = t * p * p + b * p, t * q * q + b * q
        low, high = min(phi_p, phi_q), max(phi_p, phi_q)
        first, last = np.ceil(low / step), np.floor(high / step)
        count = last - first + 1
        if count <= 0:
            continue
        if count > QUADRATURE_CONFIG["MAX_PANELS"]:
            raise AccuracyError(f"相位分段数 {int(count)} 超过面板预算")
        levels = np.arange(first, last + 1) * step
        if t > 0:
            root = np.sqrt(np.maximum(b * b + 4.0 * t * levels, 0.0))
            # 右分支取 +，左分支取 −
            on_right = p >= -b / (2.0 * t) - 1e-15 * max(1.0, abs(p))
            if on_right and b > 0:
                sigma = 2.0 * levels / (b + root)
            elif on_right:
                sigma = (-b + root) / (2.0 * t)
            else:
                sigma = (-b - root) / (2.0 * t)
        elif b != 0:
            sigma = levels / b
        else:
            continue
        edges.extend(np.clip(sigma, p, q).tolist())

    return refine_edges(np.array(edges), max_width)


def _gaussian_cutoff(profile: PhgProfile, tol: float) -> float:
    g = profile.gaussian_rate
    return max(QUADRATURE_CONFIG["GAUSSIAN_SIGMA_MIN"],
               np.sqrt((np.log(1.0 / tol) + QUADRATURE_CONFIG["GAUSSIAN_LOG_MARGIN"]) / g))


def _integration_range(profile: PhgProfile, r: float, tol: float) -> Tuple[float, float, float]:
    """返回 (lo, hi, 尾部误差界)；Schwartz 衰减返回 hi = inf，由调用方加倍处理"""
    support = profile.support(r)
    lo, hi = (0.0, np.inf) if support is None else (max(0.0, support[0]), support[1])
    if np.isfinite(hi):
        return lo, hi, 0.0
    if profile.decay == "gaussian" and profile.gaussian_rate > 0:
        cut = max(_gaussian_cutoff(profile, tol), lo)
        tail = float(np.abs(profile.evaluate(np.array([cut]), r))[0]) / profile.gaussian_rate
        return lo, cut, tail
    if profile.decay == "schwartz":
        return lo, np.inf, 0.0
    raise UnsupportedOperationError(f"被积函数 '{profile.name}' 没有声明可用的衰减方式")


def _panel_integral(h, t: float, b: float, lo: float, hi: float, tol: float):
    edges = phase_edges(t, b, lo, hi)
    return integrate_panels(h, edges, tol)


def _integrate_line(h, t: float, b: float, lo: float, hi: float, tol: float,
                    profile: PhgProfile) -> Tuple[complex, float, int, bool]:
    """在 [lo, hi] 上做面板积分；hi = inf（Schwartz 衰减）时逐次加倍截断点"""
    if np.isfinite(hi):
        res = _panel_integral(h, t, b, lo, hi, tol)
        return res.value, res.error, res.evaluations, res.converged

    upper = max(QUADRATURE_CONFIG["SCHWARTZ_START"], lo)
    res = _panel_integral(h, t, b, lo, upper, 0.5 * tol)
    value, error, evals, converged = res.value, res.error, res.evaluations, res.converged
    for _ in range(QUADRATURE_CONFIG["SCHWARTZ_MAX_DOUBLINGS"]):
        piece = _panel_integral(h, t, b, upper, 2.0 * upper, 0.1 * tol)
        value += piece.value
        error += piece.error
        evals += piece.evaluations
        upper *= 2.0
        if abs(piece.value) + piece.error < 0.1 * tol:
            return value, error + abs(piece.value), evals, converged and piece.converged
    raise AccuracyError(f"被积函数 '{profile.name}' 在 σ ≤ {upper:g} 内尾部未收敛",
                        best_value=value, err_estimate=error)


def quad_panels(ig: OscIntegrand, t: float, r: float, tol: float = None) -> QuadResult:
    """
    面板法：按 tσ² ± rσ 的四分之一周期分段，每段自适应 G7/K15，加上尾部误差界

    Args:
        ig: 被积函数
        t: 时间 t ≥ 0
        r: 半径 r ≥ 0
        tol: 绝对容差

    Returns:
        QuadResult
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    if tol <= 0:
        raise DomainError(f"容差必须为正：{tol}")
    if t < 0 or r < 0:
        raise DomainError(f"需要 t ≥ 0, r ≥ 0：t={t}, r={r}")

    lo, hi, tail = _integration_range(ig.profile, r, tol)
    h = ig.on_axis(t, r)
    value, error, evals, converged = _integrate_line(h, t, ig.sign * r, lo, hi, tol - min(tail, 0.5 * tol),
                                                     ig.profile)
    error += tail
    if not converged or error > tol:
        raise AccuracyError(f"面板积分在 (t={t}, r={r}) 未达到容差 {tol:g}",
                            best_value=value, err_estimate=error)
    logger.debug(f"quad_panels {ig.profile.name} sign={ig.sign:+d} (t={t}, r={r}): {evals} 次求值")
    return QuadResult(value, error, "panels", evals)


def _residue(func, z: complex, others: Sequence[complex], growth: float) -> Tuple[complex, float]:
    """圆周梯形公式计算留数，误差取 N 点与 N/2 点结果之差"""
    points = QUADRATURE_CONFIG["RESIDUE_POINTS"]
    radius = min(0.5, 4.0 / max(growth, 1e-300))
    distances = [abs(z - w) for w in others if abs(z - w) > 0]
    if distances:
        radius = min(radius, 0.5 * min(distances))
    theta = 2.0 * np.pi * np.arange(points) / points
    offsets = radius * np.exp(1j * theta)
    samples = np.asarray(func(z + offsets), dtype=complex) * offsets
    full = complex(np.mean(samples))
    half = complex(np.mean(samples[::2]))
    return full, abs(full - half)


def _distance_to_segment(z: complex, start: complex, direction: complex, length_lo: float,
                         length_hi: float) -> float:
    u = float(np.real((z - start) * np.conj(direction)))
    u = min(max(u, length_lo), length_hi)
    return abs(z - (start + u * direction))


def _check_clearance(poles, start, direction, lo, hi):
    clearance = QUADRATURE_CONFIG["POLE_CLEARANCE"]
    for z in poles:
        if _distance_to_segment(z, start, direction, lo, hi) < clearance:
            raise IllConditionedContourError(f"极点 {z} 距离积分路径小于 {clearance:g}")


def _path_integral(func, start: complex, direction: complex, lo: float, hi: float, tol: float,
                   oscillation: float):
    """沿 z = start + u·direction, u ∈ [lo, hi] 积分"""
    width = min((hi - lo) / 64.0, QUADRATURE_CONFIG["PHASE_STEP"] / max(oscillation, 1e-300))
    edges = uniform_edges(lo, hi, width)
    return integrate_panels(
        func, edges, tol,
        path=(lambda u: start + u * direction, lambda u: direction * np.ones_like(u, dtype=complex)),
    )


def _ray_integral(func, exponent: complex, linear: complex, poles: Sequence[complex],
                  tol: float, include_residues: bool, min_angle: float = None):
    """
    ∫₀^∞ func(σ) dσ，func 含 e^{exponent·σ² + linear·σ}，Re(linear) 在第一象限方向不增长

    旋转到角度 max(arg(−exponent 的最速方向), π/8) 的射线；扇形内的极点贡献 2πi·Res。
    """
    min_angle = QUADRATURE_CONFIG["MIN_RAY_ANGLE"] if min_angle is None else min_angle
    t, g = exponent.imag, -exponent.real
    angle = max(0.5 * np.arctan2(t, g), min_angle)
    direction = np.exp(1j * angle)
    rate = -float(np.real(exponent * direction ** 2))
    drift = -float(np.real(linear * direction))
    if rate <= 0:
        raise UnsupportedOperationError("射线上被积函数不衰减")
    target = QUADRATURE_CONFIG["PATH_DECAY"] * _PATH_MARGIN
    drift = max(drift, 0.0)
    upper = (-drift + np.sqrt(drift * drift + 4.0 * rate * target)) / (2.0 * rate)
    _check_clearance(poles, 0j, direction, 0.0, upper)

    oscillation = 2.0 * abs(exponent) * upper + abs(linear)
    res = _path_integral(func, 0j, direction, 0.0, upper, 0.5 * tol, oscillation)
    value, error = res.value, res.error

    if include_residues:
        growth = 2.0 * abs(exponent) * max((abs(p) for p in poles), default=0.0) + abs(linear) + 1.0
        for z in poles:
            arg = np.angle(z)
            if 0.0 < arg < angle:
                residue, res_err = _residue(func, z, poles, growth)
                value += 2j * np.pi * residue
                error += 2.0 * np.pi * res_err
                logger.debug(f"射线扇形内极点 {z}: 留数 {residue}")
    return value, error, res.evaluations, res.converged


def _line_integral(func, exponent: complex, linear: complex, poles: Sequence[complex],
                   tol: float, include_residues: bool):
    """
    ∫_ℝ func(σ) dσ，沿过鞍点 σ₀ = −linear/(2·exponent) 的最速下降直线积分

    直线与实轴之间的极点：上半平面且在直线右侧取 +2πi·Res，下半平面且在直线左侧取 −2πi·Res。
    """
    saddle = -linear / (2.0 * exponent)
    theta = 0.5 * (np.pi - np.angle(exponent))
    direction = np.exp(1j * theta)
    target = QUADRATURE_CONFIG["PATH_DECAY"] * _PATH_MARGIN
    half_length = np.sqrt(target / abs(exponent))
    _check_clearance(poles, saddle, direction, -half_length, half_length)

    res = _path_integral(func, saddle, direction, -half_length, half_length, 0.5 * tol, 1.0)
    value, error = res.value, res.error

    if include_residues:
        growth = 2.0 * abs(exponent) * max((abs(p) for p in poles), default=0.0) + abs(linear) + 1.0
        for z in poles:
            side = float(np.imag((z - saddle) * np.conj(direction)))
            if z.imag > 0 and side < 0:
                orientation = 1.0
            elif z.imag < 0 and side > 0:
                orientation = -1.0
            else:
                continue
            residue, res_err = _residue(func, z, poles, growth)
            value += orientation * 2j * np.pi * residue
            error += 2.0 * np.pi * res_err
            logger.debug(f"直线与实轴之间的极点 {z}: 留数 {residue}")
    return value, error, res.evaluations, res.converged


def _contour_setup(ig: OscIntegrand, t: float, r: float):
    if not ig.analytic_in_sector:
        raise UnsupportedOperationError(f"被积函数 '{ig.profile.name}' 不解析，不能做围道积分")
    if t < 0 or r < 0:
        raise DomainError(f"需要 t ≥ 0, r ≥ 0：t={t}, r={r}")
    exponent = 1j * t - ig.profile.gaussian_rate
    if exponent == 0:
        raise UnsupportedOperationError("t = 0 且无高斯因子时围道积分不收敛")
    return exponent, ig.pole_list(r)


def quad_contour(ig: OscIntegrand, t: float, r: float, tol: float = None,
                 include_residues: bool = True) -> QuadResult:
    """
    围道法：sign + 旋转到射线；sign − 用过鞍点的最速下降直线减去负半轴（再旋转为射线）

    Args:
        ig: 可解析延拓的被积函数
        t, r: 时空点
        tol: 绝对容差
        include_residues: 是否加入留数（关闭用于留数开关实验）

    Returns:
        QuadResult
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    exponent, poles = _contour_setup(ig, t, r)
    linear = 1j * ig.sign * r

    if ig.sign > 0:
        func = ig.analytic_continuation(t, r)
        value, error, evals, converged = _ray_integral(func, exponent, linear, poles, tol,
                                                       include_residues)
    else:
        func = ig.analytic_continuation(t, r)
        full, err_full, ev_full, ok_full = _line_integral(func, exponent, linear, poles,
                                                          0.5 * tol, include_residues)

        # ∫_{−∞}^0 h(σ)dσ = ∫₀^∞ h(−u)du，线性项变为 +irσ
        def reflected(u):
            return func(-np.asarray(u, dtype=complex))

        neg, err_neg, ev_neg, ok_neg = _ray_integral(reflected, exponent, -linear,
                                                     [-p for p in poles], 0.5 * tol,
                                                     include_residues)
        value, error = full - neg, err_full + err_neg
        evals, converged = ev_full + ev_neg, ok_full and ok_neg

    if not converged or error > tol:
        raise AccuracyError(f"围道积分在 (t={t}, r={r}) 未达到容差 {tol:g}",
                            best_value=value, err_estimate=error)
    return QuadResult(value, error, "contour", evals)


def difference_integral(ig: OscIntegrand, t: float, r: float, tol: float = None,
                        method: str = None) -> QuadResult:
    """
    I₊ − I₋ 作为单个全直线积分 2∫_ℝ e^{iσ²t + iσr} φ σ dσ（φ 关于 σ 为偶函数）

    Args:
        ig: 被积函数（sign 不起作用）
        t, r: 时空点
        tol: 绝对容差
        method: 'contour' 或 'panels'，默认解析时用围道法

    Returns:
        QuadResult
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    if not ig.profile.even:
        raise DomainError(f"差积分要求 φ 关于 σ 为偶函数：'{ig.profile.name}'")
    if method is None:
        method = "contour" if ig.analytic_in_sector and (t > 0 or ig.profile.gaussian_rate > 0) else "panels"

    if method == "contour":
        exponent, poles = _contour_setup(ig, t, r)
        func = ig.analytic_continuation(t, r, sign=1)
        value, error, evals, converged = _line_integral(func, exponent, 1j * r, poles, tol, True)
    elif method == "panels":
        lo, hi, tail = _integration_range(ig.profile, r, tol)
        if not np.isfinite(hi):
            raise UnsupportedOperationError("全直线面板积分需要有限截断")
        h = ig.on_axis(t, r, sign=1)
        res = _panel_integral(h, t, r, -hi, hi, tol - min(2.0 * tail, 0.5 * tol))
        value, error, evals, converged = res.value, res.error + 2.0 * tail, res.evaluations, res.converged
    else:
        raise DomainError(f"未知方法 '{method}'")

    if not converged or error > tol:
        raise AccuracyError(f"差积分在 (t={t}, r={r}) 未达到容差 {tol:g}",
                            best_value=value, err_estimate=error)
    return QuadResult(value, error, f"diff-{method}", evals)
