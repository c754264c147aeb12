# asymptotic_analysis/expansion_manager.py
"""
统一渐近展开管理器
按区域 (kf / parF / dilF / corner) 计算展开预测，并与数值预言机比较
"""

from typing import Callable, Sequence

import numpy as np
import pandas as pd

from asymptotic_analysis.corner_analysis import corner_kf_expansion
from asymptotic_analysis.face_expansions import ExpansionRequest, kf_expansion, parF_expansion
from asymptotic_analysis.stationary_phase import stationary_phase_dilf, stationary_split
from fourier_analysis.halfline_fourier import (
    evaluate_fourier_expansion,
    numeric_halfline_fourier,
    phg_fourier_expansion,
)
from fourier_analysis.oscillatory_quadrature import OscIntegrand, quad_contour, quad_panels
from geometry_analysis.compactification import RegimeLabel
from series_analysis.phg_series import PhgProfile, truncate
from series_analysis.profiles import get_profile, truncated_exponential
from utils.config import QUADRATURE_CONFIG
from utils.errors import OscillatoryAnalysisError
from utils.fitting import SlopeFit, fit_loglog_slope
from utils.logger import get_logger

logger = get_logger(__name__)

FACES = ("kf", "parF", "dilF", "corner")


def oracle_integral(profile: PhgProfile, sign: int, t: float, r: float, tol: float = None):
    """I±[φ](t, r) 的数值值：可解析延拓时用围道法，否则面板法"""
    ig = OscIntegrand(profile, sign)
    if ig.analytic_in_sector and t > 0:
        return quad_contour(ig, t, r, tol)
    return quad_panels(ig, t, r, tol)


def expansion_error_slope(predict: Callable[[float], complex], oracle: Callable[[float], complex],
                          grid: Sequence[float], max_residual: float = None) -> SlopeFit:
    """|oracle(x) − predict(x)| 关于 x 的 log-log 斜率"""
    grid = np.asarray(grid, dtype=float)
    errors = np.array([abs(oracle(x) - predict(x)) for x in grid])
    return fit_loglog_slope(grid, errors, max_residual)


def stationary_error_slope(profile: PhgProfile, K: int, times: Sequence[float], rhat: float = 1.0,
                           tol: float = 1e-13) -> SlopeFit:
    """
    沿 r = r̂·t，|I_{−,stat} − K 项驻相展开| 的斜率（预期 −(K + 3/2)）
    """
    req = ExpansionRequest(profile, sign=-1, face=RegimeLabel.DILF)
    return expansion_error_slope(
        lambda t: stationary_phase_dilf(req, t, rhat, K).value,
        lambda t: stationary_split(req, t, rhat * t, tol)[0].value,
        times,
    )


def fourier_truncation_slope(gamma: float, taus: Sequence[float], tol: float = 1e-13) -> SlopeFit:
    """
    截断展开 ξ^0 − ξ^1 到 γ 后，其 Fourier 展开与 e^{−ξ}·1_{[0,40]} 数值变换之差的斜率

    预期斜率 ≤ −(γ + 1)。
    """
    f, support, series = truncated_exponential()
    expansion = phg_fourier_expansion(truncate(series, gamma), gamma, 1)
    return expansion_error_slope(
        lambda tau: evaluate_fourier_expansion(expansion, tau),
        lambda tau: numeric_halfline_fourier(f, tau, support, tol).value,
        taus,
    )


class ExpansionManager:
    """渐近展开管理器"""

    def __init__(self, profile_name: str = "gaussian", sign: int = 1, order: float = 2.0,
                 tol: float = None, **profile_kwargs):
        """
        初始化展开管理器

        Args:
            profile_name: 样例被积函数名称
            sign: I₊ (+1) 或 I₋ (−1)
            order: 截断阶数（dilF 时为项数 K）
            tol: 预言机容差
        """
        self.profile = get_profile(profile_name, **profile_kwargs)
        self.sign = sign
        self.order = order
        self.tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
        self.results = []

    def predict(self, face: str, t: float, r: float):
        """返回 (预测值, 警告列表)"""
        if face == "kf":
            req = ExpansionRequest(self.profile, self.sign, RegimeLabel.KF, self.order)
            result = kf_expansion(req, t, r)
        elif face == "parF":
            req = ExpansionRequest(self.profile, self.sign, RegimeLabel.PARF, self.order)
            result = parF_expansion(req, t, r, self.tol)
        elif face == "dilF":
            req = ExpansionRequest(self.profile, -1, RegimeLabel.DILF, self.order)
            result = stationary_phase_dilf(req, t, r / t, int(self.order))
        elif face == "corner":
            return corner_kf_expansion(self.profile, t / r ** 2, r, self.order, self.sign, self.tol), []
        else:
            raise ValueError(f"未知区域 '{face}'，可选：{FACES}")
        return result.value, list(result.warnings)

    def oracle(self, face: str, t: float, r: float) -> complex:
        """数值预言机：dilF 对应驻相部分 I_{−,stat}，其余为 I± 本身"""
        if face == "dilF":
            req = ExpansionRequest(self.profile, -1, RegimeLabel.DILF)
            return stationary_split(req, t, r, self.tol)[0].value
        if face == "corner":
            return quad_panels(OscIntegrand(self.profile, self.sign), t, r, self.tol).value
        return oracle_integral(self.profile, self.sign, t, r, self.tol).value

    def run_expansion(self, face: str, t: float, r: float, compare: bool = True) -> bool:
        """运行一次展开（可选与预言机比较）"""
        print(f"🚀 开始 {face} 展开：{self.profile.name}, t={t:g}, r={r:g}, order={self.order:g}")
        try:
            prediction, warnings = self.predict(face, t, r)
            for message in warnings:
                print(f"⚠️ {message}")
            row = {"face": face, "t": t, "r": r, "prediction": prediction}
            print(f"✅ 预测值：{prediction.real:.15g} {prediction.imag:+.15g}i")

            if compare:
                oracle = self.oracle(face, t, r)
                abs_err = abs(prediction - oracle)
                rel_err = abs_err / abs(oracle) if oracle != 0 else np.inf
                row.update({"oracle": oracle, "abs_error": abs_err, "rel_error": rel_err})
                print(f"📊 预言机：{oracle.real:.15g} {oracle.imag:+.15g}i")
                print(f"📊 绝对误差 {abs_err:.3e}，相对误差 {rel_err:.3e}")

            self.results.append(row)
            return True
        except (OscillatoryAnalysisError, ValueError) as e:
            print(f"❌ {face} 展开失败：{e}")
            return False

    def get_results(self) -> pd.DataFrame:
        """所有运行结果的表格"""
        return pd.DataFrame(self.results)
