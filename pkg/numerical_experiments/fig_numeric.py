# numerical_experiments/fig_numeric.py
"""
数值示例：φ(σ,r) = e^{−σ²}/(2(1+σ²ℓ²))，ℓ = κr，沿 r = 2t 计算 t²·Im(I₊ − I₋)
极限值、振荡周期与 t^{−1/2} 包络
"""

from typing import Optional

import numpy as np
import pandas as pd
from scipy import integrate, optimize, signal
from scipy.interpolate import PchipInterpolator
from tqdm import tqdm

from fourier_analysis.oscillatory_quadrature import OscIntegrand, difference_integral
from numerical_experiments.scan_output import ScanSpec
from series_analysis.profiles import example_profile
from utils.config import FIG_NUMERIC_CONFIG, PERFORMANCE_CONFIG
from utils.errors import DomainError, InconclusiveFitError, OscillatoryAnalysisError
from utils.fitting import fit_loglog_slope
from utils.logger import get_logger

logger = get_logger(__name__)


def caption_integral(frequency: float = 2.0) -> complex:
    """
    −i∫_ℝ e^{−iωλ} λ(1+λ²)^{−1} dλ

    余弦部分为奇函数的积分（主值为 0）；正弦部分用 QUADPACK 的 Fourier 权重计算。
    """
    sine, _ = integrate.quad(lambda x: x / (1.0 + x * x), 0.0, np.inf, weight="sin", wvar=frequency)
    integral = -2j * sine
    return complex(-1j * integral)


def limit_constant() -> complex:
    """图注积分 −i∫e^{−2iλ}λ(1+λ²)^{−1}dλ = −πe^{−2} ≈ −0.4252"""
    return caption_integral(2.0)


def limit_residue_oracle() -> complex:
    """
    留数闭式：在下半平面闭合，λ = −i 处留数 e^{−2}·(−i)/(−2i)

    −i·(−2πi)·Res = −πe^{−2}
    """
    residue = np.exp(-2j * (-1j)) * (-1j) / (-2j)
    return complex(-1j * (-2j * np.pi) * residue)


def fig_limit_target(scale: float = None) -> float:
    """
    t²·Im(I₊ − I₋) 沿 r = 2t 的极限 πe^{−1/κ}/(4κ²)

    κ = 1/2（ℓ = t）时为 πe^{−2}；κ = 1 时为 π/(4e)。
    """
    scale = FIG_NUMERIC_CONFIG["DENOMINATOR_SCALE"] if scale is None else scale
    if scale <= 0:
        raise DomainError(f"分母尺度必须为正：{scale}")
    return float(np.pi * np.exp(-1.0 / scale) / (4.0 * scale * scale))


class FigNumericModel:
    """数值示例沿射线的求值器"""

    def __init__(self, scale: float = None, ray: float = None, tol: float = None):
        self.scale = FIG_NUMERIC_CONFIG["DENOMINATOR_SCALE"] if scale is None else scale
        self.ray = FIG_NUMERIC_CONFIG["RAY_COEFF"] if ray is None else ray
        self.tol = FIG_NUMERIC_CONFIG["TOL"] if tol is None else tol
        self.integrand = OscIntegrand(example_profile(self.scale), 1)
        self.target = fig_limit_target(self.scale)
        self._peaks = {}

    def difference(self, t: float) -> complex:
        return difference_integral(self.integrand, t, self.ray * t, self.tol).value

    def scaled_im(self, t: float) -> float:
        """t²·Im(I₊ − I₋)"""
        return float(t * t * self.difference(t).imag)

    def residual(self, t: float) -> float:
        """振荡部分 t²·Im(I₊ − I₋) − 极限"""
        return self.scaled_im(t) - self.target

    def period_mean(self, start: float, period: float = 2.0 * np.pi, nodes: int = None) -> float:
        """[start, start + period] 上 t²·Im(I₊ − I₋) 的平均（Gauss-Legendre）"""
        nodes = FIG_NUMERIC_CONFIG["WINDOW_NODES"] if nodes is None else nodes
        x, w = np.polynomial.legendre.leggauss(nodes)
        times = start + 0.5 * period * (x + 1.0)
        values = np.array([self.scaled_im(t) for t in times])
        return float(0.5 * np.dot(w, values))

    def refine_peak(self, lo: float, hi: float) -> tuple:
        """在 [lo, hi] 内精确定位振荡部分的极大值"""
        if (lo, hi) not in self._peaks:
            res = optimize.minimize_scalar(lambda t: -self.residual(t), bounds=(lo, hi), method="bounded",
                                           options={"xatol": 1e-7})
            self._peaks[(lo, hi)] = (float(res.x), float(-res.fun))
        return self._peaks[(lo, hi)]


def fig_numeric_scan(spec: ScanSpec, model: Optional[FigNumericModel] = None,
                     show_progress: bool = None) -> pd.DataFrame:
    """
    沿射线扫描 t²·Im(I₊ − I₋)

    Returns:
        DataFrame，列 (t, r, re, im, t2_im, residual, envelope_estimate, ok)；
        预言机失败的行 ok = False，数值为 NaN
    """
    if spec.scenario != "fig_numeric":
        raise DomainError(f"场景不匹配：{spec.scenario}")
    if spec.ray_kind != "linear":
        raise DomainError("数值示例沿 r = c·t 射线扫描")
    model = FigNumericModel(ray=spec.ray_coeff) if model is None else model
    show_progress = PERFORMANCE_CONFIG["SHOW_PROGRESS"] if show_progress is None else show_progress

    rows = []
    for t in tqdm(spec.t_grid(), desc="fig_numeric", disable=not show_progress):
        r = model.ray * t
        try:
            value = model.difference(t)
            rows.append({"t": t, "r": r, "re": value.real, "im": value.imag,
                         "t2_im": t * t * value.imag, "ok": True})
        except OscillatoryAnalysisError as e:
            logger.warning(f"t={t:g} 求值失败：{e}")
            rows.append({"t": t, "r": r, "re": np.nan, "im": np.nan, "t2_im": np.nan, "ok": False})

    table = pd.DataFrame(rows, columns=["t", "r", "re", "im", "t2_im", "ok"])
    table["residual"] = table["t2_im"] - model.target
    table["envelope_estimate"] = envelope_estimate(table, model)
    return table[["t", "r", "re", "im", "t2_im", "residual", "envelope_estimate", "ok"]]


def locate_peaks(table: pd.DataFrame, model: FigNumericModel, t_min: float = None) -> pd.DataFrame:
    """振荡部分的正峰：网格上 find_peaks 初定位，再逐个精确化"""
    t_min = FIG_NUMERIC_CONFIG["FIT_T_MIN"] if t_min is None else t_min
    valid = table[table["ok"]].reset_index(drop=True)
    times = valid["t"].to_numpy()
    residual = valid["residual"].to_numpy()
    indices, _ = signal.find_peaks(residual)
    peaks = []
    for i in indices:
        if times[i] < t_min or i == 0 or i == len(times) - 1:
            continue
        peaks.append(model.refine_peak(times[i - 1], times[i + 1]))
    return pd.DataFrame(peaks, columns=["t", "height"])


def envelope_estimate(table: pd.DataFrame, model: FigNumericModel) -> np.ndarray:
    """峰值的单调插值（log-log 上 PCHIP），峰值范围之外为 NaN"""
    estimate = np.full(len(table), np.nan)
    try:
        peaks = locate_peaks(table, model)
    except OscillatoryAnalysisError as e:
        logger.warning(f"峰值定位失败：{e}")
        return estimate
    peaks = peaks[peaks["height"] > 0]
    if len(peaks) < 2:
        return estimate
    interpolant = PchipInterpolator(np.log(peaks["t"]), np.log(peaks["height"]))
    times = table["t"].to_numpy()
    inside = (times >= peaks["t"].iloc[0]) & (times <= peaks["t"].iloc[-1])
    estimate[inside] = np.exp(interpolant(np.log(times[inside])))
    return estimate


def analyze_fig_numeric(table: pd.DataFrame, model: Optional[FigNumericModel] = None,
                        limit_t_min: float = None) -> dict:
    """
    从扫描结果提取极限、周期与包络斜率

    Returns:
        dict：period_means（t ≥ limit_t_min 的逐周期平均）、limit_deviation、
        peak_spacing、envelope_slope、peaks
    """
    model = FigNumericModel() if model is None else model
    limit_t_min = FIG_NUMERIC_CONFIG["LIMIT_T_MIN"] if limit_t_min is None else limit_t_min
    t_max = float(table["t"].max())

    period = 2.0 * np.pi
    starts = np.arange(limit_t_min, t_max - period + 1e-12, period)
    means = np.array([model.period_mean(s) for s in starts])
    deviation = float(np.max(np.abs(means - model.target))) if len(means) else np.nan

    peaks = locate_peaks(table, model)
    if len(peaks) < 3:
        raise InconclusiveFitError("振荡峰值不足 3 个")
    spacing = float(np.mean(np.diff(peaks["t"].to_numpy())))
    slope = fit_loglog_slope(peaks["t"], peaks["height"], max_residual=-1.0).slope
    logger.info(f"数值示例：极限偏差 {deviation:.3e}，峰间距 {spacing:.4f}，包络斜率 {slope:.4f}")
    return {
        "period_starts": starts,
        "period_means": means,
        "limit_estimate": float(np.mean(means)) if len(means) else np.nan,
        "limit_deviation": deviation,
        "peak_spacing": spacing,
        "envelope_slope": slope,
        "peaks": peaks,
    }
