# utils/fitting.py
"""
对数-对数斜率拟合工具
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from utils.config import EXPANSION_CONFIG
from utils.errors import InconclusiveFitError


@dataclass(frozen=True)
class SlopeFit:
    """log|y| = slope·log x + intercept 的拟合结果"""

    slope: float
    intercept: float
    max_residual: float
    r_value: float


def fit_loglog_slope(x, y, max_residual: float = None) -> SlopeFit:
    """
    拟合 log|y| 关于 log x 的斜率

    Args:
        x: 正数网格
        y: 数据（取模）
        max_residual: 最大允许残差，默认 EXPANSION_CONFIG['SLOPE_RESIDUAL_MAX']；None 以外的负值表示不检查

    Returns:
        SlopeFit
    """
    max_residual = EXPANSION_CONFIG["SLOPE_RESIDUAL_MAX"] if max_residual is None else max_residual
    x = np.asarray(x, dtype=float)
    y = np.abs(np.asarray(y))
    if len(x) < 3:
        raise InconclusiveFitError("拟合至少需要 3 个点")
    if np.any(~np.isfinite(y)) or np.any(y <= 0) or np.any(x <= 0):
        raise InconclusiveFitError("数据含零或非有限值，无法做对数拟合")

    log_x, log_y = np.log(x), np.log(y)
    fit = stats.linregress(log_x, log_y)
    residual = float(np.max(np.abs(log_y - (fit.slope * log_x + fit.intercept))))
    if max_residual >= 0 and residual > max_residual:
        raise InconclusiveFitError(f"拟合残差 {residual:.3g} 超过上限 {max_residual:g}")
    return SlopeFit(float(fit.slope), float(fit.intercept), residual, float(fit.rvalue))
