# numerical_experiments/wavepacket.py
"""
高斯波包、束缚态项与正则化全直线矩
"""

from typing import Callable, Sequence

import numpy as np
import pandas as pd

from geometry_analysis.compactification import chart
from utils.config import PERFORMANCE_CONFIG, SCAN_CONFIG
from utils.errors import DomainError, PhaseUnwrapError
from utils.logger import get_logger

logger = get_logger(__name__)


def gaussian_wavepacket(t, x):
    """G(t,x) = (1+2it)^{−1/2} exp(−x²/(1+2it))，主值平方根"""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    denominator = 1.0 + 2j * t
    value = np.exp(-x * x / denominator) / np.sqrt(denominator)
    return value if value.ndim else complex(value)


def _wrapped_phase(s: float, x):
    return np.angle(gaussian_wavepacket(s * x, x))


def gaussian_phase_chart(s: float, rho: float, step_ratio: float = 0.2) -> float:
    """
    沿 t = s·x 提取 G 的连续相位 θ 并返回 (2sρ)·θ，x = 1/ρ

    从 x = 0 出发逐段展开相位，步长 step_ratio·min(s, 1)。

    Args:
        s: s = t/x > 0
        rho: ρ = 1/x > 0
        step_ratio: 步长系数

    Returns:
        (2sρ)·θ(s/ρ, 1/ρ)，ρ → 0 时趋于 1
    """
    if s <= 0 or rho <= 0:
        raise DomainError(f"需要 s > 0, ρ > 0：s={s}, ρ={rho}")
    x_end = 1.0 / rho
    step = step_ratio * min(s, 1.0)
    count = int(np.ceil(x_end / step)) + 1
    chunk = PERFORMANCE_CONFIG["VECTOR_CHUNK"]

    offset, previous = 0.0, 0.0
    for start in range(0, count, chunk):
        stop = min(start + chunk, count)
        x = x_end * np.arange(start, stop) / (count - 1)
        wrapped = _wrapped_phase(s, x)
        jumps = np.diff(np.concatenate(([previous], wrapped)))
        jumps = (jumps + np.pi) % (2.0 * np.pi) - np.pi
        if np.max(np.abs(jumps)) > 0.5 * np.pi:
            raise PhaseUnwrapError(f"相位步长过大（s={s}, ρ={rho}），需要更细的网格")
        phases = offset + np.cumsum(jumps)
        offset, previous = phases[-1], wrapped[-1]
    theta = offset
    logger.debug(f"连续相位 s={s}, ρ={rho}: θ={theta:.6g}（{count} 点）")
    return float(2.0 * s * rho * theta)


def gaussian_phase_table(s_values: Sequence[float] = None,
                         rho_values: Sequence[float] = None) -> pd.DataFrame:
    """(2sρ)·θ 在 (s, ρ) 网格上的收敛表，附闭式值"""
    s_values = SCAN_CONFIG["GAUSSIAN_PHASE_S"] if s_values is None else s_values
    rho_values = SCAN_CONFIG["GAUSSIAN_PHASE_RHO"] if rho_values is None else rho_values
    rows = []
    for s in s_values:
        for rho in rho_values:
            x = 1.0 / rho
            t = s * x
            exact = 2.0 * s * rho * (2.0 * t * x * x / (1.0 + 4.0 * t * t) - 0.5 * np.arctan(2.0 * t))
            rows.append({"s": s, "rho": rho, "scaled_phase": gaussian_phase_chart(s, rho),
                         "closed_form": exact})
    return pd.DataFrame(rows)


def bound_state_term(E: float, t, r, profile: Callable):
    """束缚态项 e^{−iEt}·φ(r)"""
    if E < 0:
        raise DomainError(f"束缚态能量须非负：{E}")
    return np.exp(-1j * E * np.asarray(t, dtype=float)) * profile(np.asarray(r, dtype=float))


def bound_state_table(E: float, times: Sequence[float], radii: Sequence[float],
                      profile: Callable) -> pd.DataFrame:
    """束缚态项沿 (t, r) 序列的取值与各边界定义函数"""
    rows = []
    for t, r in zip(times, radii):
        term = complex(bound_state_term(E, t, r, profile))
        p = chart(t, max(r, 1.0))
        rows.append({
            "t": t,
            "r": r,
            "re": term.real,
            "im": term.imag,
            "abs": abs(term),
            "profile_abs": float(abs(profile(np.asarray(r, dtype=float)))),
            "bdf_nf": p.bdf_nf,
            "bdf_dilF": p.bdf_dilF,
            "bdf_parF": p.bdf_parF,
        })
    return pd.DataFrame(rows)


def regularized_line_moment(t: float, r: float, eps: float, u0: complex, u1: complex) -> complex:
    """
    e^{ir²/4(t+iε)}·∫_ℝ e^{iσ²t + iσr − εσ²}(u₀ + iσu₁)σ dσ 的闭式

    = −√(πi)·r u₀/(2(t+iε)^{3/2}) + i√(πi)·(r² + 2it − 2ε)u₁/(4(t+iε)^{5/2})
    """
    if eps < 0 or (t == 0 and eps == 0):
        raise DomainError(f"需要 ε > 0 或 t ≠ 0：t={t}, ε={eps}")
    z = t + 1j * eps
    root = np.sqrt(np.pi * 1j)
    return complex(-root * r * u0 / (2.0 * z ** 1.5)
                   + 1j * root * (r * r + 2j * t - 2.0 * eps) * u1 / (4.0 * z ** 2.5))
