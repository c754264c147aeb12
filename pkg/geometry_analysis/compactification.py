# geometry_analysis/compactification.py
"""
紧化时空几何模块
边界定义函数 (bdf)、渐近区域分类、X_res^sp 上的单位分解，以及光滑截断函数
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from utils.config import CUTOFF_CONFIG, PARTITION_CONFIG
from utils.errors import DomainError

# 光滑过渡函数使用的 Gauss-Legendre 节点数
_STEP_NODES = 64


class RegimeLabel(str, Enum):
    """渐近区域标签（紧化 M 的边界面）"""

    KF = "kf"
    PARF = "parF"
    DILF = "dilF"
    NF = "nf"
    SIGMA = "Sigma"
    INTERIOR = "interior"


# 平局时的面优先顺序
FACE_ORDER = (RegimeLabel.KF, RegimeLabel.PARF, RegimeLabel.DILF, RegimeLabel.NF, RegimeLabel.SIGMA)


@dataclass(frozen=True)
class ChartPoint:
    """
    时空点 (t, r) 及其坐标与边界定义函数

    t = 0 时 kf/parF/dilF 的 bdf 无定义，记为 inf；
    大时间图 (t ≥ 1) 之外这三个 bdf 不参与分类，nf 图只在 r > t 处有效。
    """

    t: float
    r: float
    rho: float
    tau: float
    s: float
    bdf_kf: float
    bdf_parF: float
    bdf_dilF: float
    bdf_nf: float
    bdf_sigma: float
    valid_faces: tuple = field(default=FACE_ORDER)

    def bdf(self, face: RegimeLabel) -> float:
        return {
            RegimeLabel.KF: self.bdf_kf,
            RegimeLabel.PARF: self.bdf_parF,
            RegimeLabel.DILF: self.bdf_dilF,
            RegimeLabel.NF: self.bdf_nf,
            RegimeLabel.SIGMA: self.bdf_sigma,
        }[face]

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "r": self.r,
            "rho": self.rho,
            "tau": self.tau,
            "s": self.s,
            "bdf_kf": self.bdf_kf,
            "bdf_parF": self.bdf_parF,
            "bdf_dilF": self.bdf_dilF,
            "bdf_nf": self.bdf_nf,
            "bdf_sigma": self.bdf_sigma,
            "valid_faces": [face.value for face in self.valid_faces],
        }


def chart(t: float, r: float) -> ChartPoint:
    """
    计算 (t, r) 处的坐标与全部 bdf

    Args:
        t: 时间 t ≥ 0
        r: 半径 r ≥ 1（ρ = 1/r ≤ 1）

    Returns:
        ChartPoint
    """
    if r < 1:
        raise DomainError(f"需要 r ≥ 1：{r}")
    if t < 0:
        raise DomainError(f"需要 t ≥ 0：{t}")
    t, r = float(t), float(r)
    rho = 1.0 / r

    if t > 0:
        bdf_parF = rho + 1.0 / (t * rho)
        bdf_dilF = rho / bdf_parF
        bdf_kf = 1.0 / (t * rho * bdf_parF)
    else:
        bdf_parF = bdf_dilF = bdf_kf = np.inf

    valid = []
    if t >= 1:
        valid += [RegimeLabel.KF, RegimeLabel.PARF, RegimeLabel.DILF]
    if r > t:
        valid.append(RegimeLabel.NF)
    valid.append(RegimeLabel.SIGMA)

    return ChartPoint(
        t=t,
        r=r,
        rho=rho,
        tau=t * rho ** 2,
        s=t * rho,
        bdf_kf=bdf_kf,
        bdf_parF=bdf_parF,
        bdf_dilF=bdf_dilF,
        bdf_nf=(1.0 + t) / (1.0 + t + r),
        bdf_sigma=t / (1.0 + t),
        valid_faces=tuple(valid),
    )


def classify(p: ChartPoint, threshold: float = 0.05) -> RegimeLabel:
    """
    区域分类：有效 bdf 中最小者若低于阈值则返回该面，否则 interior

    Args:
        p: 时空点
        threshold: 阈值 (0, 1)

    Returns:
        RegimeLabel
    """
    if not 0 < threshold < 1:
        raise DomainError(f"阈值必须在 (0,1) 内：{threshold}")
    best_face, best_value = RegimeLabel.INTERIOR, threshold
    for face in FACE_ORDER:
        if face not in p.valid_faces:
            continue
        value = p.bdf(face)
        if value < best_value:
            best_face, best_value = face, value
    return best_face


@lru_cache(maxsize=1)
def _step_rule():
    nodes, weights = np.polynomial.legendre.leggauss(_STEP_NODES)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights
    norm = float(np.sum(weights * bump(2.0 * nodes - 1.0)))
    return nodes, weights, norm


def bump(x):
    """C^∞ 鼓包 b(x) = exp(1 − 1/(1−x²))，|x| ≥ 1 时为 0"""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - xi * xi))
    return out


def smooth_step(x):
    """
    光滑阶跃：x ≤ 0 时为 0，x ≥ 1 时为 1，中间为鼓包函数的归一化积分

    Args:
        x: 标量或数组

    Returns:
        与 x 同形状的数组（标量输入返回 float）
    """
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    nodes, weights, norm = _step_rule()
    out = np.where(x >= 1.0, 1.0, 0.0)
    mid = (x > 0) & (x < 1)
    if np.any(mid):
        xm = x[mid][:, None]
        out[mid] = xm[:, 0] * np.sum(weights * bump(2.0 * xm * nodes - 1.0), axis=1) / norm
    return float(out[0]) if scalar else out


def cutoff(x, flat: float, zero: float):
    """截断函数：|x| ≤ flat 时为 1，|x| ≥ zero 时为 0"""
    return 1.0 - smooth_step((np.abs(x) - flat) / (zero - flat))


def time_cutoff(t, flat: float = None, zero: float = None):
    """时间截断 χ(t)：t ≤ 1 时为 1，t ≥ 2 时为 0（0 ∉ supp(1−χ)）"""
    flat = CUTOFF_CONFIG["CHI_FLAT"] if flat is None else flat
    zero = CUTOFF_CONFIG["CHI_ZERO"] if zero is None else zero
    return cutoff(t, flat, zero)


def stationary_window(x, flat: float = None, support: float = None):
    """驻相窗口 ψ(x)：|x| ≤ 1/4 时为 1，支撑在 [−1/2, 1/2]"""
    flat = CUTOFF_CONFIG["PSI_FLAT"] if flat is None else flat
    support = CUTOFF_CONFIG["PSI_SUPPORT"] if support is None else support
    return cutoff(x, flat, support)


def partition_weights(sigma, r, sigma_0: float = None, sigma_1: float = None,
                      lambda_0: float = None):
    """
    单位分解 (w_low, w_mid, w_high)

    w_low = cut(σ/Σ₀)·cut(σr/Λ₀)，w_high = 1 − cut₂(σ/Σ₁)，w_mid = 1 − w_low − w_high

    Args:
        sigma: σ ≥ 0（标量或数组）
        r: r ≥ 1
        sigma_0, sigma_1, lambda_0: 截断阈值，默认取 PARTITION_CONFIG

    Returns:
        (w_low, w_mid, w_high)
    """
    sigma_0 = PARTITION_CONFIG["SIGMA_0"] if sigma_0 is None else sigma_0
    sigma_1 = PARTITION_CONFIG["SIGMA_1"] if sigma_1 is None else sigma_1
    lambda_0 = PARTITION_CONFIG["LAMBDA_0"] if lambda_0 is None else lambda_0
    if not 0 < sigma_0 < sigma_1:
        raise DomainError(f"需要 0 < Σ₀ < Σ₁：{sigma_0}, {sigma_1}")

    low_flat, low_zero = PARTITION_CONFIG["LOW_BAND"]
    high_flat, high_zero = PARTITION_CONFIG["HIGH_BAND"]
    sigma = np.asarray(sigma, dtype=float)
    lam = sigma * np.asarray(r, dtype=float)

    w_low = cutoff(sigma / sigma_0, low_flat, low_zero) * cutoff(lam / lambda_0, low_flat, low_zero)
    w_high = 1.0 - cutoff(sigma / sigma_1, high_flat, high_zero)
    w_mid = 1.0 - w_low - w_high
    if np.ndim(w_low) == 0:
        return float(w_low), float(w_mid), float(w_high)
    return w_low, w_mid, w_high


def weight_function(piece: str):
    """返回单位分解某一部分的权重函数 (σ, r) → w"""
    index = {"low": 0, "mid": 1, "high": 2}[piece]
    return lambda sigma, r: partition_weights(np.real(sigma), r)[index]
