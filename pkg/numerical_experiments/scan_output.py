# numerical_experiments/scan_output.py
"""
扫描描述与结果输出
"""

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from utils.errors import DomainError
from utils.logger import get_logger

logger = get_logger(__name__)

SCENARIOS = ("fig_numeric", "gaussian_phase", "bound_state", "fourier_table")
RAY_KINDS = ("linear", "sqrt", "fixed")

FLOAT_FORMAT = "%.15g"


@dataclass(frozen=True)
class ScanSpec:
    """
    扫描描述

    Args:
        scenario: 场景名称
        t_min, t_max, points: t 网格
        spacing: 'log' 或 'linear'
        ray_kind: r = c·t ('linear')、r = c·t^{1/2} ('sqrt') 或 r = c ('fixed')
        ray_coeff: 射线系数 c > 0
        output: 输出 CSV 路径（可为空）
    """

    scenario: str
    t_min: float = 1.0
    t_max: float = 400.0
    points: int = 2000
    spacing: str = "log"
    ray_kind: str = "linear"
    ray_coeff: float = 2.0
    output: Optional[str] = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise DomainError(f"未知场景 '{self.scenario}'，可选：{SCENARIOS}")
        if self.spacing not in ("log", "linear"):
            raise DomainError(f"未知网格类型 '{self.spacing}'")
        if self.ray_kind not in RAY_KINDS:
            raise DomainError(f"未知射线类型 '{self.ray_kind}'")
        if self.ray_coeff <= 0:
            raise DomainError(f"射线系数必须为正：{self.ray_coeff}")
        if self.points < 1:
            raise DomainError(f"网格点数必须为正：{self.points}")
        if self.points > 1 and not self.t_min < self.t_max:
            raise DomainError("网格必须严格递增")
        if self.spacing == "log" and self.t_min <= 0:
            raise DomainError("对数网格需要 t_min > 0")

    def t_grid(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.t_min])
        if self.spacing == "log":
            return np.geomspace(self.t_min, self.t_max, self.points)
        return np.linspace(self.t_min, self.t_max, self.points)

    def radius(self, t):
        """射线上的 r(t)"""
        t = np.asarray(t, dtype=float)
        if self.ray_kind == "linear":
            return self.ray_coeff * t
        if self.ray_kind == "sqrt":
            return self.ray_coeff * np.sqrt(t)
        return np.full_like(t, self.ray_coeff)

    @classmethod
    def parse_ray(cls, text: str):
        """解析 '2*t'、'3*sqrt(t)'、'5' 形式的射线描述，返回 (ray_kind, ray_coeff)"""
        compact = text.replace(" ", "")
        try:
            if compact.endswith("*t"):
                return "linear", float(compact[:-2])
            if compact.endswith("*sqrt(t)"):
                return "sqrt", float(compact[:-len("*sqrt(t)")])
            if compact == "t":
                return "linear", 1.0
            return "fixed", float(compact)
        except ValueError as exc:
            raise DomainError(f"无法解析射线 '{text}'") from exc


def emit_csv(table, path: str) -> None:
    """
    写出 CSV：表头、15 位有效数字、LF 换行、UTF-8

    Args:
        table: DataFrame 或 dict 行列表
        path: 输出路径
    """
    frame = table if isinstance(table, pd.DataFrame) else pd.DataFrame(table)
    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n",
                     encoding="utf-8")
    except OSError as exc:
        raise OSError(f"写入 {path} 失败：{exc}") from exc
    logger.info(f"已写出 {len(frame)} 行到 {path}")
