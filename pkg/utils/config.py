# utils/config.py
"""
振荡积分渐近分析配置文件
管理数值积分、单位分解、截断函数和实验扫描的各种参数和阈值
"""

import os
from dotenv import load_dotenv

load_dotenv()

# 数值积分参数
QUADRATURE_CONFIG = {
    "DEFAULT_TOL": float(os.getenv("OSCINT_DEFAULT_TOL", "1e-10")),  # 默认绝对容差
    "ERROR_FLOOR": 1e-14,           # 误差估计下限：永不低于1e-14
    "ROUNDOFF_FACTOR": 50.0,        # 舍入误差系数：50·eps·∫|f|
    "MAX_PANELS": 4_000_000,        # 面板预算上限
    "MAX_BISECTIONS": 40,           # 单个面板最大二分深度
    "PHASE_STEP": 1.5707963267948966,  # 相位增量：π/2（四分之一周期）
    "MAX_PANEL_WIDTH": 0.25,        # 面板最大宽度
    "GAUSSIAN_SIGMA_MIN": 8.0,      # 高斯衰减截断下限 σ_max ≥ 8
    "GAUSSIAN_LOG_MARGIN": 10.0,    # 截断位置额外对数裕量
    "SCHWARTZ_START": 8.0,          # Schwartz 衰减初始截断
    "SCHWARTZ_MAX_DOUBLINGS": 12,   # Schwartz 衰减最大加倍次数
    "RESIDUE_POINTS": 64,           # 留数圆周梯形点数
    "POLE_CLEARANCE": 1e-6,         # 极点距离积分路径的最小距离
    "MIN_RAY_ANGLE": 0.39269908169872414,  # 射线最小角度：π/8
    "PATH_DECAY": 40.0,             # 路径积分截断：指数衰减到 e^{-40}
}

# 单位分解参数（低能/中能/高能）
PARTITION_CONFIG = {
    "SIGMA_0": 0.5,      # 低能截断 Σ₀
    "SIGMA_1": 1.0,      # 高能截断 Σ₁ > Σ₀
    "LAMBDA_0": 4.0,     # σr 方向截断 Λ₀
    "LOW_BAND": (0.25, 1.0),   # 低能过渡带（以 Σ₀、Λ₀ 归一化）
    "HIGH_BAND": (1.0, 2.0),   # 高能过渡带（以 Σ₁ 归一化）
}

# 截断函数参数
CUTOFF_CONFIG = {
    "CHI_FLAT": 1.0,      # 时间截断 χ ≡ 1（t ≤ 1）
    "CHI_ZERO": 2.0,      # 时间截断 χ ≡ 0（t ≥ 2）
    "PSI_FLAT": 0.25,     # 驻相窗口 ψ ≡ 1（|·| ≤ 1/4）
    "PSI_SUPPORT": 0.5,   # 驻相窗口支撑 (−1/2, 1/2)
}

# 渐近展开参数
EXPANSION_CONFIG = {
    "FD_STEP_MAX": 0.05,         # 有限差分步长上限 h = min(0.05, r̂/20)
    "FD_STEP_RATIO": 20.0,
    "RICHARDSON_LEVELS": 3,      # Richardson 外推层数
    "MAX_DERIVATIVE_ORDER": 8,   # Γ 导数阶数上限
    "KF_MIN_TAU": 1.0,           # kf 区域：τ ≤ 1 时发出越界警告
    "SLOPE_RESIDUAL_MAX": 0.05,  # 斜率拟合残差上限
    "CORNER_TAIL_ANGLE": 0.7853981633974483,  # 角区尾部射线角度：π/4
    "NONSTAT_SIGMA_1": 0.5,      # 非驻相衰减检查的高能截断：σ* = 1 处 w_high ≡ 1
    "NONSTAT_POWER": 4,          # t⁴|I₊| 有界
    "NONSTAT_DROP": 10.0,        # |I_non|/|I_stat| 在 t≈50 到 t≈500 之间至少下降的倍数
}

# 独立预言机参数
ORACLE_CONFIG = {
    "EPS_LADDER": (0.02, 0.01, 0.005, 0.0025, 0.00125),  # ε 正则化阶梯
    "MP_DPS": 30,                # mpmath 工作精度（十进制位）
    "JLEM_WIDTH": 0.02,          # 矩缩放检查的高斯宽度 w
    "JLEM_TAU_RANGE": (1e-2, 1e-1),  # τ/w² 拟合范围
    "JLEM_POINTS": 9,
}

# 数值示例（图 numeric）参数
FIG_NUMERIC_CONFIG = {
    "POINTS": 2000,              # 网格点数
    "T_MIN": 1.0,
    "T_MAX": 400.0,
    "RAY_COEFF": 2.0,            # 射线 r = 2t
    "DENOMINATOR_SCALE": 0.5,    # 分母尺度 ℓ = κ·r（κ=1/2 即 ℓ=t）
    "FIT_T_MIN": 20.0,           # 周期与包络拟合起点
    "LIMIT_T_MIN": 200.0,        # 极限检查起点
    "WINDOW_NODES": 32,          # 周期平均的 Gauss-Legendre 节点数
    "TOL": 1e-11,
}

# 扫描参数
SCAN_CONFIG = {
    "GAUSSIAN_PHASE_S": (0.05, 0.1, 0.2),
    "GAUSSIAN_PHASE_RHO": (1e-2, 1e-3, 1e-4, 1e-5),
    "BOUND_STATE_ENERGY": 1.0,
    "FOURIER_J": (0.0, 0.5, 1.0, 2.0, 3.3),
    "FOURIER_K": (0, 1, 2),
    "FOURIER_TAU": (-5.0, 20.0, 100.0),   # 5 × 3 × 3 = 45 组
    "BDF_T_RANGE": (1e-2, 1e8, 41),       # bdf 恒等式网格：t 的范围与点数
    "BDF_R_RANGE": (1.0, 1e8, 33),
}

# 文件路径配置
FILE_PATHS = {
    "OUTPUT_DIR": os.getenv("OSCINT_OUTPUT_DIR", "reports"),
    "VALIDATION_CSV": "validation.csv",  # 验收结果默认文件名
}

# 日志配置
LOGGING_CONFIG = {
    "LOG_LEVEL": os.getenv("OSCINT_LOG_LEVEL", "INFO"),
    "LOG_FORMAT": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    "LOG_FILE": os.getenv("OSCINT_LOG_FILE", ""),
}

# 性能配置
PERFORMANCE_CONFIG = {
    "VECTOR_CHUNK": 200_000,   # 单次向量化求值的最大节点数
    "SHOW_PROGRESS": True,     # 扫描时显示 tqdm 进度条
}
