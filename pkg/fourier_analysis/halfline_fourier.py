# fourier_analysis/halfline_fourier.py
"""
半直线 Fourier 变换模块
Θ(ξ)ξ^j log^k ξ 的闭式变换、多齐次展开的 Fourier 展开映射、
数值半直线变换，以及 ε 正则化的高精度预言机
"""

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple, Union

import mpmath
import numpy as np
from scipy.interpolate import BarycentricInterpolator, CubicSpline

from fourier_analysis.gauss_kronrod import integrate_panels, uniform_edges
from series_analysis.phg_series import PhgSeries, PhgTerm, eval_series
from series_analysis.special_functions import CCoeffKey, c_coeff
from utils.config import ORACLE_CONFIG, QUADRATURE_CONFIG
from utils.errors import AccuracyError, DomainError, IntegrabilityError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class QuadResult:
    """
    振荡积分结果

    Args:
        value: 复数值
        err_estimate: 误差估计（不低于 1e-14）
        method: 方法标签
        evaluations: 被积函数求值次数
    """

    value: complex
    err_estimate: float
    method: str
    evaluations: int

    def __post_init__(self):
        floor = QUADRATURE_CONFIG["ERROR_FLOOR"]
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "err_estimate", max(float(self.err_estimate), floor))

    def __sub__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value - other.value, self.err_estimate + other.err_estimate,
                          f"{self.method}-{other.method}", self.evaluations + other.evaluations)

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.err_estimate + other.err_estimate,
                          f"{self.method}+{other.method}", self.evaluations + other.evaluations)


@dataclass(frozen=True)
class HalflineTransformRequest:
    """F_{ξ→τ}(Θ(ξ)ξ^j log^k ξ)(τ) 的参数"""

    j: complex
    k: int
    tau: float

    def __post_init__(self):
        object.__setattr__(self, "j", complex(self.j))
        if self.j.real <= -1:
            raise IntegrabilityError(f"需要 Re j > −1（0 附近可积）：{self.j}")
        if self.k < 0 or int(self.k) != self.k:
            raise DomainError(f"对数幂必须为非负整数：{self.k}")
        if self.tau == 0:
            raise DomainError("τ = 0 处变换奇异")

    @property
    def sign(self) -> int:
        return 1 if self.tau > 0 else -1


def monomial_transform(req: HalflineTransformRequest) -> complex:
    """
    闭式变换 |τ|^{−j−1} Σ_κ c_{j,k,κ;sign(τ)} log^κ|τ|

    Args:
        req: 变换参数

    Returns:
        复数变换值
    """
    abs_tau = abs(req.tau)
    log_tau = np.log(abs_tau)
    total = sum(c_coeff(CCoeffKey(req.j, req.k, kappa, req.sign)) * log_tau ** kappa
                for kappa in range(req.k + 1))
    return complex(total * np.exp(-(req.j + 1) * log_tau))


def phg_fourier_expansion(series: PhgSeries, re_max: float, sign_tau: int) -> PhgSeries:
    """
    紧支撑函数 ξ→0 展开到 |τ|→∞ 展开的映射

    输出是变量 x = 1/|τ| 的展开：项 (j+1, κ) 对应 x^{j+1} log^κ x，
    系数为 (−1)^κ Σ_{K≥κ} φ_{j,K} c_{j,K,κ;sign}（log|τ| = −log x）。
    eval_series(out, 1/|τ|) 与 evaluate_fourier_expansion(out, τ) 相同。

    Args:
        series: ξ 的展开（系数可以是参数函数）
        re_max: 输入指数的枚举上限
        sign_tau: τ 的符号 ±1

    Returns:
        PhgSeries，余项阶数 re_max + 1
    """
    if sign_tau not in (1, -1):
        raise DomainError(f"sign_tau 必须为 ±1：{sign_tau}")
    for term in series.terms:
        if term.j.real <= -1:
            raise IntegrabilityError(f"指数 Re j ≤ −1 不可积：{term.j}")

    groups = {}
    for term in series.terms:
        if term.j.real > re_max + 1e-12:
            continue
        key = (round(term.j.real, 10), round(term.j.imag, 10))
        groups.setdefault(key, []).append(term)

    out = []
    for members in groups.values():
        j = members[0].j
        k_max = max(t.k for t in members)
        by_k = {t.k: t for t in members}
        for kappa in range(k_max + 1):
            weights = [(by_k[K], (-1) ** kappa * c_coeff(CCoeffKey(j, K, kappa, sign_tau)))
                       for K in range(kappa, k_max + 1) if K in by_k]

            def coeff(params=None, weights=weights):
                return sum(term.value(params) * c for term, c in weights)

            out.append(PhgTerm(j + 1, kappa, coeff))
    return PhgSeries(tuple(out), re_max + 1, "1/|tau|")


def evaluate_fourier_expansion(series: PhgSeries, tau: float, params=None) -> complex:
    """在 x = 1/|τ| 处计算 phg_fourier_expansion 的输出"""
    if tau == 0:
        raise DomainError("τ = 0 处展开无意义")
    return eval_series(series, 1.0 / abs(tau), params)


SampledFunction = Tuple[Sequence[float], Sequence[complex]]


def _as_vectorized(f: Union[Callable, SampledFunction]) -> Callable:
    if callable(f):
        return f
    xs, ys = f
    ys = np.asarray(ys, dtype=complex)
    spline_re = CubicSpline(xs, ys.real)
    spline_im = CubicSpline(xs, ys.imag)
    lo, hi = float(xs[0]), float(xs[-1])

    def sampled(x):
        x = np.asarray(x, dtype=float)
        inside = (x >= lo) & (x <= hi)
        return np.where(inside, spline_re(x) + 1j * spline_im(x), 0.0)

    return sampled


def numeric_halfline_fourier(f, tau: float, support: Tuple[float, float], tol: float = None,
                             max_panels: int = None) -> QuadResult:
    """
    数值半直线变换 ∫₀^∞ e^{iξτ} f(ξ) dξ（f 紧支撑）

    面板宽度不超过 π/(4|τ|)，每个面板自适应 G7/K15。

    Args:
        f: 向量化可调用对象，或采样 (xs, ys)（三次样条插值）
        tau: 实数频率
        support: f 的支撑区间 (a, b)
        tol: 绝对容差
        max_panels: 面板预算

    Returns:
        QuadResult
    """
    tol = QUADRATURE_CONFIG["DEFAULT_TOL"] if tol is None else tol
    func = _as_vectorized(f)
    lo, hi = max(0.0, float(support[0])), float(support[1])
    if not np.isfinite(hi):
        raise DomainError("数值半直线变换需要有限支撑")
    if hi <= lo:
        return QuadResult(0j, 0.0, "halfline-panels", 0)

    width = np.pi / (4.0 * abs(tau)) if tau != 0 else (hi - lo) / 16.0
    edges = uniform_edges(lo, hi, width)
    result = integrate_panels(lambda x: np.exp(1j * tau * x) * func(x), edges, tol,
                              max_panels=max_panels)
    if not result.converged or result.error > tol:
        raise AccuracyError(f"半直线变换在 τ={tau} 未达到容差 {tol:g}",
                            best_value=result.value, err_estimate=result.error)
    return QuadResult(result.value, result.error, "halfline-panels", result.evaluations)


def regularized_monomial_integral(j: complex, k: int, tau: float, eps: float,
                                  dps: int = None) -> complex:
    """
    ε 正则化积分 ∫₀^∞ e^{iξτ−εξ} ξ^j log^k ξ dξ（mpmath 高精度）

    沿 e^{−(ε−iτ)ξ} 的最速下降射线 ξ = u/(ε−iτ) 积分，射线上被积函数单调衰减。
    """
    dps = ORACLE_CONFIG["MP_DPS"] if dps is None else dps
    with mpmath.workdps(dps):
        a = mpmath.mpc(eps, -tau)
        log_a = mpmath.log(a)
        jj = mpmath.mpc(complex(j).real, complex(j).imag)

        def integrand(u):
            return mpmath.exp(-u) * mpmath.power(u, jj) * (mpmath.log(u) - log_a) ** k

        value = mpmath.quad(integrand, [0, 1, 10, mpmath.inf]) * mpmath.exp(-(jj + 1) * log_a)
        return complex(value)


def epsilon_oracle(j: complex, k: int, tau: float, ladder: Sequence[float] = None) -> complex:
    """
    ε → 0 外推的数值预言机

    在 ε 阶梯上计算正则化积分，再用多项式 (Neville/Richardson) 外推到 ε = 0。

    Args:
        j, k: 幂指数与对数幂
        tau: 非零实频率
        ladder: ε 阶梯，默认取 ORACLE_CONFIG

    Returns:
        外推后的复数值
    """
    if tau == 0:
        raise DomainError("τ = 0 处预言机无定义")
    if complex(j).real <= -1:
        raise IntegrabilityError(f"需要 Re j > −1：{j}")
    ladder = np.asarray(ORACLE_CONFIG["EPS_LADDER"] if ladder is None else ladder, dtype=float)
    values = np.array([regularized_monomial_integral(j, k, tau, eps) for eps in ladder])
    real_part = BarycentricInterpolator(ladder, values.real)(0.0)
    imag_part = BarycentricInterpolator(ladder, values.imag)(0.0)
    logger.debug(f"ε 预言机 j={j}, k={k}, τ={tau}: {len(ladder)} 层外推")
    return complex(float(real_part), float(imag_part))


def fourier_table(j_values: Sequence[float], k_values: Sequence[int],
                  tau_values: Sequence[float]) -> list:
    """闭式变换与 ε 预言机的对照表（每行一个 (j,k,τ) 组合）"""
    rows = []
    for j in j_values:
        for k in k_values:
            for tau in tau_values:
                formula = monomial_transform(HalflineTransformRequest(j, k, tau))
                oracle = epsilon_oracle(j, k, tau)
                rows.append({
                    "j": float(np.real(j)),
                    "k": int(k),
                    "tau": float(tau),
                    "re_formula": formula.real,
                    "im_formula": formula.imag,
                    "re_oracle": oracle.real,
                    "im_oracle": oracle.imag,
                    "rel_diff": abs(formula - oracle) / abs(oracle),
                })
    return rows
