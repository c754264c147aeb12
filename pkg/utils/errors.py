# utils/errors.py
"""
统一异常定义
所有数值分析模块抛出的异常都继承自 OscillatoryAnalysisError
"""


class OscillatoryAnalysisError(Exception):
    """振荡积分分析异常基类"""


class DomainError(OscillatoryAnalysisError, ValueError):
    """参数超出运算定义域"""


class GammaPoleError(DomainError):
    """Γ 函数在非正整数处的极点"""


class IntegrabilityError(DomainError):
    """展开指数 Re j ≤ −1，在 0 附近不可积"""


class InvalidTruncationError(OscillatoryAnalysisError, ValueError):
    """截断阶数超过余项阶数"""


class UnsupportedOperationError(OscillatoryAnalysisError):
    """运算不被支持（如对数幂乘法、非解析被积函数的围道积分）"""


class AccuracyError(OscillatoryAnalysisError):
    """
    未达到要求的精度

    Args:
        message: 错误说明
        best_value: 目前最好的估计值
        err_estimate: 对应的误差估计
    """

    def __init__(self, message, best_value=None, err_estimate=None):
        super().__init__(message)
        self.best_value = best_value
        self.err_estimate = err_estimate


class IllConditionedContourError(OscillatoryAnalysisError):
    """极点距离变形后的积分路径过近"""


class InconclusiveFitError(OscillatoryAnalysisError):
    """对数-对数斜率拟合无法得出结论"""


class PhaseUnwrapError(OscillatoryAnalysisError):
    """连续相位提取（展开）失败"""
