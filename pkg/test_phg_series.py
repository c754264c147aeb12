#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试多齐次展开数据模型、被积函数样例库与斜率拟合工具
"""

import os
import sys

import numpy as np
import pandas as pd
import pytest

# 添加项目路径
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

from series_analysis.phg_series import (
    PhgSeries,
    PhgTerm,
    coerce_series,
    eval_series,
    monomial_multiply,
    series_to_frame,
    substitute_scale,
    truncate,
)
from series_analysis.profiles import example_profile, gaussian_profile, get_profile, lambda_bump_profile
from utils.errors import (
    DomainError,
    InconclusiveFitError,
    InvalidTruncationError,
    UnsupportedOperationError,
)
from utils.fitting import fit_loglog_slope


def test_truncate():
    s = coerce_series([(0, 0, 1.0), (1, 0, 2.0)])
    kept = truncate(s, 0.5)
    assert [(t.j.real, t.k) for t in kept.terms] == [(0.0, 0)], "只保留 Re j ≤ 1/2 的项"
    assert kept.remainder_order == 0.5, "余项阶数变为 γ"
    assert len(truncate(PhgSeries(), 3.0)) == 0, "空展开截断仍为空"

    bounded = coerce_series([(0, 0, 1.0)], remainder_order=2.0)
    assert len(truncate(bounded, 2.0)) == 1, "γ 等于余项阶数时不变"
    with pytest.raises(InvalidTruncationError):
        truncate(bounded, 2.5)


def test_eval_series_examples():
    assert eval_series(coerce_series([(0, 0, 3.0 - 1.0j)]), 0.37) == 3.0 - 1.0j
    value = eval_series(coerce_series([(1, 1, 1.0)]), np.exp(-1.0))
    assert abs(value - (-np.exp(-1.0))) < 1e-15, "x log x 在 1/e 处为 −1/e"
    value = eval_series(coerce_series([(0.5, 0, 1.0), (1, 0, -2.0)]), 0.01)
    assert abs(value - 0.08) < 1e-15
    with pytest.raises(DomainError):
        eval_series(coerce_series([(0, 0, 1.0)]), 0.0)


def test_eval_series_with_parameter_coefficients():
    s = PhgSeries((PhgTerm(1, 0, lambda r: r ** 2),))
    values = eval_series(s, np.array([0.1, 0.2]), params=3.0)
    assert np.allclose(values, [0.9, 1.8]), "系数函数应在参数点处求值"


def test_series_invariants():
    with pytest.raises(DomainError):
        coerce_series([(0, 0, 1.0), (0, 0, 2.0)])
    with pytest.raises(DomainError):
        coerce_series([(3, 0, 1.0)], remainder_order=2.0)
    with pytest.raises(DomainError):
        PhgTerm(0, -1, 1.0)


def test_monomial_multiply():
    s = coerce_series([(0, 0, 1.0), (1, 1, 0.5j)])
    moved = monomial_multiply(s, 0.5)
    assert [(t.j.real, t.k) for t in moved.terms] == [(0.5, 0), (1.5, 1)]
    for x in (0.01, 0.3, 2.0):
        lhs = eval_series(moved, x)
        rhs = x ** 0.5 * eval_series(s, x)
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs), "monomial_multiply 应与求值交换"
    assert len(monomial_multiply(PhgSeries(), 2.0)) == 0
    with pytest.raises(UnsupportedOperationError):
        monomial_multiply(s, 1.0, 1)


def test_substitute_scale():
    """x = c·y：x log x = c·y·log c + c·y·log y"""
    c = 0.25
    s = coerce_series([(1, 1, 1.0), (0, 0, 2.0)])
    scaled = substitute_scale(s, c)
    for y in (0.1, 0.5, 3.0):
        assert abs(eval_series(scaled, y) - eval_series(s, c * y)) < 1e-14
    with pytest.raises(DomainError):
        substitute_scale(s, 0.0)


def test_series_to_frame():
    frame = series_to_frame(coerce_series([(0.5, 1, 1.0 + 2.0j)]))
    assert list(frame.columns) == ["re_j", "im_j", "k", "re_coeff", "im_coeff"]
    assert frame.iloc[0]["re_coeff"] == 1.0 and frame.iloc[0]["im_coeff"] == 2.0
    assert isinstance(series_to_frame(PhgSeries()), pd.DataFrame)


def test_gaussian_truncation_rate():
    """截断到 γ = 4 后误差按 σ⁶ 衰减"""
    profile = gaussian_profile()
    sigma = np.geomspace(0.02, 0.2, 8)
    errors = np.abs(profile.evaluate(sigma, 1.0) - profile.sigma_truncation(sigma, 1.0, 4.0))
    slope = fit_loglog_slope(sigma, errors).slope
    assert abs(slope - 6.0) <= 0.1, f"截断误差斜率 {slope:.3f}，预期 6"


def test_example_profile_expansions():
    """数值示例的 σ 展开与 r 展开都与直接求值一致"""
    profile = example_profile()
    r = 2.0
    sigma = np.geomspace(0.005, 0.05, 8)
    errors = np.abs(profile.evaluate(sigma, r) - profile.sigma_truncation(sigma, r, 2.0))
    slope = fit_loglog_slope(sigma, errors).slope
    assert abs(slope - 4.0) <= 0.1, f"σ 展开截断斜率 {slope:.3f}，预期 4"

    lam = 1.5
    rho = np.geomspace(1e-3, 1e-2, 6)
    direct = profile.evaluate(lam * rho, 1.0 / rho)
    leading = profile.r_expansion.terms[0].value(lam)
    assert np.allclose(direct, leading, rtol=0, atol=1e-4), "ρ → 0 时趋于主项 φ₀(λ)"
    assert profile.even and profile.analytic, "数值示例为偶函数且可解析延拓"
    assert len(profile.poles(4.0)) == 2


def test_lambda_bump_profile():
    profile = lambda_bump_profile()
    assert profile.support(10.0) == (0.1, 0.3), "支撑按 1/r 缩放"
    assert profile.evaluate(np.array([0.05]), 10.0)[0] == 0.0


def test_get_profile():
    assert get_profile("gaussian").name == "gaussian"
    with pytest.raises(DomainError):
        get_profile("no-such-profile")
    with pytest.raises(DomainError):
        gaussian_profile(rate=0.0)


def test_fit_loglog_slope():
    x = np.geomspace(1.0, 100.0, 10)
    fit = fit_loglog_slope(x, 3.0 * x ** -2.0)
    assert abs(fit.slope + 2.0) < 1e-12 and fit.max_residual < 1e-12
    with pytest.raises(InconclusiveFitError):
        fit_loglog_slope(x, np.zeros_like(x))
    with pytest.raises(InconclusiveFitError):
        fit_loglog_slope(x[:2], x[:2])
    noisy = x ** -1.0 * np.where(np.arange(10) % 2, 3.0, 1.0)
    with pytest.raises(InconclusiveFitError):
        fit_loglog_slope(x, noisy)
    assert np.isfinite(fit_loglog_slope(x, noisy, max_residual=-1.0).slope), "负残差上限表示不检查"


def run_all_tests():
    """运行所有测试"""
    print("🚀 开始测试多齐次展开...")
    print("=" * 60)
    tests = [
        test_truncate,
        test_eval_series_examples,
        test_eval_series_with_parameter_coefficients,
        test_series_invariants,
        test_monomial_multiply,
        test_substitute_scale,
        test_series_to_frame,
        test_gaussian_truncation_rate,
        test_example_profile_expansions,
        test_lambda_bump_profile,
        test_get_profile,
        test_fit_loglog_slope,
    ]
    passed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
            passed += 1
        except Exception as e:
            print(f"❌ {test.__name__}: {e}")
    print("=" * 60)
    print(f"📊 测试结果: {passed}/{len(tests)} 通过")
    return passed == len(tests)


if __name__ == "__main__":
    success = run_all_tests()
    sys.exit(0 if success else 1)
