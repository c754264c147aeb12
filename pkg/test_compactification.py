#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试紧化时空的坐标、边界定义函数、区域分类与单位分解
"""

import os
import sys

import numpy as np
import pytest

# 添加项目路径
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

from geometry_analysis.compactification import (
    RegimeLabel,
    bump,
    chart,
    classify,
    cutoff,
    partition_weights,
    smooth_step,
    stationary_window,
    time_cutoff,
    weight_function,
)
from utils.config import PARTITION_CONFIG
from utils.errors import DomainError


def test_chart_coordinates():
    p = chart(100.0, 1.0)
    assert p.rho == 1.0 and p.tau == 100.0 and p.s == 100.0
    assert abs(p.bdf_parF - 1.01) < 1e-15
    assert abs(p.bdf_dilF - 1.0 / 1.01) < 1e-15
    assert abs(p.bdf_kf - 1.0 / 101.0) < 1e-15
    assert abs(p.bdf_sigma - 100.0 / 101.0) < 1e-15


def test_bdf_product_identity():
    """t = bdf_dilF⁻¹·bdf_parF⁻²·bdf_kf⁻¹，t ∈ [1e-2, 1e8]，r ∈ [1, 1e8]"""
    worst = 0.0
    for t in np.geomspace(1e-2, 1e8, 41):
        for r in np.geomspace(1.0, 1e8, 33):
            p = chart(t, r)
            worst = max(worst, abs(1.0 / (p.bdf_dilF * p.bdf_parF ** 2 * p.bdf_kf) - t) / t)
    assert worst < 1e-12, f"bdf 恒等式最大相对误差 {worst:.2e}"


def test_chart_along_rays():
    """t = r² 时 bdf_kf = bdf_dilF = 1/2，bdf_parF = 2/r；t = r 时 bdf_dilF = 1/(1+r)"""
    for r in (10.0, 1e3, 1e6):
        p = chart(r * r, r)
        assert abs(p.bdf_kf - 0.5) < 1e-12 and abs(p.bdf_dilF - 0.5) < 1e-12
        assert abs(p.bdf_parF - 2.0 / r) < 1e-12 * (2.0 / r)

        p = chart(r, r)
        assert abs(p.bdf_parF - (1.0 + 1.0 / r)) < 1e-12
        assert abs(p.bdf_dilF - 1.0 / (1.0 + r)) < 1e-12 / r
        assert abs(p.bdf_kf - r / (1.0 + r)) < 1e-12

    # r 固定、t → ∞：只有 bdf_kf 趋于 0
    p = chart(1e8, 10.0)
    assert p.bdf_kf < 1e-5
    assert p.bdf_parF > 0.09 and p.bdf_dilF > 0.9


def test_classify_examples():
    assert classify(chart(1e6, 10.0), threshold=0.05) == RegimeLabel.KF
    assert classify(chart(3.0, 2.0), threshold=0.01) == RegimeLabel.INTERIOR
    assert classify(chart(0.5, 1e6)) == RegimeLabel.NF


def _central_differences(f, x, h):
    """一到三阶中心差分"""
    d1 = (f(x + h) - f(x - h)) / (2.0 * h)
    d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / h ** 2
    d3 = (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h ** 3)
    return d1, d2, d3


def test_partition_smoothness():
    """过渡带上各权重的一到三阶差分（对各截断自身的无量纲变量）不超过 1e3"""
    sigma_0, sigma_1 = PARTITION_CONFIG["SIGMA_0"], PARTITION_CONFIG["SIGMA_1"]
    lambda_0 = PARTITION_CONFIG["LAMBDA_0"]
    sigma_small = 0.2 * sigma_0
    bands = {
        "w_low(σ/Σ₀)": (lambda x: partition_weights(x * sigma_0, 1.0)[0], np.linspace(0.2, 1.05, 171)),
        "w_low(σr/Λ₀)": (lambda y: partition_weights(sigma_small, y * lambda_0 / sigma_small)[0],
                         np.linspace(0.2, 1.05, 171)),
        "w_mid(σ/Σ₀)": (lambda x: partition_weights(x * sigma_0, 1.0)[1], np.linspace(0.2, 4.2, 401)),
        "w_high(σ/Σ₁)": (lambda x: partition_weights(x * sigma_1, 1.0)[2], np.linspace(0.95, 2.05, 221)),
    }
    for name, (f, grid) in bands.items():
        for order, values in enumerate(_central_differences(f, grid, 5e-3), start=1):
            worst = float(np.max(np.abs(values)))
            assert np.isfinite(worst) and worst <= 1e3, f"{name} 的 {order} 阶差分 {worst:.1f}"


def test_classify_faces():
    cases = [
        ((1000.0, 1.0), RegimeLabel.KF),
        ((1e4, 100.0), RegimeLabel.PARF),
        ((1000.0, 1000.0), RegimeLabel.DILF),
        ((0.5, 1000.0), RegimeLabel.NF),
        ((0.001, 1.0), RegimeLabel.SIGMA),
        ((1.5, 1.2), RegimeLabel.INTERIOR),
    ]
    for (t, r), expected in cases:
        label = classify(chart(t, r))
        assert label == expected, f"(t={t}, r={r}) 分类为 {label.value}，预期 {expected.value}"


def test_time_zero():
    p = chart(0.0, 5.0)
    assert np.isinf(p.bdf_kf) and np.isinf(p.bdf_parF) and np.isinf(p.bdf_dilF), "t = 0 时大时间 bdf 为 inf"
    assert p.bdf_sigma == 0.0
    assert classify(p) == RegimeLabel.SIGMA
    assert RegimeLabel.KF not in p.valid_faces


def test_chart_domain():
    with pytest.raises(DomainError):
        chart(1.0, 0.5)
    with pytest.raises(DomainError):
        chart(-1.0, 2.0)
    with pytest.raises(DomainError):
        classify(chart(1.0, 2.0), threshold=1.5)


def test_chart_to_dict():
    record = chart(10.0, 20.0).to_dict()
    for key in ("t", "r", "rho", "tau", "s", "bdf_kf", "bdf_parF", "bdf_dilF", "bdf_nf", "bdf_sigma"):
        assert key in record, f"缺少字段 {key}"
    assert "nf" in record["valid_faces"]


def test_bump_and_step():
    assert float(bump(0.0)) == 1.0
    assert float(bump(1.0)) == 0.0 and float(bump(-1.2)) == 0.0
    assert abs(smooth_step(0.5) - 0.5) < 1e-9, "光滑阶跃关于 1/2 对称"
    assert smooth_step(0.0) == 0.0 and smooth_step(1.0) == 1.0
    values = smooth_step(np.linspace(-0.5, 1.5, 201))
    assert np.all(np.diff(values) >= -1e-12), "光滑阶跃单调不减"


def test_cutoffs():
    assert cutoff(0.2, 0.25, 1.0) == 1.0
    assert cutoff(1.0, 0.25, 1.0) == 0.0
    assert time_cutoff(0.5) == 1.0 and time_cutoff(3.0) == 0.0
    assert 0.0 < time_cutoff(1.5) < 1.0
    assert stationary_window(-0.2) == 1.0, "|x| ≤ 1/4 时 ψ ≡ 1"
    assert stationary_window(0.6) == 0.0, "ψ 支撑在 (−1/2, 1/2)"


def test_partition_of_unity():
    rng = np.random.default_rng(5)
    sigma = rng.uniform(0.0, 3.0, 10_000)
    r = np.exp(rng.uniform(0.0, np.log(1e4), 10_000))
    w_low, w_mid, w_high = partition_weights(sigma, r)
    assert np.max(np.abs(w_low + w_mid + w_high - 1.0)) <= 1e-15, "单位分解之和必须为 1"

    sigma_0, sigma_1 = PARTITION_CONFIG["SIGMA_0"], PARTITION_CONFIG["SIGMA_1"]
    lambda_0 = PARTITION_CONFIG["LAMBDA_0"]
    assert np.all(w_low[(sigma >= sigma_0) | (sigma * r >= lambda_0)] == 0.0), "w_low 支撑错误"
    assert np.all(w_high[sigma <= sigma_1] == 0.0), "w_high 在 σ ≤ Σ₁ 时为 0"
    assert np.all(w_high[sigma >= 2.0 * sigma_1] == 1.0), "w_high 在 σ ≥ 2Σ₁ 时为 1"
    assert np.all(w_mid >= -1e-15)


def test_partition_scalar_and_validation():
    weights = partition_weights(0.01, 2.0)
    assert weights == (1.0, 0.0, 0.0), f"σ 与 σr 都很小时只有低能部分：{weights}"
    assert weight_function("mid")(0.7, 3.0) == partition_weights(0.7, 3.0)[1]
    with pytest.raises(DomainError):
        partition_weights(0.1, 2.0, sigma_0=1.0, sigma_1=0.5)


def run_all_tests():
    """运行所有测试"""
    print("🚀 开始测试紧化与单位分解...")
    print("=" * 60)
    tests = [
        test_chart_coordinates,
        test_bdf_product_identity,
        test_chart_along_rays,
        test_classify_examples,
        test_partition_smoothness,
        test_classify_faces,
        test_time_zero,
        test_chart_domain,
        test_chart_to_dict,
        test_bump_and_step,
        test_cutoffs,
        test_partition_of_unity,
        test_partition_scalar_and_validation,
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
