#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试各区域的渐近展开：kf、parF、dilF 驻相、角区，以及分解与缩放检查
"""

import os
import sys

import mpmath
import numpy as np
import pytest

# 添加项目路径
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

from asymptotic_analysis.corner_analysis import (
    corner_kf_expansion,
    corner_kf_terms,
    fresnel_moment_scaling_check,
    lambda_moment,
    moment_scaling_exponent,
)
from asymptotic_analysis.expansion_manager import (
    ExpansionManager,
    fourier_truncation_slope,
    oracle_integral,
    stationary_error_slope,
)
from asymptotic_analysis.face_expansions import (
    CutoffParams,
    ExpansionRequest,
    kf_expansion,
    kf_leading_term,
    parF_expansion,
    xi_series_from_lambda,
)
from asymptotic_analysis.stationary_phase import (
    amplitude_derivative,
    sigma_derivative,
    stationary_phase_dilf,
    nonstationary_decay_report,
    stationary_split,
    thmD_decompose,
)
from fourier_analysis.oscillatory_quadrature import OscIntegrand, quad_panels
from geometry_analysis.compactification import RegimeLabel
from series_analysis.phg_series import CornerCoefficient, coerce_series
from series_analysis.profiles import bump_profile, example_profile, gaussian_profile, lambda_bump_profile
from utils.errors import DomainError, UnsupportedOperationError


def test_kf_leading_term_gaussian():
    """高斯被积函数的 kf 首项为 ρ²·i/τ = i/t"""
    for t, r in ((1000.0, 1.0), (5000.0, 3.0)):
        lead = kf_leading_term(gaussian_profile(), t, r)
        assert abs(lead.value - 1j / t) < 1e-15, f"(t={t}, r={r}) 首项错误"


def test_kf_expansion_accuracy():
    req = ExpansionRequest(gaussian_profile(), sign=1, face=RegimeLabel.KF, order=2.0)
    errors = []
    for t in (100.0, 1000.0):
        result = kf_expansion(req, t, 1.0)
        assert result.face == RegimeLabel.KF and not result.warnings
        oracle = oracle_integral(req.profile, 1, t, 1.0, 1e-12).value
        errors.append(abs(result.value - oracle))
    assert errors[1] < 1e-6, f"τ = 1000 时 kf 展开误差 {errors[1]:.2e}"
    assert errors[1] < 0.1 * errors[0], "τ 增大时 kf 误差应下降"


def test_kf_expansion_outside_regime_warns():
    req = ExpansionRequest(gaussian_profile())
    result = kf_expansion(req, 0.5, 1.0)
    assert result.warnings, "τ ≤ 1 时应发出区域警告"
    with pytest.raises(DomainError):
        kf_expansion(req, 0.0, 1.0)


def test_xi_series_from_lambda():
    """常数项 1 乘 e^{iλ}，在 ξ 下得到 1 + iξ^{1/2} − ξ/2"""
    series, j0_max = xi_series_from_lambda(coerce_series([(0, 0, 1.0)]), 1, 2.0)
    assert j0_max == 2
    coeffs = {(term.j.real, term.k): term.value() for term in series.terms}
    assert coeffs == {(0.0, 0): 1.0, (0.5, 0): 1j, (1.0, 0): -0.5}
    assert series.remainder_order == 1.0


def test_parF_exact_for_lambda_bump():
    """λ 紧支撑鼓包的 r 展开只有一项，parF 展开与数值积分一致"""
    profile = lambda_bump_profile()
    req = ExpansionRequest(profile, sign=1, face=RegimeLabel.PARF, order=0.0)
    t, r = 400.0, 20.0
    result = parF_expansion(req, t, r, 1e-11)
    oracle = quad_panels(OscIntegrand(profile, 1), t, r, 1e-11).value
    assert abs(result.value - oracle) < 1e-9, f"parF 差 {abs(result.value - oracle):.2e}"
    assert result.metadata["tau"] == 1.0


def test_parF_example_profile():
    req = ExpansionRequest(example_profile(), sign=1, face=RegimeLabel.PARF, order=4.0)
    t, r = 400.0, 20.0
    result = parF_expansion(req, t, r, 1e-12)
    oracle = oracle_integral(req.profile, 1, t, r, 1e-12).value
    rel = abs(result.value - oracle) / abs(oracle)
    assert rel < 1e-6, f"parF 相对误差 {rel:.2e}"
    assert result.terms_used == 3


def test_parF_requires_r_expansion():
    with pytest.raises(UnsupportedOperationError):
        parF_expansion(ExpansionRequest(gaussian_profile()), 100.0, 10.0)


def test_sigma_derivative_finite_difference():
    """无精确导数时用 Richardson 外推差分"""
    profile = example_profile()
    sigma, r = 0.5, 1.0
    expected = complex(mpmath.diff(lambda s: mpmath.exp(-s * s) / (2 * (1 + s * s * r * r)), sigma, 2))
    assert abs(sigma_derivative(profile, sigma, r, 2) - expected) < 1e-6
    exact = amplitude_derivative(gaussian_profile(), 0.5, 1.0, 1)
    # a = 2σe^{−σ²}，a' = 2(1 − 2σ²)e^{−σ²}
    assert abs(exact - 2.0 * 0.5 * np.exp(-0.25)) < 1e-14


def test_stationary_phase_dilf():
    req = ExpansionRequest(gaussian_profile(), sign=-1, face=RegimeLabel.DILF)
    t = 200.0
    stat = stationary_split(req, t, t, 1e-13)[0].value
    errors = [abs(stationary_phase_dilf(req, t, 1.0, K).value - stat) for K in (0, 1, 2)]
    assert errors[2] < 1e-6, f"K = 2 驻相展开误差 {errors[2]:.2e}"
    assert errors[0] > errors[1] > errors[2], "增加项数后误差应下降"


def test_stationary_phase_domain():
    with pytest.raises(DomainError):
        stationary_phase_dilf(ExpansionRequest(gaussian_profile(), sign=1), 10.0, 1.0, 0)
    req = ExpansionRequest(gaussian_profile(), sign=-1)
    with pytest.raises(DomainError):
        stationary_phase_dilf(req, 10.0, 1.0, -1)
    with pytest.raises(DomainError):
        stationary_split(req, 0.0, 1.0)
    with pytest.raises(DomainError):
        CutoffParams(chi_flat=0.0)


def test_stationary_split_sums_to_integral():
    req = ExpansionRequest(example_profile(), sign=-1)
    for t, r in ((10.0, 20.0), (3.0, 1.0), (50.0, 100.0)):
        stat, non = stationary_split(req, t, r, 1e-11)
        total = quad_panels(OscIntegrand(req.profile, -1), t, r, 1e-11)
        budget = stat.err_estimate + non.err_estimate + total.err_estimate
        assert abs(stat.value + non.value - total.value) <= budget + 1e-12


def test_decay_report_without_stationary_part():
    """支撑远离驻点 σ* = 1 时 I_{−,stat} ≡ 0，比值仍有限"""
    profile = bump_profile(center=3.0, half_width=0.5)
    report = nonstationary_decay_report(profile, times=[1.0, 2.0, 4.0, 8.0, 16.0],
                                        early=(5.0, 10.0), late=(20.0, 40.0), tol=1e-10)
    assert np.isfinite(report["ratio_early"]) and np.isfinite(report["ratio_late"])
    assert np.isfinite(report["ratio_drop"])
    assert report["split_consistent"], "stat + non = I₋"


def test_decomposition_identity():
    req = ExpansionRequest(gaussian_profile(), sign=-1)
    for t, r in ((0.5, 1.0), (10.0, 10.0), (50.0, 100.0)):
        result = thmD_decompose(req, t, r, tol=1e-10)
        oracle = quad_panels(OscIntegrand(req.profile, -1), t, r, 1e-10).value
        assert abs(result.predicted_total - oracle) <= 1e-8, f"(t={t}, r={r}) 分解不成立"
    assert thmD_decompose(req, 0.5, 1.0).phase == 0.0, "t ≤ 1 时 χ = 1，相位为 0"
    assert abs(thmD_decompose(req, 10.0, 10.0).phase + 2.5) < 1e-15, "t ≥ 2 时相位 −r²/4t"


def test_lambda_moment_contour():
    """λ 矩：纯射线与“面板 + 射线”两种拆分一致，并与 mpmath 沿同一射线积分对照"""
    coeff = lambda lam: 0.5 / (1.0 + lam * lam)
    ray_only = lambda_moment(CornerCoefficient(coeff, 1.0, 1.0), -2.0, 0, 1.0, 1, 1e-11)
    mixed = lambda_moment(CornerCoefficient(coeff, 1.0, 3.0), -2.0, 0, 1.0, 1, 1e-11)
    assert abs(ray_only - mixed) < 1e-9, "积分路径拆分不影响结果"

    direction = mpmath.expjpi(0.25)

    def along_ray(u):
        lam = 1 + u * direction
        return mpmath.expj(lam * lam + lam) * 0.5 / (1 + lam * lam) / lam * direction

    expected = complex(mpmath.quad(along_ray, [0, 2, 5, mpmath.inf]))
    assert abs(ray_only - expected) < 1e-9


def test_corner_expansion_validation():
    with pytest.raises(UnsupportedOperationError):
        corner_kf_expansion(gaussian_profile(), 10.0, 2.0, 2.0)
    with pytest.raises(UnsupportedOperationError):
        corner_kf_terms(coerce_series([(0, 0, 1.0)]), 10.0, 2.0, 2.0)
    with pytest.raises(DomainError):
        corner_kf_terms(example_profile().corner_expansion, 10.0, 0.0, 2.0)


def test_moment_scaling_exponent():
    assert moment_scaling_exponent(0, 0) == 0.5
    assert moment_scaling_exponent(1, 0) == 1.5
    assert moment_scaling_exponent(1, 1) == 1.5
    assert moment_scaling_exponent(2, 1) == 2.5
    with pytest.raises(DomainError):
        moment_scaling_exponent(-1, 0)


def test_moment_scaling_slopes():
    for k in (0, 1):
        slope = fresnel_moment_scaling_check(k)
        assert abs(slope - (0.5 + k)) <= 0.1, f"𝒥_{k} 斜率 {slope:.3f}，预期 {0.5 + k}"


def test_fourier_truncation_slope():
    taus = np.geomspace(30.0, 3000.0, 7)
    for gamma_ in (0.0, 1.0):
        slope = fourier_truncation_slope(gamma_, taus).slope
        assert slope <= -(gamma_ + 1.0) + 0.15, f"γ={gamma_} 斜率 {slope:.3f}"


@pytest.mark.slow
def test_stationary_error_slopes():
    for K, t_max in ((0, 2000.0), (1, 2000.0), (2, 600.0)):
        slope = stationary_error_slope(gaussian_profile(), K, np.geomspace(20.0, t_max, 7)).slope
        assert slope <= -(K + 1.5) + 0.15, f"K={K} 斜率 {slope:.3f}"


@pytest.mark.slow
def test_corner_expansion_mid_piece():
    """中能部分在 τ = 2, r = 500 处的角区预测与面板积分相符到三位有效数字"""
    manager = ExpansionManager("mid_piece", sign=1, order=4.0, tol=1e-13)
    r = 500.0
    t = 2.0 * r * r
    prediction, _ = manager.predict("corner", t, r)
    oracle = manager.oracle("corner", t, r)
    assert abs(prediction - oracle) <= 1e-3 * abs(oracle)


def test_expansion_manager():
    manager = ExpansionManager("gaussian", sign=1, order=2.0)
    assert manager.run_expansion("kf", 1000.0, 1.0)
    assert not manager.run_expansion("no-such-face", 1.0, 1.0), "未知区域应返回 False"
    frame = manager.get_results()
    assert len(frame) == 1 and frame.iloc[0]["abs_error"] < 1e-6

    dilf = ExpansionManager("gaussian", sign=-1, order=2)
    prediction, warnings = dilf.predict("dilF", 200.0, 200.0)
    assert abs(prediction - dilf.oracle("dilF", 200.0, 200.0)) < 1e-6 and warnings == []


def run_all_tests():
    """运行所有测试"""
    print("🚀 开始测试渐近展开...")
    print("=" * 60)
    tests = [
        test_kf_leading_term_gaussian,
        test_kf_expansion_accuracy,
        test_kf_expansion_outside_regime_warns,
        test_xi_series_from_lambda,
        test_parF_exact_for_lambda_bump,
        test_parF_example_profile,
        test_parF_requires_r_expansion,
        test_sigma_derivative_finite_difference,
        test_stationary_phase_dilf,
        test_stationary_phase_domain,
        test_stationary_split_sums_to_integral,
        test_decay_report_without_stationary_part,
        test_decomposition_identity,
        test_lambda_moment_contour,
        test_corner_expansion_validation,
        test_moment_scaling_exponent,
        test_moment_scaling_slopes,
        test_fourier_truncation_slope,
        test_stationary_error_slopes,
        test_corner_expansion_mid_piece,
        test_expansion_manager,
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
