#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试特殊函数：复 Γ 及其导数、多伽马、展开系数与 Fresnel 矩
以 mpmath 高精度计算作为独立对照
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

from series_analysis.special_functions import (
    BRANCH,
    EULER_GAMMA,
    CCoeffKey,
    c_coeff,
    fresnel_moment,
    fresnel_power_moment,
    gamma,
    gamma_derivative,
    polygamma,
    stationary_moment,
)
from utils.errors import DomainError, GammaPoleError, UnsupportedOperationError

mpmath.mp.dps = 30


def _close(a, b, rel=1e-12):
    return abs(complex(a) - complex(b)) <= rel * max(1.0, abs(complex(b)))


def test_gamma_values():
    assert _close(gamma(5), 24.0), "Γ(5) = 24"
    assert _close(gamma(0.5), np.sqrt(np.pi)), "Γ(1/2) = √π"
    z = 0.3 + 1.7j
    assert _close(gamma(z), complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))), "复 Γ 与 mpmath 不一致"


def test_gamma_poles():
    for z in (0, -1, -7):
        with pytest.raises(GammaPoleError):
            gamma(z)
    assert np.isfinite(abs(gamma(-0.5))), "非整数负数不是极点"


def test_gamma_derivatives_at_one():
    """Γ'(1) = −γ，Γ''(1) = γ² + π²/6"""
    assert _close(gamma_derivative(1, 1), -EULER_GAMMA)
    assert _close(gamma_derivative(1, 2), EULER_GAMMA ** 2 + np.pi ** 2 / 6)


def test_gamma_derivatives_against_mpmath():
    for z in (0.7 + 0.4j, 2.5, 1.0 - 2.0j):
        mz = mpmath.mpc(complex(z).real, complex(z).imag)
        for n in (1, 3, 5, 8):
            expected = complex(mpmath.diff(mpmath.gamma, mz, n))
            got = gamma_derivative(z, n)
            assert _close(got, expected, rel=1e-10), f"Γ^({n})({z}) 误差过大：{got} vs {expected}"


def test_gamma_derivative_order_cap():
    with pytest.raises(UnsupportedOperationError):
        gamma_derivative(1.0, 9)
    with pytest.raises(DomainError):
        gamma_derivative(1.0, -1)


def test_polygamma_against_mpmath():
    for m in (0, 1, 2, 4):
        for z in (0.2 + 0.1j, 3.0, 25.0 + 5.0j):
            expected = complex(mpmath.polygamma(m, mpmath.mpc(complex(z).real, complex(z).imag)))
            assert _close(polygamma(m, z), expected, rel=1e-11), f"ψ^({m})({z}) 不一致"


def test_polygamma_left_half_plane():
    """Re z ≪ 0 时先递推再用渐近级数：ψ'(−20.5) ≈ 9.822"""
    for m in (0, 1, 2, 4):
        for z in (-20.5, -25.5, -40.5 + 0.3j):
            expected = complex(mpmath.polygamma(m, mpmath.mpc(complex(z).real, complex(z).imag)))
            assert _close(polygamma(m, z), expected, rel=1e-10), f"ψ^({m})({z}) 不一致"
    assert abs(polygamma(1, -20.5) - 9.821994) < 1e-5

    for z, n in ((-20.5, 2), (-25.5, 3), (-40.5 + 0.3j, 2)):
        mz = mpmath.mpc(complex(z).real, complex(z).imag)
        expected = complex(mpmath.diff(mpmath.gamma, mz, n))
        got = gamma_derivative(z, n)
        assert abs(got - expected) <= 1e-9 * abs(expected), f"Γ^({n})({z}) 相对误差过大：{got} vs {expected}"


def test_branch_policy():
    assert _close(BRANCH.i_power(1, 1), 1j)
    assert _close(BRANCH.i_power(-1, 0.5), np.exp(-0.25j * np.pi))
    assert _close(BRANCH.power(-1.0, 0.5), 1j), "主值分支：(−1)^{1/2} = i"
    with pytest.raises(DomainError):
        BRANCH.log(0)


def test_c_coeff_examples():
    assert _close(c_coeff(CCoeffKey(0, 0, 0, 1)), 1j), "c_{0,0,0;+} = i"
    expected = 1j * (0.5j * np.pi - EULER_GAMMA)
    assert _close(c_coeff(CCoeffKey(0, 1, 0, 1)), expected), "c_{0,1,0;+} = i(iπ/2 − γ)"


def test_c_coeff_diagonal_closed_form():
    """c_{j,k,k;±} = (±i)^{j+1}(−1)^k Γ(j+1)"""
    rng = np.random.default_rng(3)
    for _ in range(20):
        j = float(rng.uniform(-0.9, 5.0))
        k = int(rng.integers(0, 5))
        for sign in (1, -1):
            expected = BRANCH.i_power(sign, j + 1) * (-1) ** k * gamma(j + 1)
            assert _close(c_coeff(CCoeffKey(j, k, k, sign)), expected), f"j={j}, k={k}, sign={sign}"


def test_c_coeff_conjugate_symmetry():
    for j, k, kappa in ((0.5, 2, 1), (2.0, 3, 0), (-0.5, 1, 0)):
        plus = c_coeff(CCoeffKey(j, k, kappa, 1))
        minus = c_coeff(CCoeffKey(j, k, kappa, -1))
        assert _close(minus, np.conj(plus)), "实 j 时 c_− 为 c_+ 的共轭"


def test_c_coeff_domain():
    with pytest.raises(DomainError):
        CCoeffKey(-1.0, 0, 0, 1)
    with pytest.raises(DomainError):
        CCoeffKey(0.0, 1, 2, 1)
    with pytest.raises(DomainError):
        CCoeffKey(0.0, 0, 0, 0)


def test_fresnel_moments():
    assert _close(fresnel_moment(0, 1.0), np.sqrt(np.pi) * np.exp(0.25j * np.pi))
    # ∫ e^{iδ²/τ}δ² dδ = Γ(3/2)(iτ)^{3/2}
    tau = 0.3
    expected = 0.5 * np.sqrt(np.pi) * tau ** 1.5 * np.exp(0.75j * np.pi)
    assert _close(fresnel_moment(1, tau), expected)
    assert fresnel_power_moment(3, tau) == 0, "奇次矩为 0"
    assert _close(fresnel_power_moment(2, tau), fresnel_moment(1, tau))
    with pytest.raises(DomainError):
        fresnel_moment(0, 0.0)


def test_stationary_moment():
    t = 4.0
    assert _close(stationary_moment(0, t), np.sqrt(np.pi / t) * np.exp(0.25j * np.pi))
    assert stationary_moment(1, t) == 0
    # 与 mpmath 沿旋转射线积分对照
    expected = complex(mpmath.quad(lambda u: mpmath.exp(1j * t * (u * mpmath.exp(1j * mpmath.pi / 4)) ** 2)
                                   * (u * mpmath.exp(1j * mpmath.pi / 4)) ** 2, [-mpmath.inf, mpmath.inf])
                       * mpmath.exp(1j * mpmath.pi / 4))
    assert _close(stationary_moment(2, t), expected, rel=1e-10), "二阶驻相矩与 mpmath 不一致"


def run_all_tests():
    """运行所有测试"""
    print("🚀 开始测试特殊函数...")
    print("=" * 60)
    tests = [
        test_gamma_values,
        test_gamma_poles,
        test_gamma_derivatives_at_one,
        test_gamma_derivatives_against_mpmath,
        test_gamma_derivative_order_cap,
        test_polygamma_against_mpmath,
        test_polygamma_left_half_plane,
        test_branch_policy,
        test_c_coeff_examples,
        test_c_coeff_diagonal_closed_form,
        test_c_coeff_conjugate_symmetry,
        test_c_coeff_domain,
        test_fresnel_moments,
        test_stationary_moment,
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
