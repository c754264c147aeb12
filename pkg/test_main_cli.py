#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试命令行入口：各子命令的输出格式与退出码
"""

import contextlib
import io
import json
import os
import sys
import tempfile

import numpy as np
import pandas as pd
import pytest

# 添加项目路径
current_dir = os.path.dirname(os.path.abspath(__file__))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

from main import main


def _run(argv):
    """运行 main(argv)，返回 (退出码, 标准输出)"""
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = main(argv)
    return code, buffer.getvalue()


def _last_complex(text):
    re_part, im_part = text.strip().splitlines()[-1].split(":")[-1].split(",")[:2]
    return complex(float(re_part), float(im_part))


def test_coeffs():
    code, out = _run(["coeffs", "--j", "0", "--k", "0", "--kappa", "0"])
    assert code == 0
    assert abs(_last_complex(out) - 1j) < 1e-15, "c_{0,0,0;+} = i"
    code, out = _run(["coeffs", "--j", "1", "--k", "0", "--kappa", "0", "--sign", "-"])
    assert code == 0 and abs(_last_complex(out) + 1.0) < 1e-14, "c_{1,0,0;−} = (−i)²Γ(2) = −1"


def test_coeffs_errors():
    code, out = _run(["coeffs", "--j", "0", "--k", "0", "--kappa", "0", "--sign", "x"])
    assert code == 2 and "❌" in out
    code, _ = _run(["coeffs", "--j", "-1", "--k", "0", "--kappa", "0"])
    assert code == 1, "j = −1 不在定义域内"


def test_fourier():
    code, out = _run(["fourier", "--j", "0", "--k", "0", "--tau", "2"])
    assert code == 0 and out.startswith("formula: ")
    assert abs(_last_complex(out) - 0.5j) < 1e-15
    code, out = _run(["fourier", "--j", "0.5", "--k", "1", "--tau", "-5", "--oracle"])
    assert code == 0
    rel = float(out.strip().splitlines()[-1].split(":")[-1])
    assert rel < 1e-6


def test_quad():
    code, out = _run(["quad", "--integrand", "gaussian", "--t", "1", "--r", "0"])
    assert code == 0
    fields = out.strip().split(",")
    assert len(fields) == 4, "输出格式 re,im,err,evals"
    value = complex(float(fields[0]), float(fields[1]))
    assert abs(value - 1.0 / (1.0 - 1j)) < 1e-9
    assert float(fields[2]) >= 0.0 and int(fields[3]) > 0

    code, out = _run(["quad", "--integrand", "gaussian", "--t", "1", "--r", "0", "--sign", "diff"])
    assert code == 0 and abs(float(out.split(",")[0])) < 1e-9


def test_quad_errors():
    code, _ = _run(["quad", "--integrand", "bump", "--t", "1", "--r", "1", "--method", "contour"])
    assert code == 1, "不可解析延拓的被积函数不能用围道法"
    code, _ = _run(["quad", "--integrand", "gaussian", "--t", "-1", "--r", "1"])
    assert code == 1


def test_chart():
    code, out = _run(["chart", "--t", "1000", "--r", "1"])
    assert code == 0
    record = json.loads(out)
    assert record["regime"] == "kf"
    assert abs(record["bdf_kf"] - 1.0 / 1001.0) < 1e-15
    code, _ = _run(["chart", "--t", "1", "--r", "0.5"])
    assert code == 1


def test_expand():
    code, out = _run(["expand", "--face", "kf", "--profile", "gaussian", "--t", "1000", "--r", "1",
                      "--compare", "--indexset", "0:0,2:0"])
    assert code == 0
    assert "kf:" in out and "预言机" in out
    code, _ = _run(["expand", "--face", "corner", "--profile", "gaussian", "--t", "100", "--r", "2"])
    assert code == 1, "没有角区展开的被积函数应失败"


def test_expand_dump():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "sigma.csv")
        code, _ = _run(["expand", "--face", "kf", "--t", "1000", "--r", "1", "--dump", path])
        assert code == 0
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["re_j", "im_j", "k", "re_coeff", "im_coeff"]
        assert np.allclose(frame["re_j"], 2.0 * np.arange(len(frame)))


def test_scan():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "bound.csv")
        code, _ = _run(["scan", "--scenario", "bound-state", "--out", path, "--tmin", "1", "--tmax", "50",
                        "--points", "12", "--ray", "3*sqrt(t)", "--quiet"])
        assert code == 0
        frame = pd.read_csv(path)
        assert len(frame) == 12
        assert np.allclose(frame["r"], 3.0 * np.sqrt(frame["t"]))

        code, _ = _run(["scan", "--scenario", "bound_state", "--out", path, "--ray", "t^2", "--quiet"])
        assert code == 1, "无法解析的射线"


def test_validate_subset():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "validation.csv")
        code, out = _run(["validate", "--only", "5", "10", "11", "--out", path, "--quiet"])
        assert code == 0 and "🎉" in out
        frame = pd.read_csv(path)
        assert list(frame["id"]) == [5, 10, 11] and frame["passed"].all()


def test_missing_arguments():
    with pytest.raises(SystemExit):
        main(["quad", "--t", "1"])
    with pytest.raises(SystemExit):
        main([])


def run_all_tests():
    """运行所有测试"""
    print("🚀 开始测试命令行入口...")
    print("=" * 60)
    tests = [
        test_coeffs,
        test_coeffs_errors,
        test_fourier,
        test_quad,
        test_quad_errors,
        test_chart,
        test_expand,
        test_expand_dump,
        test_scan,
        test_validate_subset,
        test_missing_arguments,
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
