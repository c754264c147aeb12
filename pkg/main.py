# main.py
"""
振荡积分渐近分析工具 - 命令行入口

I±[φ](t,r) = 2∫₀^∞ e^{iσ²t ± iσr} φ(σ,r) σ dσ 在各个大时间/大半径区域的渐近展开，
以及与独立数值预言机的交叉验证：
1. coeffs / fourier - 半直线 Fourier 变换系数
2. quad / chart     - 振荡积分预言机与紧化坐标
3. expand           - 各区域的展开预测
4. scan / validate  - 数值实验扫描与验收检查
"""

import argparse
import json
import os
import sys

# 添加项目路径
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.append(current_dir)

from asymptotic_analysis.expansion_manager import FACES, ExpansionManager
from fourier_analysis.halfline_fourier import HalflineTransformRequest, epsilon_oracle, monomial_transform
from fourier_analysis.oscillatory_quadrature import OscIntegrand, difference_integral, quad_contour, quad_panels
from geometry_analysis.compactification import chart, classify
from numerical_experiments.experiment_manager import ExperimentManager
from numerical_experiments.scan_output import SCENARIOS, ScanSpec, emit_csv
from series_analysis.index_sets import format_index_set, parse_index_set, theorem_d_index_sets
from series_analysis.phg_series import series_to_frame
from series_analysis.profiles import PROFILE_FACTORIES, get_profile
from series_analysis.special_functions import CCoeffKey, c_coeff
from utils.config import FIG_NUMERIC_CONFIG, QUADRATURE_CONFIG
from utils.errors import OscillatoryAnalysisError


def _sign(text: str) -> int:
    if text not in ("+", "-"):
        raise argparse.ArgumentTypeError(f"sign 必须为 + 或 -：{text}")
    return 1 if text == "+" else -1


def _complex_text(value: complex) -> str:
    return f"{value.real:.15g},{value.imag:.15g}"


def cmd_coeffs(args) -> int:
    value = c_coeff(CCoeffKey(args.j, args.k, args.kappa, _sign(args.sign)))
    print(_complex_text(value))
    return 0


def cmd_fourier(args) -> int:
    formula = monomial_transform(HalflineTransformRequest(args.j, args.k, args.tau))
    print(f"formula: {_complex_text(formula)}")
    if args.oracle:
        oracle = epsilon_oracle(args.j, args.k, args.tau)
        print(f"oracle: {_complex_text(oracle)}")
        print(f"rel_diff: {abs(formula - oracle) / abs(oracle):.3e}")
    return 0


def cmd_quad(args) -> int:
    profile = get_profile(args.integrand)
    if args.sign == "diff":
        result = difference_integral(OscIntegrand(profile, 1), args.t, args.r, args.tol, args.method)
    else:
        ig = OscIntegrand(profile, _sign(args.sign))
        method = args.method or ("contour" if ig.analytic_in_sector and args.t > 0 else "panels")
        quad = quad_contour if method == "contour" else quad_panels
        result = quad(ig, args.t, args.r, args.tol)
    print(f"{_complex_text(result.value)},{result.err_estimate:.3e},{result.evaluations}")
    return 0


def cmd_chart(args) -> int:
    point = chart(args.t, args.r)
    record = point.to_dict()
    record["regime"] = classify(point, args.threshold).value
    print(json.dumps(record, ensure_ascii=False))
    return 0


def cmd_expand(args) -> int:
    manager = ExpansionManager(args.profile, _sign(args.sign), args.order, args.tol)
    if args.indexset:
        E = parse_index_set(args.indexset)
        for face, index_set in theorem_d_index_sets(E, parse_index_set(args.fset)).items():
            print(f"📊 {face}: {format_index_set(index_set)}")
    if args.dump:
        emit_csv(series_to_frame(manager.profile.sigma_expansion, params=args.r), args.dump)
        print(f"✅ σ 展开已写出到 {args.dump}")
    return 0 if manager.run_expansion(args.face, args.t, args.r, args.compare) else 1


def cmd_scan(args) -> int:
    scenario = args.scenario.replace("-", "_")
    ray_kind, ray_coeff = ScanSpec.parse_ray(args.ray)
    spec = ScanSpec(scenario, args.tmin, args.tmax, args.points, args.spacing, ray_kind, ray_coeff,
                    args.out)
    manager = ExperimentManager(show_progress=not args.quiet)
    return 0 if manager.run_scan(spec) else 1


def cmd_validate(args) -> int:
    manager = ExperimentManager(show_progress=not args.quiet)
    passed = manager.run_validation(args.only)
    if args.out:
        manager.save_validation(args.out)
    if passed:
        print("\n🎉 全部验收检查通过！")
    else:
        print("\n❌ 部分验收检查未通过")
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="振荡积分渐近分析工具")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="展开系数 c_{j,k,κ;±}")
    p.add_argument("--j", type=complex, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--sign", default="+")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("fourier", help="F(Θξ^j log^k ξ)(τ) 闭式值")
    p.add_argument("--j", type=complex, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--oracle", action="store_true", help="同时计算 ε 正则化预言机")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("quad", help="数值计算 I±[φ](t, r)")
    p.add_argument("--integrand", choices=sorted(PROFILE_FACTORIES), default="example")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--sign", choices=("+", "-", "diff"), default="+")
    p.add_argument("--tol", type=float, default=QUADRATURE_CONFIG["DEFAULT_TOL"])
    p.add_argument("--method", choices=("panels", "contour"))
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("chart", help="紧化坐标、bdf 与区域标签")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--threshold", type=float, default=0.05)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("expand", help="区域展开预测")
    p.add_argument("--face", choices=FACES, required=True)
    p.add_argument("--profile", choices=sorted(PROFILE_FACTORIES), default="gaussian")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--order", type=float, default=2.0)
    p.add_argument("--sign", default="+")
    p.add_argument("--tol", type=float, default=QUADRATURE_CONFIG["DEFAULT_TOL"])
    p.add_argument("--compare", action="store_true", help="与数值预言机比较")
    p.add_argument("--indexset", help="零能面指标集 ℰ，如 '0:0,2:1'")
    p.add_argument("--fset", default="0:0", help="bf 面指标集 ℱ")
    p.add_argument("--dump", help="把 σ 展开写成 CSV")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("scan", help="数值实验扫描")
    p.add_argument("--scenario", choices=[s.replace("_", "-") for s in SCENARIOS] + list(SCENARIOS),
                   required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tmin", type=float, default=FIG_NUMERIC_CONFIG["T_MIN"])
    p.add_argument("--tmax", type=float, default=FIG_NUMERIC_CONFIG["T_MAX"])
    p.add_argument("--points", type=int, default=FIG_NUMERIC_CONFIG["POINTS"])
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--ray", default="2*t")
    p.add_argument("--quiet", action="store_true", help="不显示进度条")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("validate", help="运行全部验收检查")
    p.add_argument("--only", type=int, nargs="*", help="只运行指定编号的检查")
    p.add_argument("--out", help="验收结果 CSV")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    """主函数"""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as e:
        print(f"❌ 参数错误：{e}")
        return 2
    except (OscillatoryAnalysisError, ValueError, OSError) as e:
        print(f"❌ {args.command} 失败：{e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
