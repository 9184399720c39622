#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hill 方程測試
基本解、單值矩陣、穩定性分類、週期延拓、零點與比值單調性
"""

import math
import os
import sys

import numpy as np
import pytest
from scipy.integrate import solve_ivp

# 添加項目路徑
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from floquet_core.errors import InvalidArgument, IntervalContainsZero, OverflowRisk, StepTooCoarse
from floquet_core.hill import (
    Regime,
    classify,
    evaluate_zeta,
    extension_coefficients,
    find_zeros,
    integrate_fundamental,
    monodromy,
    ratio_monotonicity_check,
)
from floquet_core.models import (
    ConstantProfile,
    FieldSpec,
    PulsedProfile,
    SampledProfile,
    SinusoidalProfile,
    evaluate_field,
)

PULSED_T0 = 3 * math.pi / 4
PULSED_T = 7 * math.pi / 4


def constant_field(B0=2.0, period=math.pi):
    return FieldSpec(period=period, mass=1.0, charge=1.0, profile=ConstantProfile(B0=B0))


def pulsed_field():
    return FieldSpec(period=PULSED_T, mass=1.0, charge=1.0, profile=PulsedProfile(B0=2.0, T0=PULSED_T0))


def gentle_field():
    """弱雙曲的對稱脈衝場（λ ≈ 0.2）"""
    return FieldSpec(
        period=3.3455, mass=1.0, charge=1.0,
        profile=PulsedProfile(B0=2.0, T0=2.9429, onset=1.87405),
    )


def sinusoidal_field():
    return FieldSpec(period=2 * math.pi, mass=1.0, charge=1.0, profile=SinusoidalProfile(Bdc=1.0, Bac=0.5))


def sampled_field():
    prof = SampledProfile(times=(0.0, 1.0, 2.0, 3.0, 4.0), values=(1.0, 2.0, 0.0, 3.0, 1.0))
    return FieldSpec(period=4.0, mass=1.0, charge=1.0, profile=prof)


def pulsed_oracle():
    """[[1, π], [0, 1]]·R(3π/4)"""
    c, s = math.cos(PULSED_T0), math.sin(PULSED_T0)
    free = np.array([[1.0, math.pi], [0.0, 1.0]])
    on = np.array([[c, s], [-s, c]])
    return free @ on


def build(spec, **kwargs):
    pair = integrate_fundamental(spec, **kwargs)
    return pair, monodromy(pair)


def test_zero_field_fundamental_pair():
    pair, mono = build(constant_field(B0=0.0, period=1.0))
    assert np.allclose(pair.zeta1, 1.0, atol=1e-15)
    assert np.allclose(pair.zeta2, pair.times, atol=1e-15)
    assert np.allclose(mono.phi_T, [[1.0, 1.0], [0.0, 1.0]], atol=1e-15)
    print("✅ 零場基本解 ζ₁=1, ζ₂=t")


def test_constant_field_fundamental_pair():
    pair, mono = build(constant_field())
    assert np.max(np.abs(pair.zeta1 - np.cos(pair.times))) <= 1e-8
    assert np.max(np.abs(pair.zeta2 - np.sin(pair.times))) <= 1e-8
    assert np.allclose(mono.phi_T, -np.eye(2), atol=1e-12)

    rk_pair, rk_mono = build(constant_field(), method="rk4")
    assert rk_pair.method == "rk4"
    assert np.max(np.abs(rk_pair.zeta2 - np.sin(rk_pair.times))) <= 1e-8
    assert np.allclose(rk_mono.phi_T, -np.eye(2), atol=1e-8)
    print("✅ 常數場基本解 cos/sin（精確與 RK4）")


def test_pulsed_monodromy_matches_oracle():
    _, mono = build(pulsed_field())
    oracle = pulsed_oracle()
    assert np.allclose(mono.phi_T, oracle, atol=1e-8)
    assert mono.discriminant == pytest.approx(oracle[0, 0] + oracle[1, 1], abs=1e-10)
    assert mono.discriminant == pytest.approx(-3.635, abs=2e-3)
    assert abs(mono.det - 1.0) <= 1e-12
    print(f"✅ 脈衝場單值矩陣符合解析積 D={mono.discriminant:.4f}")


def test_wronskian_for_every_profile():
    for spec in (constant_field(), pulsed_field(), sinusoidal_field(), sampled_field()):
        pair, mono = build(spec)
        assert pair.wronskian_drift() <= 1e-9
        assert abs(mono.det - 1.0) <= 1e-9
        ev = np.linalg.eigvals(mono.phi_T)
        assert abs(ev[0] * ev[1] - 1.0) <= 1e-8
    print("✅ Wronskian 恆等式對所有剖面成立")


def test_step_too_coarse():
    with pytest.raises(StepTooCoarse):
        integrate_fundamental(sinusoidal_field(), h=2 * math.pi / 100)
    with pytest.raises(InvalidArgument):
        integrate_fundamental(sinusoidal_field(), method="exact")
    print("✅ 過大步長被拒絕")


def test_classify_examples():
    zero = classify(build(constant_field(B0=0.0, period=1.0))[1])
    assert zero.regime is Regime.PARABOLIC
    assert zero.discriminant == pytest.approx(2.0, abs=1e-15)
    assert zero.floquet_exponent is None

    elliptic = classify(build(constant_field(period=2.0))[1])
    assert elliptic.regime is Regime.ELLIPTIC
    assert elliptic.discriminant == pytest.approx(2 * math.cos(2.0), abs=1e-12)

    hyper = classify(build(pulsed_field())[1])
    D = abs(pulsed_oracle().trace())
    lam = math.log((D + math.sqrt(D * D - 4)) / 2)
    assert hyper.regime is Regime.HYPERBOLIC
    assert hyper.floquet_exponent == pytest.approx(lam, rel=1e-10)
    assert hyper.floquet_exponent == pytest.approx(1.2046, abs=1e-3)
    assert hyper.lambda_tilde == pytest.approx(-lam, rel=1e-10)
    assert hyper.zeta2_T_nonzero
    print(f"✅ 分類正確 λ={hyper.floquet_exponent:.4f}")


def test_classify_parabolic_tolerance():
    _, mono = build(constant_field(period=math.pi))
    assert classify(mono).regime is Regime.PARABOLIC
    _, pulsed = build(pulsed_field())
    assert classify(pulsed).regime is Regime.HYPERBOLIC
    assert classify(pulsed, tol=10.0).regime is Regime.PARABOLIC
    print("✅ 拋物型容許值")


def test_extension_coefficients_basics():
    _, mono = build(pulsed_field())
    assert np.array_equal(extension_coefficients(mono, 0).A, np.eye(2))
    one = extension_coefficients(mono, 1)
    assert one.a1 == mono.phi_T[0, 0]
    assert one.a2 == mono.phi_T[1, 0]
    assert one.a3 == mono.phi_T[0, 1]
    assert one.a4 == mono.phi_T[1, 1]
    product = extension_coefficients(mono, -5).A @ extension_coefficients(mono, 5).A
    assert np.allclose(product, np.eye(2), atol=1e-8)
    print("✅ 延拓係數 N=0, 1, ±5")


def test_extension_reproduces_next_period():
    """以獨立的 DOP853 在 [0, 2T] 上積分作為對照"""
    spec = sinusoidal_field()
    pair, mono = build(spec)
    T = spec.period
    a = lambda t: (spec.charge * evaluate_field(spec, t) / (2 * spec.mass)) ** 2

    def rhs(t, y):
        w = a(t)
        return [y[1], -w * y[0], y[3], -w * y[2]]

    sol = solve_ivp(rhs, (0.0, 2 * T), [1.0, 0.0, 0.0, 1.0], method="DOP853",
                    rtol=1e-12, atol=1e-13, dense_output=True)
    A = extension_coefficients(mono, 1).A
    for t in np.linspace(0.0, T, 16, endpoint=False):
        z1, _, z2, _ = pair.state_at(float(t))
        ref = sol.sol(t + T)
        assert abs(A[0, 0] * z1 + A[0, 1] * z2 - ref[0]) <= 1e-7
        assert abs(A[1, 0] * z1 + A[1, 1] * z2 - ref[2]) <= 1e-7
    print("✅ N=1 延拓符合直接積分")


def test_extension_group_property():
    _, mono = build(gentle_field())
    rng = np.random.default_rng(11)
    for _ in range(50):
        n1, n2 = (int(v) for v in rng.integers(-10, 11, size=2))
        lhs = extension_coefficients(mono, n1).A @ extension_coefficients(mono, n2).A
        rhs = extension_coefficients(mono, n1 + n2).A
        assert np.max(np.abs(lhs - rhs)) <= 1e-8 * max(1.0, np.max(np.abs(rhs)))
    print("✅ 延拓係數群性質")


def test_hyperbolic_growth_consistency():
    _, mono = build(pulsed_field())
    lam = classify(mono).floquet_exponent
    N = np.arange(5, 16)
    a3 = np.array([abs(extension_coefficients(mono, int(n)).a3) for n in N])
    a4 = np.array([abs(extension_coefficients(mono, int(n)).a4) for n in N])
    slope3 = np.polyfit(N, np.log(a3), 1)[0]
    slope4 = np.polyfit(N, np.log(a4), 1)[0]
    assert slope3 == pytest.approx(lam, rel=0.01)
    assert -lam - 0.01 <= slope4 <= lam + 0.01
    # 負 N 同樣以 e^{λ|N|} 成長
    a3_neg = np.array([abs(extension_coefficients(mono, -int(n)).a3) for n in N])
    assert np.polyfit(N, np.log(a3_neg), 1)[0] == pytest.approx(lam, rel=0.01)
    print("✅ |A₃,N| 對數斜率等於 λ")


def test_overflow_risk():
    _, mono = build(pulsed_field())
    with pytest.raises(OverflowRisk):
        extension_coefficients(mono, 30)
    with pytest.raises(OverflowRisk):
        extension_coefficients(build(constant_field(B0=0.0, period=1.0))[1], 65)
    print("✅ 溢位風險被偵測")


def test_evaluate_zeta_examples():
    pair, mono = build(constant_field(B0=0.0, period=1.0))
    assert evaluate_zeta(pair, mono, 2, 7.25) == pytest.approx((7.25, 1.0), abs=1e-12)

    pair, mono = build(constant_field())
    value, deriv = evaluate_zeta(pair, mono, 2, 10.0)
    assert abs(value - math.sin(10.0)) <= 1e-7
    assert abs(deriv - math.cos(10.0)) <= 1e-7

    pair, mono = build(pulsed_field())
    t = 3 * PULSED_T + 0.5
    c, s = math.cos(0.5), math.sin(0.5)
    oracle = np.array([[c, s], [-s, c]]) @ np.linalg.matrix_power(pulsed_oracle(), 3)
    assert evaluate_zeta(pair, mono, 1, t)[0] == pytest.approx(oracle[0, 0], rel=1e-6)
    assert evaluate_zeta(pair, mono, 2, t)[0] == pytest.approx(oracle[0, 1], rel=1e-6)

    with pytest.raises(InvalidArgument):
        evaluate_zeta(pair, mono, 3, 1.0)
    with pytest.raises(InvalidArgument):
        evaluate_zeta(pair, mono, 1, -0.1)
    print("✅ evaluate_zeta 範例正確")


def test_evaluate_zeta_continuous_across_seams():
    spec = sinusoidal_field()
    pair, mono = build(spec)
    for k in (1, 2, 3):
        seam = k * spec.period
        for j in (1, 2):
            before = evaluate_zeta(pair, mono, j, seam * (1 - 1e-14))[0]
            after = evaluate_zeta(pair, mono, j, seam)[0]
            assert abs(before - after) <= 1e-8 * max(1.0, abs(after))
    print("✅ 週期接縫連續")


def test_find_zeros_examples():
    zero = find_zeros(build(constant_field(B0=0.0, period=1.0))[0], 2)
    assert np.array_equal(zero.zeros, [0.0])
    assert zero.derivative_at_zero[0] == pytest.approx(1.0)

    sine = find_zeros(build(constant_field(period=7.0))[0], 2)
    assert np.allclose(sine.zeros, [0.0, math.pi, 2 * math.pi], atol=1e-11)
    assert np.allclose(sine.derivative_at_zero, [1.0, -1.0, 1.0], atol=1e-10)

    pair, _ = build(pulsed_field())
    z1 = find_zeros(pair, 1)
    assert np.allclose(z1.zeros, [math.pi / 2], atol=1e-11)
    assert z1.derivative_at_zero[0] == pytest.approx(-1.0, abs=1e-10)
    z2 = find_zeros(pair, 2)
    assert np.allclose(z2.zeros, [0.0, PULSED_T0 + 1.0], atol=1e-11)
    print("✅ 零點定位正確")


def test_zeros_are_simple():
    """零點處 |ζⱼ′| ≥ 1/max|ζ_{3−j}|"""
    for spec in (pulsed_field(), sinusoidal_field(), constant_field(period=7.0)):
        pair, _ = build(spec)
        for j in (1, 2):
            other = pair.zeta2 if j == 1 else pair.zeta1
            floor = (1.0 - 1e-6) / float(np.max(np.abs(other)))
            zs = find_zeros(pair, j)
            assert np.all(np.abs(zs.derivative_at_zero) >= floor)
    print("✅ 零點皆為簡單零點")


def test_ratio_monotonicity():
    pair, _ = build(constant_field(period=7.0))
    report = ratio_monotonicity_check(pair, (0.2, 1.2))
    assert report.observed_sign == -1
    assert report.expected_sign == -1
    assert report.strictly_monotone
    assert not report.agrees_with_stated_orientation
    assert report.identity_residual <= 1e-6
    expected = -1.0 / math.sin(0.2 + 1.0 / 101) ** 2
    assert report.min_slope == pytest.approx(expected, rel=1e-5)

    free, _ = build(constant_field(B0=0.0, period=1.0))
    rising = ratio_monotonicity_check(free, (0.1, 0.9), ratio="zeta2_over_zeta1")
    assert rising.observed_sign == 1
    assert rising.min_slope == pytest.approx(1.0, abs=1e-6)
    falling = ratio_monotonicity_check(free, (0.1, 0.9))
    assert falling.observed_sign == -1
    assert falling.identity_residual <= 1e-6
    print("✅ 比值單調性與 Wronskian 恆等式")


def test_ratio_interval_contains_zero():
    pair, _ = build(constant_field(period=7.0))
    with pytest.raises(IntervalContainsZero):
        ratio_monotonicity_check(pair, (3.0, 3.3))
    print("✅ 含零點區間被拒絕")


def main():
    """主測試函數"""
    print("📈 開始 Hill 方程測試...")
    print("=" * 60)

    tests = [
        ("零場基本解", test_zero_field_fundamental_pair),
        ("常數場基本解", test_constant_field_fundamental_pair),
        ("脈衝單值矩陣", test_pulsed_monodromy_matches_oracle),
        ("Wronskian", test_wronskian_for_every_profile),
        ("步長檢查", test_step_too_coarse),
        ("穩定性分類", test_classify_examples),
        ("拋物容許值", test_classify_parabolic_tolerance),
        ("延拓係數", test_extension_coefficients_basics),
        ("延拓對照", test_extension_reproduces_next_period),
        ("群性質", test_extension_group_property),
        ("雙曲成長", test_hyperbolic_growth_consistency),
        ("溢位風險", test_overflow_risk),
        ("ζ 取值", test_evaluate_zeta_examples),
        ("接縫連續", test_evaluate_zeta_continuous_across_seams),
        ("零點", test_find_zeros_examples),
        ("簡單零點", test_zeros_are_simple),
        ("比值單調", test_ratio_monotonicity),
        ("含零區間", test_ratio_interval_contains_zero),
    ]

    results = []
    for name, test in tests:
        try:
            test()
            results.append((name, True))
        except Exception as e:
            print(f"❌ {name} 失敗: {e}")
            results.append((name, False))

    print("\n" + "=" * 60)
    print("📊 測試結果總結:")
    print("=" * 60)
    passed = sum(1 for _, ok in results if ok)
    for name, ok in results:
        print(f"{name:15} : {'✅ 通過' if ok else '❌ 失敗'}")
    print("=" * 60)
    print(f"總計: {passed}/{len(results)} 測試通過")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
