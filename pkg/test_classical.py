#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
頻閃古典軌跡測試
"""

import math
import os
import sys

import numpy as np
import pytest

# 添加項目路徑
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from floquet_core.classical import (
    GrowthModel,
    PhaseState,
    growth_fit,
    propagate_stroboscopic,
    rotation,
    stroboscopic_trajectory,
    symplectic_map,
)
from floquet_core.errors import InsufficientData, InvalidArgument, OverflowRisk
from floquet_core.hill import classify, integrate_fundamental, monodromy
from floquet_core.models import ConstantProfile, FieldSpec, PulsedProfile, omega_integral


def field_setup(spec):
    mono = monodromy(integrate_fundamental(spec))
    return mono, omega_integral(spec, spec.period)


def zero_field():
    return FieldSpec(period=1.0, mass=1.0, charge=1.0, profile=ConstantProfile(B0=0.0))


def elliptic_field():
    return FieldSpec(period=2.0, mass=1.0, charge=1.0, profile=ConstantProfile(B0=2.0))


def pulsed_field():
    return FieldSpec(
        period=7 * math.pi / 4, mass=1.0, charge=1.0,
        profile=PulsedProfile(B0=2.0, T0=3 * math.pi / 4),
    )


def gentle_field():
    return FieldSpec(
        period=3.3455, mass=1.0, charge=1.0,
        profile=PulsedProfile(B0=2.0, T0=2.9429, onset=1.87405),
    )


def norms_of(mono, Omega_T, state, N0, N1):
    return [propagate_stroboscopic(mono, Omega_T, state, n).norm_x for n in range(N0, N1 + 1)]


def test_rotation():
    assert np.array_equal(rotation(0.0), np.eye(2))
    assert np.allclose(rotation(math.pi / 2), [[0.0, 1.0], [-1.0, 0.0]], atol=1e-16)
    rng = np.random.default_rng(3)
    for a, b in rng.uniform(-10, 10, size=(20, 2)):
        assert np.allclose(rotation(a) @ rotation(b), rotation(a + b), atol=1e-12)
        assert np.linalg.det(rotation(a)) == pytest.approx(1.0, abs=1e-14)
    print("✅ 旋轉矩陣群律")


def test_zero_field_free_flight():
    mono, Omega_T = field_setup(zero_field())
    rest = PhaseState((1.0, 0.0), (0.0, 0.0))
    assert propagate_stroboscopic(mono, Omega_T, rest, 0) is rest
    moved = propagate_stroboscopic(mono, Omega_T, rest, 3)
    assert moved.x == pytest.approx((1.0, 0.0), abs=1e-14)

    flying = PhaseState((0.0, 0.0), (1.0, 0.0))
    out = propagate_stroboscopic(mono, Omega_T, flying, 4)
    assert out.x == pytest.approx((4.0, 0.0), abs=1e-13)
    assert out.p == pytest.approx((1.0, 0.0), abs=1e-13)
    print("✅ 零場自由飛行 x = pt/m")


def test_trajectory_starts_at_initial_state():
    mono, Omega_T = field_setup(pulsed_field())
    state = PhaseState((0.3, -0.2), (0.1, 0.4))
    path = stroboscopic_trajectory(mono, Omega_T, state, 6)
    assert len(path) == 7
    assert path[0] == state
    assert path[6].x == pytest.approx(propagate_stroboscopic(mono, Omega_T, state, 6).x)
    print("✅ 軌跡長度與起點")


def test_symplectic_volume():
    for spec in (zero_field(), elliptic_field()):
        mono, Omega_T = field_setup(spec)
        for N in range(21):
            assert abs(np.linalg.det(symplectic_map(mono, Omega_T, N)) - 1.0) <= 1e-9
    mono, Omega_T = field_setup(gentle_field())
    for N in range(21):
        S = symplectic_map(mono, Omega_T, N)
        scale = max(1.0, float(np.max(np.abs(S)))) ** 4
        assert abs(np.linalg.det(S) - 1.0) <= 1e-12 * scale
    print("✅ 頻閃映射保體積")


def test_growth_fit_linear_for_zero_field():
    mono, Omega_T = field_setup(zero_field())
    state = PhaseState((0.0, 0.0), (1.0, 0.0))
    fit = growth_fit(norms_of(mono, Omega_T, state, 1, 20), N0=1)
    assert fit.model is GrowthModel.LINEAR
    assert fit.slope == pytest.approx(1.0, abs=1e-9)
    assert abs(fit.quadratic_coefficient) <= 1e-9
    print("✅ 零場線性成長")


def test_growth_fit_exponential_for_pulsed_field():
    mono, Omega_T = field_setup(pulsed_field())
    lam = classify(mono).floquet_exponent
    state = PhaseState((1.0, 0.0), (0.0, 0.0))
    fit = growth_fit(norms_of(mono, Omega_T, state, 5, 20), N0=5)
    assert fit.model is GrowthModel.EXPONENTIAL
    assert fit.rate == pytest.approx(lam, rel=0.02)
    print(f"✅ 脈衝場指數成長 rate={fit.rate:.4f}")


def test_growth_rate_for_random_states():
    mono, Omega_T = field_setup(pulsed_field())
    lam = classify(mono).floquet_exponent
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 10:
        x, p = rng.normal(size=2), rng.normal(size=2)
        norms = norms_of(mono, Omega_T, PhaseState(tuple(x), tuple(p)), 5, 20)
        # 收縮方向上的狀態不成長
        if norms[-1] < norms[0]:
            continue
        fit = growth_fit(norms, N0=5)
        assert fit.model is GrowthModel.EXPONENTIAL
        assert fit.rate == pytest.approx(lam, rel=0.02)
        checked += 1
    print("✅ 隨機狀態成長率等於 λ")


def test_growth_fit_bounded_for_elliptic_field():
    mono, Omega_T = field_setup(elliptic_field())
    state = PhaseState((1.0, 0.0), (0.0, 0.5))
    fit = growth_fit(norms_of(mono, Omega_T, state, 0, 50))
    assert fit.model is GrowthModel.BOUNDED
    assert fit.rate is None and fit.slope is None
    print("✅ 橢圓型有界")


def test_growth_fit_preconditions():
    with pytest.raises(InsufficientData):
        growth_fit([1.0, 2.0, 3.0, 4.0, 5.0])
    with pytest.raises(InvalidArgument):
        growth_fit([1.0] * 8 + [0.0])
    with pytest.raises(InvalidArgument):
        PhaseState((1.0, math.nan), (0.0, 0.0))
    mono, Omega_T = field_setup(pulsed_field())
    state = PhaseState((1.0, 0.0), (0.0, 0.0))
    with pytest.raises(OverflowRisk):
        propagate_stroboscopic(mono, Omega_T, state, 30)
    with pytest.raises(InvalidArgument):
        propagate_stroboscopic(mono, Omega_T, state, 65)
    print("✅ 前置條件檢查")


def main():
    """主測試函數"""
    print("🪐 開始頻閃古典軌跡測試...")
    print("=" * 60)

    tests = [
        ("旋轉矩陣", test_rotation),
        ("自由飛行", test_zero_field_free_flight),
        ("軌跡", test_trajectory_starts_at_initial_state),
        ("保體積", test_symplectic_volume),
        ("線性成長", test_growth_fit_linear_for_zero_field),
        ("指數成長", test_growth_fit_exponential_for_pulsed_field),
        ("隨機狀態", test_growth_rate_for_random_states),
        ("有界", test_growth_fit_bounded_for_elliptic_field),
        ("前置條件", test_growth_fit_preconditions),
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
