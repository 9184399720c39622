#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
量子傳播與色散估計測試
Γ(τ,s)、Mehler 傳播子、Strang 對照、色散比值與二階矩
"""

import math
import os
import sys

import numpy as np
import pytest

# 添加項目路徑
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from floquet_core.errors import (
    AliasingRisk,
    CausticProximity,
    ConfigError,
    DivergentWeight,
    InvalidArgument,
)
from floquet_core.hill import classify, evaluate_zeta, integrate_fundamental, monodromy
from floquet_core.models import (
    ConstantProfile,
    FieldSpec,
    PotentialSpec,
    PulsedProfile,
    omega_integral,
)
from floquet_core.quantum import (
    GridSpec,
    WaveFunction,
    chirp_factorization,
    dispersive_ratio,
    escaped_mass_fraction,
    gamma,
    gaussian,
    lab_frame_strang,
    load_wavefunction,
    lq_dispersive_ratio,
    mehler_propagate,
    rotate_wavefunction,
    save_wavefunction,
    second_moment,
    strang_oracle,
    weighted_norm_ratio,
)

PULSED_T = 7 * math.pi / 4


def zero_field():
    return FieldSpec(period=1.0, mass=1.0, charge=1.0, profile=ConstantProfile(B0=0.0))


def constant_field(period=math.pi):
    return FieldSpec(period=period, mass=1.0, charge=1.0, profile=ConstantProfile(B0=2.0))


def pulsed_field():
    return FieldSpec(period=PULSED_T, mass=1.0, charge=1.0, profile=PulsedProfile(B0=2.0, T0=3 * math.pi / 4))


def setup(spec):
    pair = integrate_fundamental(spec)
    return pair, monodromy(pair)


def free_gaussian(grid, t):
    """零場下 π^(−1/2)e^(−|x|²/2) 的精確演化"""
    x1, x2 = grid.mesh()
    z = 1.0 + 1j * t
    return np.exp(-(x1 ** 2 + x2 ** 2) / (2.0 * z)) / (math.sqrt(math.pi) * z)


def test_grid_and_gaussian_norm():
    with pytest.raises(InvalidArgument):
        GridSpec(100, 10.0)
    with pytest.raises(InvalidArgument):
        GridSpec(256, 0.0)
    grid = GridSpec(256, 10.0)
    psi = gaussian(grid)
    assert psi.l2_norm == pytest.approx(1.0, abs=1e-6)
    assert psi.l1_norm == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-6)
    assert psi.sup_norm == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-12)
    with pytest.raises(InvalidArgument):
        WaveFunction(grid, np.full((256, 256), np.nan))
    print("✅ 網格與高斯態範數")


def test_wavefunction_snapshot(tmp_path):
    grid = GridSpec(128, 8.0)
    psi = gaussian(grid, width=1.3, center=(0.5, -1.0), momentum=(1.0, 0.0))
    path = tmp_path / "psi.bin"
    save_wavefunction(path, psi)
    assert path.stat().st_size == 16 + 128 * 128 * 16
    loaded = load_wavefunction(path)
    assert loaded.grid == grid
    assert np.array_equal(loaded.amplitudes, psi.amplitudes)
    path.write_bytes(path.read_bytes()[:100])
    with pytest.raises(ConfigError):
        load_wavefunction(path)
    print("✅ 波函數二進位快照")


def test_gamma_examples():
    pair, mono = setup(zero_field())
    assert gamma(pair, mono, 3.5, 1.25) == pytest.approx(2.25, abs=1e-12)
    rng = np.random.default_rng(5)
    for s in rng.uniform(0.0, 5.0, 20):
        assert gamma(pair, mono, float(s), float(s)) == 0.0

    pair, mono = setup(constant_field())
    for tau, s in rng.uniform(0.0, 10.0, size=(20, 2)):
        assert abs(gamma(pair, mono, float(tau), float(s)) - abs(math.sin(tau - s))) <= 1e-7
    with pytest.raises(InvalidArgument):
        gamma(pair, mono, -1.0, 0.0)
    print("✅ Γ(τ,s) 範例")


def test_mehler_identity_and_caustic():
    pair, mono = setup(constant_field())
    psi = gaussian(GridSpec(128, 10.0), center=(1.0, 0.0))
    same = mehler_propagate(pair, mono, 0.7, 0.7, psi)
    assert same.distance(psi) <= 1e-10
    with pytest.raises(CausticProximity):
        mehler_propagate(pair, mono, math.pi + 0.3, 0.3, psi)
    print("✅ τ=s 為恆等、焦散被拒絕")


def test_mehler_free_gaussian():
    pair, mono = setup(zero_field())
    grid = GridSpec(256, 20.0)
    psi = gaussian(grid)
    for t in (1.0, 2.0):
        out = mehler_propagate(pair, mono, t, 0.0, psi)
        assert out.sup_norm == pytest.approx(1.0 / math.sqrt(math.pi * (1 + t * t)), abs=1e-4)
        assert np.max(np.abs(out.amplitudes - free_gaussian(grid, t))) <= 1e-6
        assert out.l2_norm == pytest.approx(psi.l2_norm, abs=1e-6)
    print("✅ Mehler 自由高斯解析解")


def test_mehler_group_law():
    grid = GridSpec(256, 20.0)
    for spec, (tau, theta, s) in (
        (constant_field(), (1.7, 0.9, 0.2)),
        (pulsed_field(), (PULSED_T, 2.0, 0.0)),
    ):
        pair, mono = setup(spec)
        psi = gaussian(grid, center=(1.0, 0.0), momentum=(0.0, 0.5))
        two_step = mehler_propagate(pair, mono, tau, theta, mehler_propagate(pair, mono, theta, s, psi))
        direct = mehler_propagate(pair, mono, tau, s, psi)
        assert two_step.distance(direct) <= 1e-5
    print("✅ 傳播子群律")


def test_mehler_matches_strang_oracle():
    spec = pulsed_field()
    pair, mono = setup(spec)
    grid = GridSpec(256, 20.0)
    psi = gaussian(grid)
    mehler = mehler_propagate(pair, mono, PULSED_T, 0.0, psi)
    strang = strang_oracle(spec, None, 0.0, PULSED_T, PULSED_T / 4096, psi)
    assert mehler.distance(strang) <= 1e-5
    assert abs(strang.l2_norm - psi.l2_norm) <= 1e-8
    print("✅ Mehler 與 Strang 對照一致")


def test_strang_free_closed_form():
    grid = GridSpec(256, 20.0)
    out = strang_oracle(zero_field(), None, 0.0, 1.0, 1.0 / 256, gaussian(grid))
    assert np.max(np.abs(out.amplitudes - free_gaussian(grid, 1.0))) <= 1e-6
    with pytest.raises(InvalidArgument):
        strang_oracle(zero_field(), None, 0.0, 1.0, 0.01, gaussian(grid))
    print("✅ Strang 零場解析解")


def test_strang_second_order():
    spec = constant_field()
    psi = gaussian(GridSpec(128, 12.0), center=(2.0, 0.0))
    h = 1.0 / 256
    runs = [strang_oracle(spec, None, 0.0, 1.0, h / 2 ** k, psi) for k in range(3)]
    coarse = runs[0].distance(runs[1])
    fine = runs[1].distance(runs[2])
    assert 2.67 <= coarse / fine <= 6.0
    print(f"✅ Strang 二階收斂 ratio={coarse / fine:.2f}")


def test_lab_frame_is_rotated_rotating_frame():
    spec = constant_field()
    grid = GridSpec(256, 16.0)
    psi = gaussian(grid, center=(2.0, 0.0))
    lab = lab_frame_strang(spec, None, 0.0, 1.0, 1.0 / 256, psi)
    rotating = strang_oracle(spec, None, 0.0, 1.0, 1.0 / 256, psi)
    angle = omega_integral(spec, 1.0) - omega_integral(spec, 0.0)
    assert lab.distance(rotate_wavefunction(rotating, -0.5 * angle)) <= 1e-6
    print("✅ 實驗室座標系等於旋轉後的旋轉座標系")


def test_rotate_wavefunction():
    grid = GridSpec(256, 16.0)
    psi = gaussian(grid, center=(2.0, 0.0))
    turned = rotate_wavefunction(psi, math.pi / 2)
    peak = np.unravel_index(np.argmax(np.abs(turned.amplitudes)), turned.amplitudes.shape)
    assert tuple(int(i) for i in peak) == (128, 144)
    assert turned.l2_norm == pytest.approx(psi.l2_norm, abs=1e-10)
    back = rotate_wavefunction(turned, -math.pi / 2)
    assert back.distance(psi) <= 1e-8
    print("✅ 頻譜剪切旋轉")


def test_dispersive_ratio_zero_field():
    pair, mono = setup(zero_field())
    psi = gaussian(GridSpec(256, 20.0))
    for t in (0.5, 1.0, 2.0, 4.0):
        ratio = dispersive_ratio(pair, mono, t, 0.0, psi)
        expected = t / (2 * math.pi * math.sqrt(1 + t * t))
        assert ratio == pytest.approx(expected, rel=1e-6)
        assert ratio <= 1 / (2 * math.pi)
    scaled = dispersive_ratio(pair, mono, 2.0, 0.0, psi.scaled(3.0 - 2.0j))
    assert abs(scaled - dispersive_ratio(pair, mono, 2.0, 0.0, psi)) <= 1e-12
    print("✅ 零場色散比值符合解析式")


def test_dispersive_ratio_refuses_unresolved_pairs():
    pair, mono = setup(zero_field())
    psi = gaussian(GridSpec(256, 20.0))
    with pytest.raises(CausticProximity):
        dispersive_ratio(pair, mono, 1.0 + 1e-4, 1.0, psi)
    with pytest.raises(AliasingRisk):
        dispersive_ratio(pair, mono, 0.01, 0.0, psi)
    print("✅ 焦散與混疊時間對被拒絕")


def _sweep_max_ratio(pair, mono, n, pairs):
    psi = gaussian(GridSpec(n, 20.0))
    ratios = []
    for tau, s in pairs:
        try:
            ratios.append(dispersive_ratio(pair, mono, tau, s, psi))
        except AliasingRisk:
            continue
    return ratios


def test_dispersive_ratio_grid_stable_for_pulsed_field():
    pair, mono = setup(pulsed_field())
    rng = np.random.default_rng(42)
    pairs = []
    while len(pairs) < 50:
        s, tau = sorted(rng.uniform(0.0, 2 * PULSED_T, 2))
        if gamma(pair, mono, tau, s) < 0.5:
            continue
        factor = chirp_factorization(pair, mono, tau, s)
        if abs(factor.a11 / factor.b) > 2.0:
            continue
        pairs.append((float(tau), float(s)))
    coarse = _sweep_max_ratio(pair, mono, 256, pairs)
    fine = _sweep_max_ratio(pair, mono, 512, pairs)
    assert len(coarse) >= 40 and len(fine) >= 40
    assert max(coarse) <= 1 / (2 * math.pi) + 1e-9
    assert max(fine) <= max(coarse) * 1.1
    assert max(fine) >= max(coarse) * 0.9
    print(f"✅ 脈衝場色散比值網格穩定 max={max(fine):.4f}")


def test_lq_dispersive_ratio_endpoints():
    pair, mono = setup(zero_field())
    psi = gaussian(GridSpec(256, 20.0), center=(0.5, 0.0))
    assert lq_dispersive_ratio(pair, mono, 2.0, 0.0, psi, 2.0) == pytest.approx(1.0, abs=1e-6)
    assert lq_dispersive_ratio(pair, mono, 2.0, 0.0, psi, math.inf) == pytest.approx(
        dispersive_ratio(pair, mono, 2.0, 0.0, psi), rel=1e-12
    )
    with pytest.raises(InvalidArgument):
        lq_dispersive_ratio(pair, mono, 2.0, 0.0, psi, 1.5)
    print("✅ L^Q 插值端點")


def test_weighted_norm_ratio():
    pair, mono = setup(zero_field())
    grid = GridSpec(256, 20.0)
    psi = gaussian(grid)
    pot = PotentialSpec(v0=1.0, rho=2.0)

    zero = WaveFunction(grid, np.zeros((256, 256)))
    assert weighted_norm_ratio(pair, mono, 2.0, 0.0, zero, pot, 6.0) == 0.0

    ratios = [weighted_norm_ratio(pair, mono, t, 0.0, psi, pot, 6.0) for t in (2.0, 4.0, 8.0)]
    assert all(math.isfinite(r) and r > 0 for r in ratios)
    assert ratios[1] <= ratios[0] * (1 + 1e-6)
    assert ratios[2] <= ratios[1] * (1 + 1e-6)

    scaled = weighted_norm_ratio(pair, mono, 2.0, 0.0, psi, PotentialSpec(v0=4.0, rho=2.0), 6.0)
    assert abs(scaled - ratios[0]) <= 1e-10 * ratios[0]

    with pytest.raises(DivergentWeight):
        weighted_norm_ratio(pair, mono, 2.0, 0.0, psi, PotentialSpec(v0=1.0, rho=1.0), 2.0)
    with pytest.raises(InvalidArgument):
        weighted_norm_ratio(pair, mono, 2.0, 0.0, psi, pot, 1.5)
    print("✅ 加權範數比值")


def test_second_moment_examples():
    grid = GridSpec(256, 20.0)
    assert second_moment(gaussian(grid)) == pytest.approx(1.0, abs=1e-10)
    assert second_moment(gaussian(grid, center=(3.0, 4.0))) == pytest.approx(math.sqrt(26.0), rel=1e-8)
    narrow = second_moment(gaussian(GridSpec(512, 10.0), width=0.2))
    assert narrow == pytest.approx(0.2, rel=1e-6)
    with pytest.raises(InvalidArgument):
        second_moment(WaveFunction(grid, np.zeros((256, 256))))
    print("✅ 二階矩範例")


def test_quantum_growth_trichotomy():
    """二階矩² = ζ₁²w² + ζ₂²/w²（m = 1）"""
    # 雙曲：對數斜率等於 λ
    spec = pulsed_field()
    pair, mono = setup(spec)
    lam = classify(mono).floquet_exponent
    width = 1.21
    psi = gaussian(GridSpec(512, 50.0), width=width)
    moments = []
    for N in (1, 2):
        t = N * spec.period
        out = mehler_propagate(pair, mono, t, 0.0, psi)
        z1 = evaluate_zeta(pair, mono, 1, t)[0]
        z2 = evaluate_zeta(pair, mono, 2, t)[0]
        expected = math.sqrt(z1 ** 2 * width ** 2 + z2 ** 2 / width ** 2)
        moments.append(second_moment(out))
        assert moments[-1] == pytest.approx(expected, rel=1e-4)
    assert math.log(moments[1] / moments[0]) == pytest.approx(lam, rel=0.03)

    # 拋物：線性成長
    pair, mono = setup(zero_field())
    psi = gaussian(GridSpec(256, 20.0))
    for N in (1, 2, 3):
        out = mehler_propagate(pair, mono, float(N), 0.0, psi)
        assert second_moment(out) == pytest.approx(math.sqrt(1.0 + N * N), rel=1e-6)

    # 橢圓：有界
    pair, mono = setup(constant_field(period=2.0))
    psi = gaussian(GridSpec(256, 20.0), width=1.5)
    for N in (1, 2, 3, 4):
        out = mehler_propagate(pair, mono, 2.0 * N, 0.0, psi)
        assert 1 / 1.5 - 1e-6 <= second_moment(out) <= 1.5 + 1e-6
        assert escaped_mass_fraction(out) <= 1e-6
    print("✅ 二階矩成長三分法")


def main():
    """主測試函數"""
    import tempfile
    from pathlib import Path

    print("🌊 開始量子傳播測試...")
    print("=" * 60)

    tests = [
        ("網格範數", test_grid_and_gaussian_norm),
        ("Γ 範例", test_gamma_examples),
        ("恆等與焦散", test_mehler_identity_and_caustic),
        ("自由高斯", test_mehler_free_gaussian),
        ("群律", test_mehler_group_law),
        ("Strang 對照", test_mehler_matches_strang_oracle),
        ("Strang 自由", test_strang_free_closed_form),
        ("Strang 階數", test_strang_second_order),
        ("實驗室座標", test_lab_frame_is_rotated_rotating_frame),
        ("旋轉", test_rotate_wavefunction),
        ("零場色散", test_dispersive_ratio_zero_field),
        ("拒絕時間對", test_dispersive_ratio_refuses_unresolved_pairs),
        ("網格穩定", test_dispersive_ratio_grid_stable_for_pulsed_field),
        ("L^Q 端點", test_lq_dispersive_ratio_endpoints),
        ("加權比值", test_weighted_norm_ratio),
        ("二階矩", test_second_moment_examples),
        ("成長三分法", test_quantum_growth_trichotomy),
    ]

    results = []
    for name, test in tests:
        try:
            test()
            results.append((name, True))
        except Exception as e:
            print(f"❌ {name} 失敗: {e}")
            results.append((name, False))

    with tempfile.TemporaryDirectory() as tmp:
        try:
            test_wavefunction_snapshot(Path(tmp))
            results.append(("快照", True))
        except Exception as e:
            print(f"❌ 快照 失敗: {e}")
            results.append(("快照", False))

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
