#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
旋轉座標系中的二維傳播子

H̃₀(t) = p²/(2m) + q²B(t)²|x|²/(8m) 為時間相依諧振子；實驗室座標系的
H₀(t) = H̃₀(t) − (ω(t)/2)·L 與 H̃₀ 對易，故 U₀(t,s) = e^{i(Ω(t)−Ω(s))L/2}·Ũ₀(t,s)。
徑向位勢與 L 對易，旋轉因子在 U(t,0)*U₀(t,0) 中精確相消。

兩時刻相空間矩陣 M = Phi(τ)Phi(s)⁻¹（座標 (x, x′)）分解為
shear(γ_out)·free(b)·shear(γ_in)，b = M₁₂，γ_in = (M₁₁ − 1)/b，γ_out = (M₂₂ − 1)/b：
先乘啁啾 e^{imγ_in|x|²/2}，再做時長 b 的精確自由傳播，最後乘啁啾 e^{imγ_out|x|²/2}。
對應核為 (m/(2πi·b))·exp(i·m(M₂₂|x|² − 2x·y + M₁₁|y|²)/(2b))，b 帶號穿過焦散。
"""

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft

from ..errors import AliasingRisk, CausticProximity, InvalidArgument
from ..hill import FundamentalPair, Monodromy, evaluate_zeta, interval_matrix
from ..models import FieldSpec, PotentialSpec, evaluate_field, field_breakpoints, omega, potential_value
from ..utils.logger import ContextualLogger, log_performance
from .grid import GridSpec, WaveFunction, escaped_mass_fraction, spectral_edge_fraction

log = ContextualLogger("quantum")

DEFAULT_GAMMA_MIN = 1e-3
DEFAULT_ALIASING_TOL = 1e-8


def gamma(pair: FundamentalPair, mono: Monodromy, tau: float, s: float) -> float:
    """Γ(τ, s) = |ζ₁(s)ζ₂(τ) − ζ₁(τ)ζ₂(s)|"""
    if tau < 0 or s < 0:
        raise InvalidArgument("gamma requires tau, s >= 0", tau=tau, s=s)
    z1t, _ = evaluate_zeta(pair, mono, 1, tau)
    z2t, _ = evaluate_zeta(pair, mono, 2, tau)
    z1s, _ = evaluate_zeta(pair, mono, 1, s)
    z2s, _ = evaluate_zeta(pair, mono, 2, s)
    return abs(z1s * z2t - z1t * z2s)


@dataclass(frozen=True)
class ChirpFactorization:
    """M = shear(gamma_out)·free(b)·shear(gamma_in)"""
    matrix: np.ndarray
    b: float
    gamma_in: float
    gamma_out: float

    @property
    def a11(self) -> float:
        return float(self.matrix[0, 0])

    @property
    def a22(self) -> float:
        return float(self.matrix[1, 1])


def chirp_factorization(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    gamma_min: float = DEFAULT_GAMMA_MIN,
) -> ChirpFactorization:
    """
    兩時刻矩陣的啁啾分解

    Raises:
        CausticProximity: Γ/m < gamma_min
    """
    M = interval_matrix(pair, mono, tau, s)
    b = float(M[0, 1])
    gamma_rel = abs(b) / pair.field.mass
    if gamma_rel < gamma_min:
        raise CausticProximity(
            f"Gamma_rel={gamma_rel:.3e} below {gamma_min:.1e} at (tau={tau!r}, s={s!r})",
            tau=tau, s=s, gamma=abs(b),
        )
    return ChirpFactorization(M, b, (M[0, 0] - 1.0) / b, (M[1, 1] - 1.0) / b)


def _check_spectrum(spectrum: np.ndarray, grid: GridSpec, tol: float, stage: str, tau: float, s: float):
    power = np.abs(spectrum) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        return
    edge = float(np.sum(power[grid.spectral_frame_mask()])) / total
    if edge > tol:
        raise AliasingRisk(
            f"{stage} chirp exceeds the grid Nyquist bound (edge fraction {edge:.2e})",
            tau=tau, s=s, edge_fraction=edge,
        )


def mehler_propagate(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    psi: WaveFunction,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> WaveFunction:
    """
    Ũ₀(τ, s)ψ：啁啾 → 精確頻譜自由傳播 → 啁啾

    Args:
        pair, mono: 基本解與單值矩陣
        tau, s: 終止與起始時間
        psi: 初始波函數（支撐須遠離網格邊界）
        gamma_min: 焦散門檻（Γ/m）
        aliasing_tol: 頻譜外框能量容許值

    Raises:
        CausticProximity: 接近焦散
        AliasingRisk: 啁啾頻率超出 Nyquist
    """
    if tau == s:
        return psi.copy()
    factor = chirp_factorization(pair, mono, tau, s, gamma_min)
    if psi.is_zero:
        return psi.copy()

    grid = psi.grid
    m = pair.field.mass
    r2 = grid.r2()

    work = psi.amplitudes * np.exp(0.5j * m * factor.gamma_in * r2)
    spectrum = fft.fft2(work)
    _check_spectrum(spectrum, grid, aliasing_tol, "input", tau, s)
    spectrum *= np.exp(-0.5j * factor.b * grid.k2() / m)
    work = fft.ifft2(spectrum) * np.exp(0.5j * m * factor.gamma_out * r2)
    _check_spectrum(fft.fft2(work), grid, aliasing_tol, "output", tau, s)

    out = WaveFunction(grid, work)
    escaped = escaped_mass_fraction(out)
    if escaped > 1e-6:
        log.warning(f"⚠️ Mehler 輸出接近網格邊界 (tau={tau:.4g}, s={s:.4g}, frame={escaped:.2e})")
    return out


# ------------------------------------------------------------------
# 頻譜旋轉
# ------------------------------------------------------------------

def _shear(amps: np.ndarray, grid: GridSpec, axis: int, amount: float) -> np.ndarray:
    """h(x) = f(x + amount·x_other·e_axis)，沿 axis 的頻譜平移"""
    k = grid.k_axis
    x = grid.axis
    if axis == 0:
        phase = np.exp(1j * amount * np.outer(k, x))
    else:
        phase = np.exp(1j * amount * np.outer(x, k))
    return fft.ifft(fft.fft(amps, axis=axis) * phase, axis=axis)


def _rotate_array(amps: np.ndarray, grid: GridSpec, alpha: float) -> np.ndarray:
    pieces = max(1, math.ceil(abs(alpha) / (math.pi / 2)))
    phi = -alpha / pieces
    a = -math.tan(phi / 2.0)
    b = math.sin(phi)
    out = amps
    for _ in range(pieces):
        out = _shear(out, grid, 0, a)
        out = _shear(out, grid, 1, b)
        out = _shear(out, grid, 0, a)
    return out


def rotate_wavefunction(psi: WaveFunction, alpha: float) -> WaveFunction:
    """
    e^{−iαL}ψ，即 ψ(R₋α x)：將函數逆時針旋轉 α

    以三次頻譜剪切實現，|α| > π/2 時分段。
    """
    if alpha == 0.0:
        return psi.copy()
    return WaveFunction(psi.grid, _rotate_array(psi.amplitudes, psi.grid, alpha))


# ------------------------------------------------------------------
# Strang 分裂
# ------------------------------------------------------------------

def strang_oracle(
    field_spec: FieldSpec,
    potential: Optional[PotentialSpec],
    t0: float,
    t1: float,
    dt: float,
    psi: WaveFunction,
    lab_frame: bool = False,
) -> WaveFunction:
    """
    二階 Strang 分裂：半步動能 → 乘法因子 exp(−i·h·(q²B(t_mid)²|x|²/(8m) + V)) → 半步動能

    區間在磁場斷點處切開；t1 < t0 時向後傳播。lab_frame=True 時在乘法步加入
    −(ω(t_mid)/2)·L 的精確旋轉。

    Args:
        field_spec: 磁場規格
        potential: 徑向位勢或 None
        t0, t1: 起訖時間
        dt: 步長上限，須 ≤ |t1 − t0|/256
        psi: 初始波函數
        lab_frame: 是否在實驗室座標系傳播
    """
    span = t1 - t0
    if span == 0.0:
        return psi.copy()
    if dt <= 0 or dt > abs(span) / 256 * (1 + 1e-12):
        raise InvalidArgument("strang_oracle requires 0 < dt <= |t1 - t0|/256", dt=dt, span=span)

    grid = psi.grid
    m = field_spec.mass
    q = field_spec.charge
    r2 = grid.r2()
    k2 = grid.k2()
    V = potential_value(potential, r2) if potential is not None and potential.v0 != 0.0 else None

    breaks = field_breakpoints(field_spec, t0, t1)
    if span < 0:
        breaks = breaks[::-1]
    nodes = [t0, *breaks.tolist(), t1]

    amps = np.array(psi.amplitudes)
    total_steps = 0
    start = time.perf_counter()
    for a, b in zip(nodes[:-1], nodes[1:]):
        length = b - a
        b_mid = evaluate_field(field_spec, 0.5 * (a + b))
        piecewise_constant_here = field_spec.profile.kind in ("constant", "pulsed")
        if V is None and not lab_frame and piecewise_constant_here and b_mid == 0.0:
            # 無場無位勢：動能步精確
            amps = fft.ifft2(fft.fft2(amps) * np.exp(-0.5j * length * k2 / m))
            total_steps += 1
            continue

        n_steps = math.ceil(abs(length) / dt - 1e-9)
        h = length / n_steps
        kin_half = np.exp(-0.25j * h * k2 / m)
        kin_full = kin_half * kin_half
        cached_field = None
        multiplier = None

        spectrum = fft.fft2(amps) * kin_half
        for j in range(n_steps):
            t_mid = a + (j + 0.5) * h
            B = evaluate_field(field_spec, t_mid)
            if B != cached_field:
                energy = (q * B) ** 2 * r2 / (8.0 * m)
                if V is not None:
                    energy = energy + V
                multiplier = np.exp(-1j * h * energy)
                cached_field = B
            amps = fft.ifft2(spectrum) * multiplier
            if lab_frame:
                amps = _rotate_array(amps, grid, -0.5 * omega(field_spec, t_mid) * h)
            spectrum = fft.fft2(amps) * (kin_full if j < n_steps - 1 else kin_half)
        amps = fft.ifft2(spectrum)
        total_steps += n_steps

    out = WaveFunction(grid, amps)
    log_performance("strang_oracle", time.perf_counter() - start, steps=total_steps, n=grid.n)
    edge = spectral_edge_fraction(out.amplitudes, grid)
    if edge > DEFAULT_ALIASING_TOL:
        log.warning(f"⚠️ Strang 結果頻譜接近 Nyquist (edge={edge:.2e})")
    return out


def lab_frame_strang(
    field_spec: FieldSpec,
    potential: Optional[PotentialSpec],
    t0: float,
    t1: float,
    dt: float,
    psi: WaveFunction,
) -> WaveFunction:
    """實驗室座標系 H₀(t) + V 的 Strang 傳播"""
    return strang_oracle(field_spec, potential, t0, t1, dt, psi, lab_frame=True)
