#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hill 方程 ζ″ + (qB(t)/2m)² ζ = 0 的基本解、單值矩陣與穩定性分類

常數與脈衝剖面使用精確的分段旋轉/剪切矩陣，其餘剖面以固定步長 RK4 積分，
週期內的取值以三次 Hermite 插值（導數由方程本身給出）。
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Literal, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .errors import (
    DegenerateZero,
    IntervalContainsZero,
    InvalidArgument,
    OverflowRisk,
    StepTooCoarse,
)
from .models import FieldSpec, evaluate_field, is_piecewise_constant, piecewise_segments
from .utils.logger import ContextualLogger, timed

log = ContextualLogger("hill")

DEFAULT_STEPS_PER_PERIOD = 4096
MAX_EXTENSION_PERIODS = 64


def segment_matrices(a: float, d) -> np.ndarray:
    """
    常係數 ζ″ + a²ζ = 0 在時長 d 上的 (ζ, ζ′) 轉移矩陣

    a = 0 時為剪切 [[1, d], [0, 1]]，否則為 [[cos ad, sin(ad)/a], [−a sin ad, cos ad]]。
    """
    d = np.asarray(d, dtype=float)
    out = np.empty(d.shape + (2, 2))
    if a == 0.0:
        out[..., 0, 0] = 1.0
        out[..., 0, 1] = d
        out[..., 1, 0] = 0.0
        out[..., 1, 1] = 1.0
    else:
        c = np.cos(a * d)
        s = np.sin(a * d)
        out[..., 0, 0] = c
        out[..., 0, 1] = s / a
        out[..., 1, 0] = -a * s
        out[..., 1, 1] = c
    return out


@dataclass(frozen=True, eq=False)
class FundamentalPair:
    """一個週期上密集取樣的 ζ₁, ζ₁′, ζ₂, ζ₂′"""
    field: FieldSpec
    step: float
    times: np.ndarray
    zeta1: np.ndarray
    dzeta1: np.ndarray
    zeta2: np.ndarray
    dzeta2: np.ndarray
    method: str
    _segments: Optional[List[Tuple[float, float, float]]] = field(default=None, repr=False)
    _segment_states: Optional[np.ndarray] = field(default=None, repr=False)
    _splines: Optional[Tuple[CubicHermiteSpline, ...]] = field(default=None, repr=False)

    @property
    def period(self) -> float:
        return self.field.period

    def wronskian_drift(self) -> float:
        w = self.zeta1 * self.dzeta2 - self.dzeta1 * self.zeta2
        return float(np.max(np.abs(w - 1.0)))

    def state_at(self, s):
        """
        週期內 s ∈ [0, T] 的 (ζ₁, ζ₁′, ζ₂, ζ₂′)

        精確路徑直接由區段矩陣求值；積分路徑使用 Hermite 插值。
        """
        s_arr = np.clip(np.asarray(s, dtype=float), 0.0, self.period)
        if self._segments is not None:
            starts = np.array([seg[0] for seg in self._segments])
            idx = np.clip(np.searchsorted(starts, s_arr, side="right") - 1, 0, len(starts) - 1)
            z1 = np.empty_like(s_arr)
            d1 = np.empty_like(s_arr)
            z2 = np.empty_like(s_arr)
            d2 = np.empty_like(s_arr)
            for k, (start, _end, a) in enumerate(self._segments):
                mask = idx == k
                if not np.any(mask):
                    continue
                phi = segment_matrices(a, s_arr[mask] - start) @ self._segment_states[k]
                z1[mask] = phi[..., 0, 0]
                d1[mask] = phi[..., 1, 0]
                z2[mask] = phi[..., 0, 1]
                d2[mask] = phi[..., 1, 1]
        else:
            sz1, sd1, sz2, sd2 = self._splines
            z1, d1, z2, d2 = sz1(s_arr), sd1(s_arr), sz2(s_arr), sd2(s_arr)

        if np.ndim(s) == 0:
            return float(z1), float(d1), float(z2), float(d2)
        return z1, d1, z2, d2


def _hill_coefficient(spec: FieldSpec, t):
    return (spec.charge * evaluate_field(spec, t) / (2.0 * spec.mass)) ** 2


def _rk4_step(z: float, d: float, wa: float, wm: float, wb: float, h: float) -> Tuple[float, float]:
    k1z, k1d = d, -wa * z
    k2z, k2d = d + 0.5 * h * k1d, -wm * (z + 0.5 * h * k1z)
    k3z, k3d = d + 0.5 * h * k2d, -wm * (z + 0.5 * h * k2z)
    k4z, k4d = d + h * k3d, -wb * (z + h * k3z)
    return (
        z + h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
        d + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
    )


def _integrate_rk4(spec: FieldSpec, times: np.ndarray, h: float) -> np.ndarray:
    w = _hill_coefficient(spec, times)
    w_mid = _hill_coefficient(spec, times[:-1] + 0.5 * h)
    out = np.empty((len(times), 4))
    z1, d1, z2, d2 = 1.0, 0.0, 0.0, 1.0
    out[0] = (z1, d1, z2, d2)
    for k in range(len(times) - 1):
        wa, wm, wb = float(w[k]), float(w_mid[k]), float(w[k + 1])
        z1, d1 = _rk4_step(z1, d1, wa, wm, wb, h)
        z2, d2 = _rk4_step(z2, d2, wa, wm, wb, h)
        out[k + 1] = (z1, d1, z2, d2)
    return out


def integrate_fundamental(
    field_spec: FieldSpec,
    h: Optional[float] = None,
    method: Literal["auto", "rk4", "exact"] = "auto",
    wronskian_tol: float = 1e-9,
) -> FundamentalPair:
    """
    求 Hill 方程的基本解對

    Args:
        field_spec: 磁場規格
        h: 步長，預設 T/4096，須 ≤ T/256
        method: auto（分段常數用精確矩陣）、rk4（強制積分）、exact
        wronskian_tol: Wronskian 漂移容許值

    Returns:
        FundamentalPair: 含 t_k = kh 上的取樣

    Raises:
        StepTooCoarse: 步長過大或 Wronskian 漂移超出容許值
    """
    T = field_spec.period
    if h is None:
        h = T / DEFAULT_STEPS_PER_PERIOD
    if h <= 0 or h > T / 256 * (1 + 1e-12):
        raise StepTooCoarse(f"step {h} must satisfy 0 < h <= T/256", step=h, period=T)

    n_steps = math.ceil(T / h - 1e-9)
    step = T / n_steps
    times = np.linspace(0.0, T, n_steps + 1)

    exact = method == "exact" or (method == "auto" and is_piecewise_constant(field_spec))
    if method == "exact" and not is_piecewise_constant(field_spec):
        raise InvalidArgument("exact fundamental solutions need a piecewise-constant profile")

    segments = None
    segment_states = None
    splines = None
    with timed("integrate_fundamental", steps=n_steps, method="exact" if exact else "rk4"):
        if exact:
            segments = [
                (start, end, field_spec.charge * B / (2.0 * field_spec.mass))
                for start, end, B in piecewise_segments(field_spec)
            ]
            segment_states = np.empty((len(segments), 2, 2))
            phi = np.eye(2)
            for k, (start, end, a) in enumerate(segments):
                segment_states[k] = phi
                phi = segment_matrices(a, end - start) @ phi
            pair = FundamentalPair(
                field_spec, step, times, *([np.empty(0)] * 4), "exact",
                _segments=segments, _segment_states=segment_states,
            )
            z1, d1, z2, d2 = pair.state_at(times)
        else:
            samples = _integrate_rk4(field_spec, times, step)
            z1, d1, z2, d2 = samples.T.copy()
            w = _hill_coefficient(field_spec, times)
            splines = (
                CubicHermiteSpline(times, z1, d1),
                CubicHermiteSpline(times, d1, -w * z1),
                CubicHermiteSpline(times, z2, d2),
                CubicHermiteSpline(times, d2, -w * z2),
            )

    pair = FundamentalPair(
        field_spec, step, times, z1, d1, z2, d2,
        "exact" if exact else "rk4",
        _segments=segments, _segment_states=segment_states, _splines=splines,
    )
    drift = pair.wronskian_drift()
    if drift > wronskian_tol:
        raise StepTooCoarse(
            f"Wronskian drift {drift:.3e} exceeds {wronskian_tol:.1e}; reduce the step",
            drift=drift, step=step,
        )
    log.debug(f"基本解完成 method={pair.method} steps={n_steps} drift={drift:.2e}")
    return pair


# ------------------------------------------------------------------
# 單值矩陣與穩定性
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Monodromy:
    """單週期轉移矩陣 Phi_T 與相空間版本 L_mat"""
    phi_T: np.ndarray
    mass: float
    period: float

    @property
    def L_mat(self) -> np.ndarray:
        p = self.phi_T
        m = self.mass
        return np.array([[p[0, 0], p[0, 1] / m], [m * p[1, 0], p[1, 1]]])

    @property
    def discriminant(self) -> float:
        return float(self.phi_T[0, 0] + self.phi_T[1, 1])

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.phi_T))


def monodromy(pair: FundamentalPair, tol: float = 1e-9) -> Monodromy:
    """讀取終點取樣組成單值矩陣"""
    phi = np.array([
        [pair.zeta1[-1], pair.zeta2[-1]],
        [pair.dzeta1[-1], pair.dzeta2[-1]],
    ])
    mono = Monodromy(phi, pair.field.mass, pair.period)
    if abs(mono.det - 1.0) > tol:
        raise StepTooCoarse(f"monodromy determinant {mono.det!r} differs from 1", det=mono.det)
    return mono


class Regime(str, Enum):
    """穩定性分類"""
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC = "Parabolic"
    ELLIPTIC = "Elliptic"


@dataclass(frozen=True)
class StabilityClass:
    """判別式、分類與 Floquet 指數"""
    discriminant: float
    regime: Regime
    floquet_exponent: Optional[float]
    zeta2_T_nonzero: bool
    lambda_tilde: Optional[float]
    eigenvalues: Tuple[complex, complex]

    @property
    def is_hyperbolic(self) -> bool:
        return self.regime is Regime.HYPERBOLIC


def classify(mono: Monodromy, tol: float = 1e-9) -> StabilityClass:
    """
    依 D² 與 4 的比較分類

    Args:
        mono: 單值矩陣
        tol: |D² − 4| ≤ tol 視為拋物型
    """
    D = mono.discriminant
    gap = D * D - 4.0
    if abs(gap) <= tol:
        regime = Regime.PARABOLIC
    elif gap > 0:
        regime = Regime.HYPERBOLIC
    else:
        regime = Regime.ELLIPTIC

    lam = None
    lam_tilde = None
    if regime is Regime.HYPERBOLIC:
        radius = (abs(D) + math.sqrt(gap)) / 2.0
        mu_max = math.copysign(radius, D)
        mu_min = 1.0 / mu_max
        lam = math.log(radius)
        lam_tilde = math.log(abs(mu_min))
        eigenvalues = (complex(mu_max), complex(mu_min))
    else:
        ev = np.linalg.eigvals(mono.phi_T)
        eigenvalues = (complex(ev[0]), complex(ev[1]))

    return StabilityClass(
        discriminant=D,
        regime=regime,
        floquet_exponent=lam,
        zeta2_T_nonzero=abs(mono.phi_T[0, 1]) > tol,
        lambda_tilde=lam_tilde,
        eigenvalues=eigenvalues,
    )


# ------------------------------------------------------------------
# 週期延拓
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtensionCoefficients:
    """
    A(N) = (Phi_Tᵀ)^N

    第 j 列給出 ζⱼ(t+NT) = A[j,0]·ζ₁(t) + A[j,1]·ζ₂(t)。
    """
    N: int
    A: np.ndarray

    @property
    def a1(self) -> float:
        return float(self.A[0, 0])

    @property
    def a2(self) -> float:
        return float(self.A[0, 1])

    @property
    def a3(self) -> float:
        return float(self.A[1, 0])

    @property
    def a4(self) -> float:
        return float(self.A[1, 1])


def _adjugate(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def predicted_log_growth(mono: Monodromy, n_periods: int) -> float:
    """|A(N)| 的對數預估"""
    radius = float(np.max(np.abs(np.linalg.eigvals(mono.phi_T))))
    norm = float(np.linalg.norm(mono.phi_T))
    if radius > 1.0 + 1e-12:
        return abs(n_periods) * math.log(radius) + math.log(max(norm, 1.0))
    return math.log1p(abs(n_periods) * norm)


def extension_coefficients(mono: Monodromy, N: int, max_abs: float = 1e12) -> ExtensionCoefficients:
    """
    以反覆平方計算延拓係數，負 N 使用伴隨矩陣（det = 1 時即為逆矩陣）

    Raises:
        OverflowRisk: |N| > 64 或預估 |A| > max_abs
    """
    N = int(N)
    if abs(N) > MAX_EXTENSION_PERIODS:
        raise OverflowRisk(f"|N| = {abs(N)} exceeds {MAX_EXTENSION_PERIODS}", N=N)
    if predicted_log_growth(mono, N) > math.log(max_abs):
        raise OverflowRisk(f"extension coefficients for N={N} would exceed {max_abs:.0e}", N=N)

    base = mono.phi_T.T if N >= 0 else _adjugate(mono.phi_T.T)
    A = np.linalg.matrix_power(base, abs(N))
    if not np.all(np.isfinite(A)) or np.max(np.abs(A)) > max_abs:
        raise OverflowRisk(f"extension coefficients for N={N} exceed {max_abs:.0e}", N=N)
    return ExtensionCoefficients(N, A)


def evaluate_zeta(pair: FundamentalPair, mono: Monodromy, j: int, t):
    """
    全時間軸上的 ζⱼ(t) 與 ζⱼ′(t)

    以 t = NT + s 寫出並用 A(N) 的第 j 列組合週期內的值。
    """
    if j not in (1, 2):
        raise InvalidArgument(f"j must be 1 or 2, got {j}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise InvalidArgument("evaluate_zeta requires t >= 0")
    T = pair.period
    n = np.floor(t_arr / T).astype(int)
    s = t_arr - n * T
    wrap = s >= T
    n = np.where(wrap, n + 1, n)
    s = np.clip(np.where(wrap, s - T, s), 0.0, T)

    z1, d1, z2, d2 = (np.asarray(v) for v in pair.state_at(s))
    value = np.empty_like(s)
    deriv = np.empty_like(s)
    for n_periods in np.unique(n):
        row = extension_coefficients(mono, int(n_periods)).A[j - 1]
        mask = n == n_periods
        value[mask] = row[0] * z1[mask] + row[1] * z2[mask]
        deriv[mask] = row[0] * d1[mask] + row[1] * d2[mask]

    if np.ndim(t) == 0:
        return float(value), float(deriv)
    return value, deriv


def fundamental_matrix(pair: FundamentalPair, mono: Monodromy, t: float) -> np.ndarray:
    """Phi(t) = [[ζ₁, ζ₂], [ζ₁′, ζ₂′]]"""
    z1, d1 = evaluate_zeta(pair, mono, 1, t)
    z2, d2 = evaluate_zeta(pair, mono, 2, t)
    return np.array([[z1, z2], [d1, d2]])


def interval_matrix(pair: FundamentalPair, mono: Monodromy, tau: float, s: float) -> np.ndarray:
    """
    兩時刻轉移矩陣 Phi(τ)·Phi(s)⁻¹

    右上元素為帶號的 ζ₁(s)ζ₂(τ) − ζ₁(τ)ζ₂(s)。
    """
    return fundamental_matrix(pair, mono, tau) @ _adjugate(fundamental_matrix(pair, mono, s))


# ------------------------------------------------------------------
# 零點
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ZeroSet:
    """ζⱼ 在 [0, T) 上的零點與該處導數"""
    which: int
    zeros: np.ndarray
    derivative_at_zero: np.ndarray


def find_zeros(pair: FundamentalPair, j: int, xtol: float = 1e-12, min_derivative: float = 1e-8) -> ZeroSet:
    """
    以取樣變號定位零點，再用 brentq 精修

    Raises:
        DegenerateZero: 零點處 |ζⱼ′| < min_derivative
    """
    if j not in (1, 2):
        raise InvalidArgument(f"j must be 1 or 2, got {j}")
    T = pair.period
    values = pair.zeta1 if j == 1 else pair.zeta2
    value_index = 0 if j == 1 else 2
    times = pair.times

    def f(t: float) -> float:
        return pair.state_at(t)[value_index]

    zeros = [0.0] if j == 2 else []
    exact_hits = np.nonzero(values[1:-1] == 0.0)[0] + 1
    zeros.extend(float(times[k]) for k in exact_hits)
    for k in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
        root = brentq(f, times[k], times[k + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)
        if T - root > 10 * xtol:
            zeros.append(float(root))

    zeros_arr = np.array(sorted(zeros))
    deriv_index = 1 if j == 1 else 3
    derivs = np.array([pair.state_at(t)[deriv_index] for t in zeros_arr])
    if np.any(np.abs(derivs) < min_derivative):
        raise DegenerateZero(
            f"zeta{j} has a zero with |derivative| < {min_derivative:.0e}",
            zeros=zeros_arr.tolist(),
        )
    return ZeroSet(j, zeros_arr, derivs)


@dataclass(frozen=True)
class RatioReport:
    """比值單調性檢查結果"""
    ratio: str
    interval: Tuple[float, float]
    min_slope: float
    max_slope: float
    observed_sign: int
    expected_sign: int
    identity_residual: float
    strictly_monotone: bool
    agrees_with_stated_orientation: bool


def ratio_monotonicity_check(
    pair: FundamentalPair,
    interval: Tuple[float, float],
    ratio: Literal["zeta1_over_zeta2", "zeta2_over_zeta1"] = "zeta1_over_zeta2",
    points: int = 100,
    delta: float = 1e-5,
) -> RatioReport:
    """
    在不含分母零點的區間上以有限差分檢查 ζ₁/ζ₂（或 ζ₂/ζ₁）的嚴格單調性

    Wronskian 歸一化 ζ₁ζ₂′ − ζ₁′ζ₂ = 1 給出 d/dt(ζ₁/ζ₂) = −1/ζ₂²、
    d/dt(ζ₂/ζ₁) = +1/ζ₁²；報告同時比較「ζ₁/ζ₂ 遞增、ζ₂/ζ₁ 遞減」的方向敘述。
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not 0.0 <= lo < hi <= pair.period:
        raise InvalidArgument(f"interval {interval} must lie inside [0, T]")
    if ratio == "zeta1_over_zeta2":
        num_idx, den_idx, den_j, expected, stated = 0, 2, 2, -1, 1
    elif ratio == "zeta2_over_zeta1":
        num_idx, den_idx, den_j, expected, stated = 2, 0, 1, 1, -1
    else:
        raise InvalidArgument(f"unknown ratio '{ratio}'")

    zeros = find_zeros(pair, den_j).zeros
    dense = np.asarray(pair.state_at(np.linspace(lo, hi, 2001))[den_idx])
    if np.any((zeros >= lo) & (zeros <= hi)) or np.any(dense == 0.0) or np.any(dense[:-1] * dense[1:] < 0):
        raise IntervalContainsZero(
            f"denominator of {ratio} vanishes in [{lo}, {hi}]", interval=(lo, hi)
        )

    ts = np.linspace(lo, hi, points + 2)[1:-1]
    delta = min(delta, 0.5 * (ts[0] - lo))

    def r(t):
        state = pair.state_at(t)
        return np.asarray(state[num_idx]) / np.asarray(state[den_idx])

    slopes = (r(ts + delta) - r(ts - delta)) / (2.0 * delta)
    den = np.asarray(pair.state_at(ts)[den_idx])
    residual = float(np.max(np.abs(slopes * den ** 2 - expected)))

    if np.all(slopes > 0):
        observed = 1
    elif np.all(slopes < 0):
        observed = -1
    else:
        observed = 0

    return RatioReport(
        ratio=ratio,
        interval=(lo, hi),
        min_slope=float(np.min(slopes)),
        max_slope=float(np.max(slopes)),
        observed_sign=observed,
        expected_sign=expected,
        identity_residual=residual,
        strictly_monotone=observed != 0,
        agrees_with_stated_orientation=observed == stated,
    )
