#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ζ₂ 的負冪次積分、其指數衰減與預解級數部分和

∫₀ᵀ |ζ₂(t+NT)|^{−4/p} dt 在 ζ₂ 的零點處有可積奇異性（4/p < 1）。每個零點 t₀ 周圍
半寬 w 的窗口以局部模型 |ζ₂′(t₀)(t − t₀)|^{−4/p} 解析積分，其餘部分交給 quad。
"""

import math
import time
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import integrate
from scipy.optimize import brentq

from ..errors import DegenerateZero, InsufficientData, InvalidArgument, NotHyperbolic
from ..hill import FundamentalPair, Monodromy, classify, evaluate_zeta, extension_coefficients
from ..models import field_breakpoints
from ..utils.logger import ContextualLogger, log_performance

log = ContextualLogger("scattering")

DEFAULT_WINDOW_FRACTION = 1e-4
MIN_ZERO_DERIVATIVE = 1e-8


def _combination_zeros(pair: FundamentalPair, c1: float, c2: float, xtol: float) -> List[float]:
    """f = c1·ζ₁ + c2·ζ₂ 在 [0, T] 上的零點"""
    values = c1 * pair.zeta1 + c2 * pair.zeta2
    times = pair.times

    def f(t: float) -> float:
        z1, _, z2, _ = pair.state_at(t)
        return c1 * z1 + c2 * z2

    zeros = [float(times[k]) for k in np.nonzero(values == 0.0)[0]]
    for k in np.nonzero(values[:-1] * values[1:] < 0.0)[0]:
        zeros.append(float(brentq(f, times[k], times[k + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)))
    return sorted(zeros)


def _singular_power_integral(
    pair: FundamentalPair,
    c1: float,
    c2: float,
    alpha: float,
    window: float,
    xtol: float = 1e-14,
) -> float:
    """
    ∫₀ᵀ |c1·ζ₁(t) + c2·ζ₂(t)|^{−α} dt，0 < α < 1

    Raises:
        DegenerateZero: 零點處導數過小，局部模型失效
    """
    T = pair.period
    zeros = _combination_zeros(pair, c1, c2, xtol)

    analytic = 0.0
    cuts: List[Tuple[float, float]] = []
    for idx, t0 in enumerate(zeros):
        _, d1, _, d2 = pair.state_at(t0)
        slope = abs(c1 * d1 + c2 * d2)
        if slope < MIN_ZERO_DERIVATIVE:
            raise DegenerateZero(
                f"integrand zero at t={t0!r} has |derivative| {slope:.2e}", t0=t0, derivative=slope
            )
        prev_edge = 0.5 * (zeros[idx - 1] + t0) if idx > 0 else 0.0
        next_edge = 0.5 * (t0 + zeros[idx + 1]) if idx + 1 < len(zeros) else T
        left = min(window, t0 - prev_edge)
        right = min(window, next_edge - t0)
        for side in (left, right):
            if side > 0.0:
                analytic += side ** (1.0 - alpha) / ((1.0 - alpha) * slope ** alpha)
        cuts.append((t0 - left, t0 + right))

    def integrand(t: float) -> float:
        z1, _, z2, _ = pair.state_at(t)
        return abs(c1 * z1 + c2 * z2) ** (-alpha)

    kinks = field_breakpoints(pair.field, 0.0, T)
    pieces = []
    lo = 0.0
    for a, b in cuts:
        pieces.append((lo, a))
        lo = b
    pieces.append((lo, T))

    regular = 0.0
    for a, b in pieces:
        if b - a <= 0.0:
            continue
        inner = [float(k) for k in kinks if a < k < b]
        value, _ = integrate.quad(
            integrand, a, b, points=inner or None, limit=500, epsabs=0.0, epsrel=1e-11
        )
        regular += value
    return analytic + regular


def _check_exponent(p: float):
    if not p > 4.0:
        raise InvalidArgument("p must exceed 4 for an integrable singularity", p=p)


def zeta2_power_integral(
    pair: FundamentalPair,
    mono: Monodromy,
    N: int,
    p: float,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> float:
    """
    ∫₀ᵀ |ζ₂(t+NT)|^{−4/p} dt，不檢查穩定性分類

    ζ₂(t+NT) = A₃,N·ζ₁(t) + A₄,N·ζ₂(t)。

    Args:
        N: 週期數，N ≥ 0
        p: 指數，p > 4
        window_fraction: 奇異窗口半寬佔 T 的比例
    """
    _check_exponent(p)
    if N < 0:
        raise InvalidArgument("N must be non-negative", N=N)
    row = extension_coefficients(mono, N).A[1]
    return _singular_power_integral(pair, float(row[0]), float(row[1]), 4.0 / p, window_fraction * pair.period)


def _require_hyperbolic(mono: Monodromy, operation: str):
    stab = classify(mono)
    if not stab.is_hyperbolic:
        raise NotHyperbolic(
            f"{operation} requires a hyperbolic field, got {stab.regime.value}",
            regime=stab.regime.value, D=stab.discriminant,
        )
    if not stab.zeta2_T_nonzero:
        raise NotHyperbolic(f"{operation} requires zeta2(T) != 0", D=stab.discriminant)
    return stab


def zeta2_singular_integral(
    pair: FundamentalPair,
    mono: Monodromy,
    N: int,
    p: float,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> float:
    """
    雙曲型磁場的 I_N = ∫₀ᵀ |ζ₂(t+NT)|^{−4/p} dt

    Raises:
        NotHyperbolic: D² ≤ 4 或 ζ₂(T) = 0
        DegenerateZero: 零點退化
    """
    _require_hyperbolic(mono, "zeta2_singular_integral")
    return zeta2_power_integral(pair, mono, N, p, window_fraction)


@dataclass(frozen=True, eq=False)
class DecayReport:
    """log I_N 對 N 的最小平方擬合"""
    N_values: np.ndarray
    I_values: np.ndarray
    fitted_rate: float
    predicted_rate: float
    rel_deviation: float


def decay_fit(
    pair: FundamentalPair,
    mono: Monodromy,
    p: float,
    N_range: Sequence[int],
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> DecayReport:
    """
    擬合 I_N 的衰減率並與 4λ/p 比較

    Raises:
        InsufficientData: N_range 少於 6 個值
        NotHyperbolic: 非雙曲型
    """
    stab = _require_hyperbolic(mono, "decay_fit")
    Ns = np.array(sorted(set(int(n) for n in N_range)))
    if len(Ns) < 6:
        raise InsufficientData("decay_fit needs at least 6 values of N", points=int(len(Ns)))

    start = time.perf_counter()
    I = np.array([zeta2_power_integral(pair, mono, int(n), p, window_fraction) for n in Ns])
    slope = np.polyfit(Ns.astype(float), np.log(I), 1)[0]
    fitted = -float(slope)
    predicted = 4.0 * stab.floquet_exponent / p
    log_performance("decay_fit", time.perf_counter() - start, points=len(Ns), p=p)
    return DecayReport(Ns, I, fitted, predicted, abs(fitted - predicted) / predicted)


@dataclass(frozen=True, eq=False)
class ResolventSeries:
    """S_K = Σ_{N=0..K} I_N^{1/2}"""
    N_values: np.ndarray
    I_values: np.ndarray
    partial_sums: np.ndarray

    @property
    def increments(self) -> np.ndarray:
        return np.sqrt(self.I_values)

    def tail_bound(self, rate: float, K: int) -> float:
        """幾何尾界 S_K 增量·e^{−rate}/(1 − e^{−rate})"""
        q = math.exp(-rate)
        return float(self.increments[K]) * q / (1.0 - q)


def resolvent_series_partial_sums(
    pair: FundamentalPair,
    mono: Monodromy,
    p: float,
    N_max: int,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> ResolventSeries:
    """S_0..S_{N_max}"""
    _require_hyperbolic(mono, "resolvent_series_partial_sums")
    _check_exponent(p)
    if N_max < 0:
        raise InvalidArgument("N_max must be non-negative", N_max=N_max)
    Ns = np.arange(N_max + 1)
    I = np.array([zeta2_power_integral(pair, mono, int(n), p, window_fraction) for n in Ns])
    return ResolventSeries(Ns, I, np.cumsum(np.sqrt(I)))


def gamma_double_integral(
    pair: FundamentalPair,
    mono: Monodromy,
    N: int,
    p: float,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
    epsrel: float = 1e-6,
) -> float:
    """
    ∫₀ᵀ∫₀ᵀ Γ(t+NT, s)^{−4/p} ds dt

    對固定 t，Γ(t+NT, s) = |ζ₂(t+NT)·ζ₁(s) − ζ₁(t+NT)·ζ₂(s)|，內層積分沿用奇異窗口法。
    """
    _check_exponent(p)
    if N < 0:
        raise InvalidArgument("N must be non-negative", N=N)
    T = pair.period
    alpha = 4.0 / p
    window = window_fraction * T

    def inner(t: float) -> float:
        tau = t + N * T
        z1, _ = evaluate_zeta(pair, mono, 1, tau)
        z2, _ = evaluate_zeta(pair, mono, 2, tau)
        return _singular_power_integral(pair, z2, -z1, alpha, window)

    start = time.perf_counter()
    kinks = [float(k) for k in field_breakpoints(pair.field, 0.0, T)]
    value, _ = integrate.quad(inner, 0.0, T, points=kinks or None, limit=100, epsabs=0.0, epsrel=epsrel)
    log_performance("gamma_double_integral", time.perf_counter() - start, N=N, p=p)
    return value
