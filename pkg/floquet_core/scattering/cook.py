#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cook 積分、Σ_R 收斂與波算子 Cauchy 缺陷

徑向位勢與角動量 L 對易，而 U₀(t,0) = e^{iΩ(t)L/2}·Ũ₀(t,0)，實驗室座標系的
互動傳播子同樣為 U(t,0) = e^{iΩ(t)L/2}·Ũ(t,0)（Ũ 由 H̃₀(t) + V 生成）。因此
U(t,0)*U₀(t,0) = Ũ(t,0)*Ũ₀(t,0)，旋轉因子完全相消，所有量都在旋轉座標系計算。
"""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..errors import EpsilonTooLarge, GridEscape, InvalidArgument
from ..events import create_grid_escape_event, get_event_bus
from ..hill import FundamentalPair, Monodromy
from ..models import PotentialSpec, potential_value, rho1, rho2
from ..quantum.grid import WaveFunction, escaped_mass_fraction
from ..quantum.propagators import (
    DEFAULT_ALIASING_TOL,
    DEFAULT_GAMMA_MIN,
    mehler_propagate,
    strang_oracle,
)
from ..utils.logger import ContextualLogger, log_performance
from .floquet import DEFAULT_SLICES, ExcludedPair, require_hyperbolic, propagated_weight_norm

log = ContextualLogger("scattering")

MAX_DEFECT_PERIODS = 6
DEFAULT_ESCAPE_TOL = 1e-3


@dataclass(frozen=True, eq=False)
class CookReport:
    """C_K = Σ_{N=1..K} ∫₀ᵀ‖ρ₁·Ũ₀(t+NT,0)ψ₀‖₂dt"""
    N_values: np.ndarray
    integrals: np.ndarray
    partial_sums: np.ndarray
    predicted_ratio: float
    excluded: Tuple[ExcludedPair, ...] = field(default_factory=tuple)

    @property
    def increments(self) -> np.ndarray:
        return self.integrals

    @property
    def increment_ratios(self) -> np.ndarray:
        inc = self.integrals
        with np.errstate(divide="ignore", invalid="ignore"):
            return inc[1:] / inc[:-1]

    def fitted_ratio(self, N_min: int = 4) -> float:
        """N ≥ N_min 增量的幾何比（對數線性擬合）"""
        mask = self.N_values >= N_min
        if np.count_nonzero(mask) < 2 or np.any(self.integrals[mask] <= 0):
            return math.nan
        slope = np.polyfit(self.N_values[mask].astype(float), np.log(self.integrals[mask]), 1)[0]
        return float(math.exp(slope))

    def extrapolated_tail(self, N_min: int = 4) -> float:
        """以擬合比值外推的剩餘和"""
        q = self.fitted_ratio(N_min)
        if not 0.0 < q < 1.0:
            return math.inf
        return float(self.integrals[-1]) * q / (1.0 - q)


def _slice_integral(
    pair: FundamentalPair,
    mono: Monodromy,
    start: float,
    length: float,
    slices: int,
    f: WaveFunction,
    weight,
    source: str,
    excluded: List[ExcludedPair],
    gamma_min: float,
    aliasing_tol: float,
) -> float:
    """∫_start^{start+length}‖w·Ũ₀(t,0)f‖₂dt 的中點法，排除的切片貢獻 0"""
    h = length / slices
    total = 0.0
    for i in range(slices):
        t = start + (i + 0.5) * h
        norm = propagated_weight_norm(
            pair, mono, t, 0.0, f, weight, source, excluded, gamma_min, aliasing_tol
        )
        if norm is not None:
            total += h * norm
    return total


def cook_integrand_partial_sums(
    pair: FundamentalPair,
    mono: Monodromy,
    pot: PotentialSpec,
    psi0: WaveFunction,
    N_max: int,
    p: float,
    slices: int = DEFAULT_SLICES,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> CookReport:
    """
    回傳 C_1..C_{N_max}；增量應以 e^{−2λ/p} 的比值幾何衰減

    Args:
        pot: 徑向位勢，ρ₁ = |V|^{1/2}
        psi0: 初始態（高斯型）
        N_max: 最大週期數
        p: 衰減率中的指數
        slices: 每週期的中點切片數
    """
    stab = require_hyperbolic(mono, "cook_integrand_partial_sums")
    if N_max < 1:
        raise InvalidArgument("N_max must be at least 1", N_max=N_max)
    T = pair.period
    weight = lambda r: rho1(pot, r ** 2)
    excluded: List[ExcludedPair] = []

    start = time.perf_counter()
    Ns = np.arange(1, N_max + 1)
    integrals = np.array([
        _slice_integral(
            pair, mono, n * T, T, slices, psi0, weight,
            "cook_integrand_partial_sums", excluded, gamma_min, aliasing_tol,
        )
        for n in Ns
    ])
    log_performance("cook_integrand_partial_sums", time.perf_counter() - start, N_max=N_max)
    return CookReport(
        Ns, integrals, np.cumsum(integrals),
        math.exp(-2.0 * stab.floquet_exponent / p), tuple(excluded),
    )


@dataclass(frozen=True)
class CookBound:
    """∫_{N₁T}^{N₂T}‖V·Ũ₀(t,0)ψ₀‖₂dt"""
    N1: int
    N2: int
    value: float
    excluded: Tuple[ExcludedPair, ...] = ()


def cook_bound(
    pair: FundamentalPair,
    mono: Monodromy,
    pot: PotentialSpec,
    psi0: WaveFunction,
    N1: int,
    N2: int,
    slices: int = 4 * DEFAULT_SLICES,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> CookBound:
    """波算子缺陷 ‖W_{N₂} − W_{N₁}‖ 的 Cook 上界"""
    if not 0 <= N1 < N2:
        raise InvalidArgument("cook_bound needs 0 <= N1 < N2", N1=N1, N2=N2)
    T = pair.period
    weight = lambda r: np.abs(potential_value(pot, r ** 2))
    excluded: List[ExcludedPair] = []
    value = sum(
        _slice_integral(pair, mono, n * T, T, slices, psi0, weight, "cook_bound", excluded, gamma_min, aliasing_tol)
        for n in range(N1, N2)
    )
    return CookBound(N1, N2, float(value), tuple(excluded))


@dataclass(frozen=True, eq=False)
class SigmaRReport:
    """Σ_R 的累積值"""
    R: float
    sigma: np.ndarray
    running: np.ndarray
    tau_im: float
    epsilon_limit: float
    excluded: Tuple[ExcludedPair, ...] = field(default_factory=tuple)

    @property
    def value(self) -> float:
        return float(self.running[-1]) if len(self.running) else 0.0

    def value_at(self, R: float) -> float:
        """σ ≤ R 的部分和"""
        idx = int(np.searchsorted(self.sigma, R, side="right"))
        return float(self.running[idx - 1]) if idx else 0.0

    def plateau_change(self, fraction: float = 0.25) -> float:
        """最後 fraction 區間的相對變化"""
        if not len(self.running) or self.value == 0.0:
            return 0.0
        earlier = self.value_at((1.0 - fraction) * self.R)
        return (self.value - earlier) / self.value


def sigma_R_quadrature(
    pair: FundamentalPair,
    mono: Monodromy,
    pot: PotentialSpec,
    phi: WaveFunction,
    lambda_spec: float,
    tau_im: float,
    R: float,
    dsigma: float,
    p: float = 6.0,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> SigmaRReport:
    """
    Σ_R = ∫₀^R σ·e^{τ_im·σ}·‖ρ₁·Ũ₀(σ,0)(ρ₂φ)‖₂ dσ 的複合中點法

    lambda_spec 只出現在模為 1 的相位中，不影響範數。

    Raises:
        EpsilonTooLarge: |τ_im|·T ≥ 2λ/p
        InvalidArgument: dσ > T/8 或 R ≤ 0
    """
    del lambda_spec
    stab = require_hyperbolic(mono, "sigma_R_quadrature")
    T = pair.period
    limit = 2.0 * stab.floquet_exponent / (p * T)
    if abs(tau_im) >= limit:
        raise EpsilonTooLarge(
            f"|tau_im| = {abs(tau_im)!r} violates |tau_im|*T < 2*lambda/p = {limit * T!r}",
            tau_im=tau_im, limit=limit,
        )
    if not R > 0:
        raise InvalidArgument("R must be positive", R=R)
    if not 0 < dsigma <= T / 8 * (1 + 1e-12):
        raise InvalidArgument("dsigma must lie in (0, T/8]", dsigma=dsigma)

    n = math.ceil(R / dsigma - 1e-9)
    h = R / n
    sigma = (np.arange(n) + 0.5) * h
    if phi.is_zero:
        return SigmaRReport(R, sigma, np.zeros(n), tau_im, limit)

    f = phi.multiplied(rho2(pot, phi.grid.r2()))
    weight = lambda r: rho1(pot, r ** 2)
    excluded: List[ExcludedPair] = []
    terms = np.zeros(n)
    start = time.perf_counter()
    for k, s in enumerate(sigma):
        norm = propagated_weight_norm(
            pair, mono, float(s), 0.0, f, weight, "sigma_R_quadrature", excluded, gamma_min, aliasing_tol
        )
        if norm is not None:
            terms[k] = h * s * math.exp(tau_im * s) * norm
    log_performance("sigma_R_quadrature", time.perf_counter() - start, steps=n)
    return SigmaRReport(R, sigma, np.cumsum(terms), tau_im, limit, tuple(excluded))


@dataclass(frozen=True)
class DefectReport:
    """‖W_{N₂} − W_{N₁}‖₂，W_N = Ũ(NT,0)*Ũ₀(NT,0)ψ₀"""
    N1: int
    N2: int
    defect: float
    psi0_norm: float
    max_escaped_fraction: float

    @property
    def relative_defect(self) -> float:
        return self.defect / self.psi0_norm if self.psi0_norm else 0.0


def _pulled_back(
    pair: FundamentalPair,
    mono: Monodromy,
    pot: Optional[PotentialSpec],
    psi0: WaveFunction,
    N: int,
    dt: float,
    escape_tol: float,
    gamma_min: float,
    aliasing_tol: float,
) -> Tuple[WaveFunction, float]:
    if N == 0:
        return psi0.copy(), escaped_mass_fraction(psi0)
    t = N * pair.period
    free = mehler_propagate(pair, mono, t, 0.0, psi0, gamma_min, aliasing_tol)
    escaped = escaped_mass_fraction(free)
    if escaped > escape_tol:
        get_event_bus().publish(
            create_grid_escape_event("wave_operator_defect", time=t, escaped_fraction=escaped, threshold=escape_tol)
        )
        raise GridEscape(
            f"free evolution leaves the grid by N={N} (frame mass {escaped:.2e})",
            N=N, escaped_fraction=escaped,
        )
    return strang_oracle(pair.field, pot, t, 0.0, dt, free), escaped


def wave_operator_defect(
    pair: FundamentalPair,
    mono: Monodromy,
    pot: Optional[PotentialSpec],
    psi0: WaveFunction,
    N1: int,
    N2: int,
    dt: float,
    escape_tol: float = DEFAULT_ESCAPE_TOL,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> DefectReport:
    """
    Ũ₀ 以 mehler_propagate 計算，Ũ(NT,0)* = Ũ(0,NT) 以含 V 的 strang_oracle 反向傳播

    Args:
        pot: 徑向位勢；None 或 v0 = 0 時 W_N ≡ ψ₀（至分裂誤差）
        N1, N2: 0 ≤ N1 < N2 ≤ 6
        dt: Strang 步長上限，須 ≤ N1·T/256（N1 = 0 時 ≤ N2·T/256）

    Raises:
        GridEscape: Ũ₀(NT,0)ψ₀ 外框質量超過 escape_tol
    """
    if not 0 <= N1 < N2 <= MAX_DEFECT_PERIODS:
        raise InvalidArgument(f"wave_operator_defect needs 0 <= N1 < N2 <= {MAX_DEFECT_PERIODS}", N1=N1, N2=N2)
    start = time.perf_counter()
    w1, e1 = _pulled_back(pair, mono, pot, psi0, N1, dt, escape_tol, gamma_min, aliasing_tol)
    w2, e2 = _pulled_back(pair, mono, pot, psi0, N2, dt, escape_tol, gamma_min, aliasing_tol)
    report = DefectReport(N1, N2, w2.distance(w1), psi0.l2_norm, max(e1, e2))
    log_performance("wave_operator_defect", time.perf_counter() - start, N1=N1, N2=N2)
    log.info(f"🌊 波算子缺陷 ({N1},{N2}) = {report.defect:.4e}")
    return report
