#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
𝒦 = L²([0,T]; L²(ℝ²)) 的切片表示與自由 Floquet 演化的範數

𝒦 中的向量以 M 個中點切片 tᵢ = (i + ½)T/M 表示；∫₀ᵀ ds 以中點法求和。
自由 Floquet 演化以切片搬運實現：(e^{−iσĤ₀}φ)(t) = Ũ₀(t, t−σ)φ(t−σ)。
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..errors import AliasingRisk, CausticProximity, GridEscape, InvalidArgument, NotHyperbolic
from ..events import create_pair_excluded_event, get_event_bus
from ..hill import FundamentalPair, Monodromy, classify
from ..models import PotentialSpec, rho1, rho2
from ..quantum.estimates import weight_norms, weighted_propagated_norm
from ..quantum.grid import WaveFunction
from ..quantum.propagators import DEFAULT_ALIASING_TOL, DEFAULT_GAMMA_MIN, gamma
from ..utils.logger import ContextualLogger

log = ContextualLogger("scattering")

DEFAULT_SLICES = 8


@dataclass(frozen=True)
class ExcludedPair:
    """因焦散、混疊或網格逃逸而排除的時間對"""
    tau: float
    s: float
    gamma: float
    reason: str


def exclude_pair(source: str, tau: float, s: float, gamma_value: float, reason: str) -> ExcludedPair:
    """記錄並發佈排除事件"""
    log.warning(f"⚠️ 排除時間對 (tau={tau:.6g}, s={s:.6g}) Gamma={gamma_value:.3e}: {reason}")
    get_event_bus().publish(
        create_pair_excluded_event(source, tau=tau, s=s, gamma=gamma_value, reason=reason)
    )
    return ExcludedPair(tau, s, gamma_value, reason)


def propagated_weight_norm(
    pair: FundamentalPair,
    mono: Monodromy,
    tau: float,
    s: float,
    f: WaveFunction,
    weight: Callable[[np.ndarray], np.ndarray],
    source: str,
    excluded: List[ExcludedPair],
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> Optional[float]:
    """
    ‖w·Ũ₀(τ,s)f‖₂；不可靠的時間對回傳 None 並加入 excluded
    """
    if f.is_zero:
        return 0.0
    g = gamma(pair, mono, tau, s)
    if tau != s and g / pair.field.mass < gamma_min:
        excluded.append(exclude_pair(source, tau, s, g, CausticProximity.__name__))
        return None
    try:
        return weighted_propagated_norm(pair, mono, tau, s, f, weight, gamma_min, aliasing_tol)
    except (CausticProximity, AliasingRisk, GridEscape) as exc:
        excluded.append(exclude_pair(source, tau, s, g, exc.code))
        return None


@dataclass(frozen=True, eq=False)
class FloquetVector:
    """𝒦 中的向量：M 個中點切片"""
    slices: Tuple[WaveFunction, ...]
    period: float

    def __post_init__(self):
        slices = tuple(self.slices)
        if not slices:
            raise InvalidArgument("FloquetVector needs at least one slice")
        grid = slices[0].grid
        if any(sl.grid != grid for sl in slices):
            raise InvalidArgument("all Floquet slices must share one grid")
        if not self.period > 0:
            raise InvalidArgument("period must be positive", period=self.period)
        object.__setattr__(self, "slices", slices)

    @property
    def M(self) -> int:
        return len(self.slices)

    @property
    def grid(self):
        return self.slices[0].grid

    @property
    def dt(self) -> float:
        return self.period / self.M

    def slice_times(self) -> np.ndarray:
        return (np.arange(self.M) + 0.5) * self.dt

    def k_norm(self) -> float:
        """‖φ‖_𝒦 = ((T/M)·Σᵢ‖φᵢ‖₂²)^{1/2}"""
        return math.sqrt(self.dt * sum(sl.l2_norm ** 2 for sl in self.slices))

    @property
    def is_zero(self) -> bool:
        return all(sl.is_zero for sl in self.slices)

    @classmethod
    def constant(cls, psi: WaveFunction, period: float, M: int = DEFAULT_SLICES) -> "FloquetVector":
        """每個切片都等於 psi"""
        return cls(tuple(psi.copy() for _ in range(M)), period)

    @classmethod
    def from_function(
        cls, make: Callable[[float], WaveFunction], period: float, M: int = DEFAULT_SLICES
    ) -> "FloquetVector":
        """以切片時間 tᵢ 呼叫 make 建立各切片"""
        times = (np.arange(M) + 0.5) * period / M
        return cls(tuple(make(float(t)) for t in times), period)


@dataclass(frozen=True, eq=False)
class FloquetNormTable:
    """
    每個切片時間 tᵢ 的 ∫₀ᵀ‖ρ₁Ũ₀(tᵢ+NT, s)ρ₂φ(s)‖₂ds 與其 Γ^{−2/p} 上界（C = 1）

    被排除的時間對不計入 values 與 bounds。
    """
    N: int
    p: float
    times: np.ndarray
    values: np.ndarray
    bounds: np.ndarray
    excluded: Tuple[ExcludedPair, ...] = field(default_factory=tuple)

    @property
    def bound_ratios(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.bounds > 0, self.values / self.bounds, 0.0)


def require_hyperbolic(mono: Monodromy, operation: str):
    stab = classify(mono)
    if not stab.is_hyperbolic:
        raise NotHyperbolic(
            f"{operation} requires a hyperbolic field, got {stab.regime.value}",
            regime=stab.regime.value, D=stab.discriminant,
        )
    return stab


def floquet_free_norm(
    pair: FundamentalPair,
    mono: Monodromy,
    N: int,
    pot: PotentialSpec,
    phi: FloquetVector,
    p: float,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> FloquetNormTable:
    """
    以切片中點法計算 ∫₀ᵀ‖ρ₁·Ũ₀(t+NT, s)(ρ₂·φ(s))‖₂ ds，並逐項比較
    Γ(t+NT, s)^{−2/p}·‖ρ₁‖_p·‖ρ₂‖_p·‖φ(s)‖₂

    Args:
        pair, mono: 基本解與單值矩陣
        N: 週期位移
        pot: 徑向位勢
        phi: 𝒦 向量
        p: 權重指數（需 p·ρ > 4）

    Raises:
        NotHyperbolic: 磁場非雙曲型
        DivergentWeight: ‖ρⱼ‖_p 發散
    """
    if N < 0:
        raise InvalidArgument("N must be non-negative", N=N)
    if abs(phi.period - pair.period) > 1e-12 * pair.period:
        raise InvalidArgument("Floquet vector period differs from the field period")
    require_hyperbolic(mono, "floquet_free_norm")
    n1, n2 = weight_norms(pot, p)

    times = phi.slice_times()
    grid = phi.grid
    r2 = grid.r2()
    weight_out = lambda r: rho1(pot, r ** 2)
    sources = [sl.multiplied(rho2(pot, r2)) for sl in phi.slices]
    slice_norms = [sl.l2_norm for sl in phi.slices]

    excluded: List[ExcludedPair] = []
    values = np.zeros(phi.M)
    bounds = np.zeros(phi.M)
    for i, t in enumerate(times):
        tau = float(t + N * pair.period)
        for j, s in enumerate(times):
            if sources[j].is_zero:
                continue
            g = gamma(pair, mono, tau, float(s))
            # N = 0 的對角線 Γ = 0
            if g / pair.field.mass < gamma_min:
                excluded.append(exclude_pair("floquet_free_norm", tau, float(s), g, CausticProximity.__name__))
                continue
            norm = propagated_weight_norm(
                pair, mono, tau, float(s), sources[j], weight_out,
                "floquet_free_norm", excluded, gamma_min, aliasing_tol,
            )
            if norm is None:
                continue
            values[i] += phi.dt * norm
            bounds[i] += phi.dt * g ** (-2.0 / p) * n1 * n2 * slice_norms[j]

    log.debug(f"Floquet 範數表 N={N}: max={float(np.max(values)):.4e}, 排除 {len(excluded)} 對")
    return FloquetNormTable(N, p, times, values, bounds, tuple(excluded))


def floquet_free_evolution_norm(
    pair: FundamentalPair,
    mono: Monodromy,
    pot: PotentialSpec,
    phi: FloquetVector,
    sigma: float,
    gamma_min: float = DEFAULT_GAMMA_MIN,
    aliasing_tol: float = DEFAULT_ALIASING_TOL,
) -> float:
    """
    ‖ρ₁·e^{−iσĤ₀}(ρ₂φ)‖_𝒦，σ 為切片間距 T/M 的非負整數倍

    切片 tᵢ 取自切片 tⱼ，j = (i − r) mod M，並以 Ũ₀(tᵢ + kT, tⱼ) 搬運，
    k = (j − i + r)/M 為跨越的週期數。

    Raises:
        CausticProximity / AliasingRisk / GridEscape: 任一搬運不可靠
    """
    if sigma < 0:
        raise InvalidArgument("sigma must be non-negative", sigma=sigma)
    shift = sigma / phi.dt
    r = int(round(shift))
    if abs(shift - r) > 1e-9 * max(1.0, shift):
        raise InvalidArgument("sigma must be a multiple of the slice spacing T/M", sigma=sigma)

    r2 = phi.grid.r2()
    weight_out = lambda rad: rho1(pot, rad ** 2)
    times = phi.slice_times()
    total = 0.0
    for i in range(phi.M):
        j = (i - r) % phi.M
        k = (j - i + r) // phi.M
        tau = float(times[i] + k * phi.period)
        f = phi.slices[j].multiplied(rho2(pot, r2))
        norm = weighted_propagated_norm(
            pair, mono, tau, float(times[j]), f, weight_out, gamma_min, aliasing_tol
        )
        total += norm ** 2
    return math.sqrt(phi.dt * total)
