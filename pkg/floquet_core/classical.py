#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
頻閃古典軌跡與成長率擬合
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from .errors import InsufficientData, InvalidArgument, OverflowRisk
from .hill import MAX_EXTENSION_PERIODS, Monodromy, predicted_log_growth
from .utils.logger import ContextualLogger

log = ContextualLogger("classical")


@dataclass(frozen=True)
class PhaseState:
    """相空間狀態 (x, p)，各為二維向量"""
    x: tuple
    p: tuple

    def __post_init__(self):
        values = np.concatenate([np.asarray(self.x, dtype=float), np.asarray(self.p, dtype=float)])
        if values.shape != (4,) or not np.all(np.isfinite(values)):
            raise InvalidArgument("phase state needs finite two-component x and p")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))

    @property
    def norm_x(self) -> float:
        return math.hypot(*self.x)


def rotation(theta: float) -> np.ndarray:
    """R̂(θ) = [[cos θ, sin θ], [−sin θ, cos θ]]"""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def _check_periods(mono: Monodromy, N: int):
    if N < 0 or N > MAX_EXTENSION_PERIODS:
        raise InvalidArgument(f"N must lie in [0, {MAX_EXTENSION_PERIODS}]", N=N)
    if predicted_log_growth(mono, N) > math.log(1e12):
        raise OverflowRisk(f"stroboscopic map for N={N} would exceed 1e12", N=N)


def symplectic_map(mono: Monodromy, Omega_T: float, N: int) -> np.ndarray:
    """
    頻閃映射 (x, p) ↦ (x(NT), p(NT)) 的 4×4 矩陣

    狀態排列為 (x₁, x₂, p₁, p₂)。
    """
    _check_periods(mono, N)
    L_N = np.linalg.matrix_power(mono.L_mat, N)
    return np.kron(L_N, rotation(N * Omega_T / 2.0))


def propagate_stroboscopic(mono: Monodromy, Omega_T: float, state: PhaseState, N: int) -> PhaseState:
    """
    x(NT), p(NT) = 𝓛^N · (R̂(NΩ(T)/2)x, R̂(NΩ(T)/2)p)

    Args:
        mono: 單值矩陣
        Omega_T: 單週期旋轉角 Ω(T)
        state: 初始狀態
        N: 週期數，0 ≤ N ≤ 64
    """
    if N == 0:
        return state
    vec = symplectic_map(mono, Omega_T, N) @ np.array(state.x + state.p)
    return PhaseState(tuple(vec[:2]), tuple(vec[2:]))


def stroboscopic_trajectory(mono: Monodromy, Omega_T: float, state: PhaseState, N: int) -> List[PhaseState]:
    """N = 0..N 的整個頻閃軌跡"""
    return [propagate_stroboscopic(mono, Omega_T, state, n) for n in range(N + 1)]


class GrowthModel(str, Enum):
    """成長模式"""
    EXPONENTIAL = "Exponential"
    LINEAR = "Linear"
    BOUNDED = "Bounded"


@dataclass(frozen=True)
class GrowthFit:
    """成長率擬合結果"""
    model: GrowthModel
    rate: Optional[float]
    slope: Optional[float]
    quality: float
    prefactor: float
    quadratic_coefficient: float
    exponential_residual: float
    linear_residual: float


def growth_fit(norms: Sequence[float], N0: int = 0) -> GrowthFit:
    """
    對 ‖x(NT)‖（N = N₀..N₁）擬合指數、線性與有界三種模式

    有界判準為 max/min < 10；否則比較對數擬合的均方根殘差與線性擬合的相對均方根殘差。
    收縮本徵方向上的狀態會衰減而不是成長，呼叫端應丟棄 ‖x(N₁T)‖ < ‖x(N₀T)‖ 的狀態。

    Raises:
        InsufficientData: N₁ − N₀ < 8
    """
    y = np.asarray(norms, dtype=float)
    if y.ndim != 1 or len(y) < 9:
        raise InsufficientData("growth_fit needs N1 - N0 >= 8", points=int(y.size))
    if np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise InvalidArgument("growth_fit needs positive finite norms")
    n = np.arange(N0, N0 + len(y), dtype=float)

    log_coef = np.polyfit(n, np.log(y), 1)
    exp_resid = float(np.sqrt(np.mean((np.polyval(log_coef, n) - np.log(y)) ** 2)))
    lin_coef = np.polyfit(n, y, 1)
    lin_resid = float(np.sqrt(np.mean((np.polyval(lin_coef, n) - y) ** 2)) / np.mean(y))
    quad_coef = np.polyfit(n, y, 2)

    ratio = float(np.max(y) / np.min(y))
    if ratio < 10.0:
        model = GrowthModel.BOUNDED
        quality = ratio
    elif exp_resid < lin_resid:
        model = GrowthModel.EXPONENTIAL
        quality = exp_resid
    else:
        model = GrowthModel.LINEAR
        quality = lin_resid

    fit = GrowthFit(
        model=model,
        rate=float(log_coef[0]) if model is GrowthModel.EXPONENTIAL else None,
        slope=float(lin_coef[0]) if model is GrowthModel.LINEAR else None,
        quality=quality,
        prefactor=float(math.exp(log_coef[1])) if model is GrowthModel.EXPONENTIAL else float(lin_coef[1]),
        quadratic_coefficient=float(quad_coef[0]),
        exponential_residual=exp_resid,
        linear_residual=lin_resid,
    )
    log.debug(f"成長擬合 {fit.model.value} quality={quality:.3e}")
    return fit
