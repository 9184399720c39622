#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
二維正方形網格與波函數
振幅 amplitudes[i, j] 對應 (x₁, x₂) = (−L + i·dx, −L + j·dx)
"""

import struct
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from scipy import fft

from ..errors import ConfigError, InvalidArgument

ALLOWED_SIZES = (128, 256, 512, 1024)
_HEADER = struct.Struct("<IId")


@dataclass(frozen=True)
class GridSpec:
    """n×n 網格，半寬 L，間距 dx = 2L/n"""
    n: int
    half_extent: float

    def __post_init__(self):
        if self.n not in ALLOWED_SIZES:
            raise InvalidArgument(f"grid size n must be one of {ALLOWED_SIZES}", n=self.n)
        if not self.half_extent > 0:
            raise InvalidArgument("grid half extent must be positive", L=self.half_extent)

    @property
    def L(self) -> float:
        return self.half_extent

    @property
    def dx(self) -> float:
        return 2.0 * self.half_extent / self.n

    @property
    def axis(self) -> np.ndarray:
        return -self.half_extent + np.arange(self.n) * self.dx

    @property
    def k_axis(self) -> np.ndarray:
        """FFT 順序的角波數 2π·fftfreq"""
        return 2.0 * np.pi * fft.fftfreq(self.n, d=self.dx)

    @property
    def k_nyquist(self) -> float:
        return np.pi / self.dx

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.axis, self.axis, indexing="ij")

    def r2(self) -> np.ndarray:
        x1, x2 = self.mesh()
        return x1 ** 2 + x2 ** 2

    def k2(self) -> np.ndarray:
        k1, k2 = np.meshgrid(self.k_axis, self.k_axis, indexing="ij")
        return k1 ** 2 + k2 ** 2

    def frame_mask(self, fraction: float = 0.1) -> np.ndarray:
        """外框：任一座標的 |x| 超過 (1 − fraction)·L"""
        x1, x2 = self.mesh()
        edge = (1.0 - fraction) * self.half_extent
        return (np.abs(x1) > edge) | (np.abs(x2) > edge)

    def spectral_frame_mask(self, fraction: float = 0.1) -> np.ndarray:
        """FFT 順序下 |k| 任一分量超過 (1 − fraction)·k_Nyquist 的區域"""
        k1, k2 = np.meshgrid(self.k_axis, self.k_axis, indexing="ij")
        edge = (1.0 - fraction) * self.k_nyquist
        return (np.abs(k1) > edge) | (np.abs(k2) > edge)


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """網格上的複振幅"""
    grid: GridSpec
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.grid.n, self.grid.n):
            raise InvalidArgument(
                f"amplitudes shape {amps.shape} does not match grid n={self.grid.n}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidArgument("wavefunction amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @cached_property
    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)) * self.grid.dx)

    @cached_property
    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes)) * self.grid.dx ** 2)

    @cached_property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.amplitudes)))

    def scaled(self, factor: complex) -> "WaveFunction":
        return WaveFunction(self.grid, self.amplitudes * factor)

    def multiplied(self, weight: np.ndarray) -> "WaveFunction":
        return WaveFunction(self.grid, self.amplitudes * weight)

    def copy(self) -> "WaveFunction":
        return WaveFunction(self.grid, self.amplitudes.copy())

    def distance(self, other: "WaveFunction") -> float:
        """l2 距離"""
        if other.grid != self.grid:
            raise InvalidArgument("wavefunctions live on different grids")
        return float(np.sqrt(np.sum(np.abs(self.amplitudes - other.amplitudes) ** 2)) * self.grid.dx)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.amplitudes)


def gaussian(
    grid: GridSpec,
    width: float = 1.0,
    center: Tuple[float, float] = (0.0, 0.0),
    momentum: Tuple[float, float] = (0.0, 0.0),
) -> WaveFunction:
    """
    歸一化高斯態 (π s²)^(−1/2)·exp(−|x−c|²/(2s²) + i k·x)

    width = 1 時為 π^(−1/2)e^(−|x|²/2)，二階矩為 1。
    """
    x1, x2 = grid.mesh()
    d2 = (x1 - center[0]) ** 2 + (x2 - center[1]) ** 2
    phase = momentum[0] * x1 + momentum[1] * x2
    amps = np.exp(-d2 / (2.0 * width ** 2) + 1j * phase) / (np.sqrt(np.pi) * width)
    return WaveFunction(grid, amps)


def escaped_mass_fraction(psi: WaveFunction, fraction: float = 0.1) -> float:
    """外框 l2 質量佔總質量的比例"""
    weights = np.abs(psi.amplitudes) ** 2
    total = float(np.sum(weights))
    if total == 0.0:
        return 0.0
    return float(np.sum(weights[psi.grid.frame_mask(fraction)]) / total)


def spectral_edge_fraction(amplitudes: np.ndarray, grid: GridSpec, fraction: float = 0.1) -> float:
    """頻譜外框能量比例（混疊指標）"""
    spectrum = np.abs(fft.fft2(amplitudes)) ** 2
    total = float(np.sum(spectrum))
    if total == 0.0:
        return 0.0
    return float(np.sum(spectrum[grid.spectral_frame_mask(fraction)]) / total)


def save_wavefunction(path: Union[str, Path], psi: WaveFunction):
    """
    二進位快照：16 位元組標頭 (n: u32, reserved: u32, L: f64，小端序)，
    接著 n² 個 (實部, 虛部) f64，列優先
    """
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(psi.grid.n, 0, psi.grid.half_extent))
        fh.write(np.ascontiguousarray(psi.amplitudes, dtype="<c16").tobytes(order="C"))


def load_wavefunction(path: Union[str, Path]) -> WaveFunction:
    """讀取二進位快照"""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise ConfigError(f"wavefunction file '{path}' is truncated", location=str(path))
    n, _reserved, half_extent = _HEADER.unpack_from(data)
    expected = _HEADER.size + n * n * 16
    if len(data) != expected:
        raise ConfigError(
            f"wavefunction file '{path}' has {len(data)} bytes, expected {expected}",
            location=str(path),
        )
    amps = np.frombuffer(data, dtype="<c16", offset=_HEADER.size).reshape(n, n)
    return WaveFunction(GridSpec(n, half_extent), amps.astype(np.complex128))
