#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
磁場與位勢模型
週期磁場剖面 B(t)、徑向冪律位勢 V(x)，以及 JSON 實驗配置文件
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from scipy import integrate
from scipy.interpolate import CubicSpline

from .errors import ConfigError, InvalidArgument


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ConstantProfile(_Frozen):
    """常數場 B(t) = B0"""
    kind: Literal["constant"] = "constant"
    B0: float


class PulsedProfile(_Frozen):
    """脈衝場：在 [onset, onset+T0) mod T 上為 B0，其餘為 0"""
    kind: Literal["pulsed"] = "pulsed"
    B0: float
    T0: float = Field(gt=0)
    onset: float = Field(default=0.0, ge=0)


class SinusoidalProfile(_Frozen):
    """正弦場 B(t) = Bdc + Bac·cos(2πt/T)"""
    kind: Literal["sinusoidal"] = "sinusoidal"
    Bdc: float
    Bac: float


class SampledProfile(_Frozen):
    """取樣場：在 [0, T] 內插值，外部精確週期延拓"""
    kind: Literal["sampled"] = "sampled"
    times: Tuple[float, ...]
    values: Tuple[float, ...]
    interpolation: Literal["linear", "cubic"] = "cubic"

    @model_validator(mode="after")
    def _check_samples(self) -> "SampledProfile":
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have the same length")
        minimum = 4 if self.interpolation == "cubic" else 2
        if len(self.times) < minimum:
            raise ValueError(f"{self.interpolation} interpolation needs at least {minimum} samples")
        if self.times[0] != 0.0:
            raise ValueError("times must start at 0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")
        if self.values[0] != self.values[-1]:
            raise ValueError("first and last values must match (periodicity)")
        return self


Profile = Annotated[
    Union[ConstantProfile, PulsedProfile, SinusoidalProfile, SampledProfile],
    Field(discriminator="kind"),
]


class FieldSpec(_Frozen):
    """週期磁場與粒子常數 (T, m, q)"""
    period: float = Field(gt=0)
    mass: float = Field(gt=0)
    charge: float
    profile: Profile

    @model_validator(mode="after")
    def _check_field(self) -> "FieldSpec":
        if self.charge == 0.0:
            raise ValueError("charge must be non-zero")
        prof = self.profile
        if isinstance(prof, PulsedProfile):
            if not prof.T0 < self.period:
                raise ValueError("pulsed profile requires 0 < T0 < period")
            if not prof.onset < self.period:
                raise ValueError("pulsed onset must lie in [0, period)")
        if isinstance(prof, SampledProfile):
            if not math.isclose(prof.times[-1], self.period, rel_tol=1e-12, abs_tol=0.0):
                raise ValueError("sampled times must span [0, period]")
        return self

    @property
    def T(self) -> float:
        return self.period

    @property
    def m(self) -> float:
        return self.mass

    @property
    def q(self) -> float:
        return self.charge


class PotentialSpec(_Frozen):
    """徑向冪律位勢 V(x) = v0·(1+|x|²)^(−ρ/2)"""
    v0: float
    rho: float = Field(gt=0)


class ExperimentDocument(FieldSpec):
    """JSON 配置文件：磁場參數加上可選位勢"""
    potential: Optional[PotentialSpec] = None

    def field_spec(self) -> FieldSpec:
        return FieldSpec(
            period=self.period, mass=self.mass, charge=self.charge, profile=self.profile
        )


# ------------------------------------------------------------------
# 磁場剖面
# ------------------------------------------------------------------

def is_piecewise_constant(spec: FieldSpec) -> bool:
    """常數與脈衝剖面有精確的分段旋轉/剪切矩陣"""
    return isinstance(spec.profile, (ConstantProfile, PulsedProfile))


def piecewise_segments(spec: FieldSpec) -> List[Tuple[float, float, float]]:
    """
    將 [0, T] 切成磁場為常數的區段

    Returns:
        List[(start, end, B)]，依時間排序且無零長度區段
    """
    T = spec.period
    prof = spec.profile
    if isinstance(prof, ConstantProfile):
        return [(0.0, T, prof.B0)]
    if not isinstance(prof, PulsedProfile):
        raise InvalidArgument(f"profile '{prof.kind}' is not piecewise constant")

    start, end = prof.onset, prof.onset + prof.T0
    if end <= T:
        raw = [(0.0, start, 0.0), (start, end, prof.B0), (end, T, 0.0)]
    else:
        wrap = end - T
        raw = [(0.0, wrap, prof.B0), (wrap, start, 0.0), (start, T, prof.B0)]
    return [seg for seg in raw if seg[1] > seg[0]]


def _pulse_on(prof: PulsedProfile, period: float, s: np.ndarray) -> np.ndarray:
    return np.mod(s - prof.onset, period) < prof.T0


@lru_cache(maxsize=64)
def _sampled_interpolant(prof: SampledProfile):
    times = np.asarray(prof.times)
    values = np.asarray(prof.values)
    if prof.interpolation == "cubic":
        return CubicSpline(times, values, bc_type="periodic")
    return lambda s: np.interp(s, times, values)


def evaluate_field(spec: FieldSpec, t):
    """
    計算 B(t mod T)

    Args:
        spec: 磁場規格
        t: 時間（純量或陣列）

    Returns:
        與 t 同形狀的磁場強度
    """
    s = np.mod(np.asarray(t, dtype=float), spec.period)
    prof = spec.profile
    if isinstance(prof, ConstantProfile):
        out = np.full_like(s, prof.B0)
    elif isinstance(prof, PulsedProfile):
        out = np.where(_pulse_on(prof, spec.period, s), prof.B0, 0.0)
    elif isinstance(prof, SinusoidalProfile):
        out = prof.Bdc + prof.Bac * np.cos(2.0 * np.pi * s / spec.period)
    else:
        out = np.asarray(_sampled_interpolant(prof)(s), dtype=float)
    return float(out) if np.ndim(t) == 0 else out


def omega(spec: FieldSpec, t):
    """迴旋頻率 ω(t) = qB(t)/m"""
    return spec.charge * evaluate_field(spec, t) / spec.mass


def _omega_partial(spec: FieldSpec, s: float) -> float:
    """∫₀ˢ ω，s ∈ [0, T]"""
    if s <= 0.0:
        return 0.0
    if is_piecewise_constant(spec):
        total = 0.0
        for start, end, B in piecewise_segments(spec):
            overlap = min(end, s) - start
            if overlap > 0.0:
                total += B * overlap
        return spec.charge * total / spec.mass
    knots = field_breakpoints(spec, 0.0, s)
    value, _ = integrate.quad(
        lambda u: omega(spec, u), 0.0, s,
        points=knots if len(knots) else None, limit=200, epsabs=1e-14, epsrel=1e-13,
    )
    return value


def omega_integral(spec: FieldSpec, t: float) -> float:
    """
    旋轉角 Ω(t) = ∫₀ᵗ ω(s) ds，按週期可加

    Args:
        spec: 磁場規格
        t: 時間 ≥ 0
    """
    if t < 0:
        raise InvalidArgument("omega_integral requires t >= 0", t=t)
    if isinstance(spec.profile, ConstantProfile):
        return spec.charge * spec.profile.B0 * t / spec.mass
    T = spec.period
    n_periods = math.floor(t / T)
    s = t - n_periods * T
    if s >= T:
        n_periods += 1
        s -= T
    per_period = _omega_partial(spec, T)
    return n_periods * per_period + _omega_partial(spec, max(s, 0.0))


def field_breakpoints(spec: FieldSpec, t0: float, t1: float) -> np.ndarray:
    """
    B 在 (t0, t1) 內的不連續點或取樣節點

    Returns:
        升冪排列的時間陣列（不含端點）
    """
    prof = spec.profile
    T = spec.period
    if isinstance(prof, PulsedProfile):
        base = sorted({seg[0] for seg in piecewise_segments(spec)})
    elif isinstance(prof, SampledProfile):
        base = list(prof.times[:-1])
    else:
        return np.empty(0)

    lo, hi = min(t0, t1), max(t0, t1)
    margin = 1e-12 * T
    found = []
    for k in range(math.floor(lo / T), math.floor(hi / T) + 1):
        for b in base:
            x = k * T + b
            if lo + margin < x < hi - margin:
                found.append(x)
    return np.array(sorted(found))


# ------------------------------------------------------------------
# 位勢
# ------------------------------------------------------------------

def potential_value(pot: PotentialSpec, r2):
    """V 作為 |x|² 的函數"""
    return pot.v0 * (1.0 + np.asarray(r2, dtype=float)) ** (-pot.rho / 2.0)


def rho1(pot: PotentialSpec, r2):
    """ρ₁ = |V|^(1/2)"""
    return np.sqrt(np.abs(potential_value(pot, r2)))


def rho2(pot: PotentialSpec, r2):
    """ρ₂ = sign(V)·|V|^(1/2)"""
    v = potential_value(pot, r2)
    return np.sign(v) * np.sqrt(np.abs(v))


@dataclass(frozen=True)
class LpNorm:
    """‖ρⱼ‖_p 與有限性標記"""
    value: float
    finite: bool


def potential_lp_norm(pot: PotentialSpec, component: Literal["rho1", "rho2"], p: float) -> LpNorm:
    """
    以徑向積分計算 ‖ρⱼ‖_p

    (2π ∫₀^∞ r·|v0|^(p/2)(1+r²)^(−pρ/4) dr)^(1/p)，當 pρ/4 ≤ 1 時發散。
    """
    if component not in ("rho1", "rho2"):
        raise InvalidArgument(f"unknown weight component '{component}'")
    if p < 1:
        raise InvalidArgument("potential_lp_norm requires p >= 1", p=p)
    if pot.v0 == 0.0:
        return LpNorm(0.0, True)
    exponent = p * pot.rho / 4.0
    if exponent <= 1.0:
        return LpNorm(math.inf, False)

    # u = r² 代換：∫₀^∞ r(1+r²)^(−k) dr = ½∫₀^∞ (1+u)^(−k) du
    radial, _ = integrate.quad(
        lambda u: (1.0 + u) ** (-exponent), 0.0, np.inf, epsabs=0.0, epsrel=1e-12, limit=200
    )
    total = 2.0 * math.pi * abs(pot.v0) ** (p / 2.0) * 0.5 * radial
    return LpNorm(total ** (1.0 / p), True)


# ------------------------------------------------------------------
# 配置文件
# ------------------------------------------------------------------

def describe_validation_error(exc: ValidationError) -> str:
    """將 pydantic 錯誤轉成指名鍵與位置的診斷訊息"""
    lines = []
    for err in exc.errors():
        loc = ".".join(str(part) for part in err.get("loc", ())) or "<root>"
        if err.get("type") == "extra_forbidden":
            key = err["loc"][-1] if err.get("loc") else "?"
            lines.append(f"unknown key '{key}' at {loc}")
        else:
            lines.append(f"{loc}: {err.get('msg')}")
    return "; ".join(lines)


def parse_experiment(text: str, source: str = "<string>") -> ExperimentDocument:
    """解析 JSON 配置文字"""
    try:
        return ExperimentDocument.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0] if exc.errors() else {}
        loc = first.get("loc", ())
        raise ConfigError(
            f"{source}: {describe_validation_error(exc)}",
            key=str(loc[-1]) if loc else None,
            location=".".join(str(part) for part in loc) or None,
        ) from exc


def load_experiment(path: Union[str, Path]) -> ExperimentDocument:
    """
    讀取 JSON 配置文件

    Raises:
        ConfigError: 文件不存在、JSON 無效或含未知鍵
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config '{path}': {exc}", location=str(path)) from exc
    return parse_experiment(text, source=str(path))
