#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
系統配置
數值容許值、網格、積分器與散射參數，以及單次執行的 RunConfig
"""

import hashlib
import json
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, field_validator

from .errors import ConfigError
from .models import ExperimentDocument
from .quantum.grid import ALLOWED_SIZES, GridSpec


@dataclass(frozen=True)
class ToleranceConfig:
    """數值容許值"""
    tau_D: float = 1e-9          # |D² − 4| ≤ tau_D 視為拋物型
    gamma_min: float = 1e-3      # 焦散門檻 Γ/m
    wronskian_tol: float = 1e-9
    aliasing_tol: float = 1e-8   # 頻譜外框能量
    escape_tol: float = 1e-3     # 空間外框質量
    zero_xtol: float = 1e-12


@dataclass(frozen=True)
class GridConfig:
    """網格配置"""
    n: int = 512
    half_extent: float = 20.0

    def spec(self) -> GridSpec:
        return GridSpec(self.n, self.half_extent)


@dataclass(frozen=True)
class IntegratorConfig:
    """Hill 方程積分配置"""
    steps_per_period: int = 4096
    method: str = "auto"


@dataclass(frozen=True)
class ScatteringConfig:
    """散射計算配置"""
    slices: int = 8
    window_fraction: float = 1e-4
    pad_factor: int = 2


class RunConfig(BaseModel):
    """單次 CLI 執行的完整配置，可無損序列化"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    config_path: str
    document: ExperimentDocument
    grid: GridConfig = GridConfig()
    tolerances: ToleranceConfig = ToleranceConfig()
    integrator: IntegratorConfig = IntegratorConfig()
    scattering: ScatteringConfig = ScatteringConfig()
    output_dir: str = "."

    @field_validator("tolerances")
    @classmethod
    def _positive_tolerances(cls, value: ToleranceConfig) -> ToleranceConfig:
        for key, v in asdict(value).items():
            if not v > 0:
                raise ValueError(f"tolerance {key} must be positive, got {v!r}")
        return value

    @field_validator("grid")
    @classmethod
    def _valid_grid(cls, value: GridConfig) -> GridConfig:
        if value.n not in ALLOWED_SIZES:
            raise ValueError(f"grid n must be one of {ALLOWED_SIZES}, got {value.n}")
        if not value.half_extent > 0:
            raise ValueError("grid half_extent must be positive")
        return value

    def computation_dict(self) -> Dict[str, Any]:
        """影響計算結果的部分（不含路徑）"""
        data = self.model_dump(mode="json")
        data.pop("config_path")
        data.pop("output_dir")
        return data

    @property
    def config_hash(self) -> str:
        canonical = json.dumps(self.computation_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def with_overrides(self, **tolerances: Optional[float]) -> "RunConfig":
        """以非 None 的值覆寫容許值"""
        changes = {k: v for k, v in tolerances.items() if v is not None}
        if not changes:
            return self
        data = self.model_dump()
        data["tolerances"] = asdict(replace(self.tolerances, **changes))
        return RunConfig.model_validate(data)

    def ensure_output_dir(self) -> Path:
        out = Path(self.output_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"output directory '{out}' is not writable: {e}", key="out") from e
        if not os.access(out, os.W_OK):
            raise ConfigError(f"output directory '{out}' is not writable", key="out")
        return out


class FloquetSettings:
    """環境變數設定（皆為可選）"""

    def __init__(self, env_file: Optional[Path] = None):
        load_dotenv(env_file)
        self.log_level = os.getenv("LOG_LEVEL", "WARNING")
        log_dir = os.getenv("FLOQUET_LOG_DIR")
        self.log_dir = Path(log_dir) if log_dir else None
        self.threads = int(os.getenv("FLOQUET_THREADS", "0"))

    def resolve_threads(self, requested: int) -> int:
        """0 表示自動"""
        threads = requested or self.threads
        return threads if threads > 0 else (os.cpu_count() or 1)
