#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
錯誤類型定義
所有前置條件錯誤都繼承自 FloquetError，CLI 以類別名稱作為穩定的錯誤代碼
"""

from typing import Any, Dict, Optional


class FloquetError(Exception):
    """數值計算前置條件錯誤基類"""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    @property
    def code(self) -> str:
        """穩定的機器可讀錯誤名稱"""
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.message, "details": self.details}


class InvalidArgument(FloquetError):
    """數值參數違反前置條件（步長、指數、週期數等）"""


class ConfigError(FloquetError):
    """配置文件解析失敗"""

    def __init__(self, message: str, key: Optional[str] = None, location: Optional[str] = None, **details: Any):
        super().__init__(message, key=key, location=location, **details)
        self.key = key
        self.location = location


class StepTooCoarse(FloquetError):
    """積分步長過大，Wronskian 漂移超出容許值"""


class OverflowRisk(FloquetError):
    """延拓係數預計超過 1e12"""


class DegenerateZero(FloquetError):
    """零點處導數幾乎為零，與 Wronskian 恆等式矛盾"""


class IntervalContainsZero(FloquetError):
    """比值單調性檢查的區間內含分母零點"""


class InsufficientData(FloquetError):
    """擬合所需的資料點不足"""


class CausticProximity(FloquetError):
    """時間對 (τ, s) 過於接近焦散點"""


class AliasingRisk(FloquetError):
    """相位啁啾頻率超出網格 Nyquist 上限"""


class DivergentWeight(FloquetError):
    """權重函數的 L^p 範數發散"""


class NotHyperbolic(FloquetError):
    """需要雙曲型（D² > 4）場"""


class EpsilonTooLarge(FloquetError):
    """虛部位移違反 ε·T < 2λ/p"""


class GridEscape(FloquetError):
    """波函數質量到達網格外框"""


__all__ = [
    "FloquetError",
    "InvalidArgument",
    "ConfigError",
    "StepTooCoarse",
    "OverflowRisk",
    "DegenerateZero",
    "IntervalContainsZero",
    "InsufficientData",
    "CausticProximity",
    "AliasingRisk",
    "DivergentWeight",
    "NotHyperbolic",
    "EpsilonTooLarge",
    "GridEscape",
]
