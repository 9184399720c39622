"""
計算過程事件定義
排除的時間對、網格逃逸與執行階段都以事件形式發佈，供運行清單收集
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

_sequence = itertools.count()


class EventType(Enum):
    """事件類型枚舉"""
    PAIR_EXCLUDED = "pair_excluded"
    GRID_ESCAPE = "grid_escape"
    RUN_STAGE = "run_stage"


@dataclass
class FloquetEvent:
    """計算事件基類"""
    event_type: EventType
    source: str = "unknown"
    data: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        # 序號代替時間戳，保證運行清單可重現
        self.sequence = next(_sequence)
        self.event_id = f"{self.event_type.value}_{self.sequence}"


@dataclass
class PairExcludedEvent(FloquetEvent):
    """(τ, s) 時間對被排除（焦散或混疊）"""
    event_type: EventType = field(default=EventType.PAIR_EXCLUDED, init=False)

    tau: float = 0.0
    s: float = 0.0
    gamma: float = 0.0
    reason: str = "CausticProximity"

    def __post_init__(self):
        super().__post_init__()
        self.data.update({
            'tau': self.tau,
            's': self.s,
            'gamma': self.gamma,
            'reason': self.reason
        })


@dataclass
class GridEscapeEvent(FloquetEvent):
    """外框質量超出容許值"""
    event_type: EventType = field(default=EventType.GRID_ESCAPE, init=False)

    time: float = 0.0
    escaped_fraction: float = 0.0
    threshold: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        self.data.update({
            'time': self.time,
            'escaped_fraction': self.escaped_fraction,
            'threshold': self.threshold
        })


@dataclass
class RunStageEvent(FloquetEvent):
    """子命令執行階段"""
    event_type: EventType = field(default=EventType.RUN_STAGE, init=False)

    command: str = ""
    stage: str = ""
    detail: Optional[str] = None

    def __post_init__(self):
        super().__post_init__()
        self.data.update({
            'command': self.command,
            'stage': self.stage,
            'detail': self.detail
        })


def create_pair_excluded_event(source: str, **kwargs) -> PairExcludedEvent:
    """創建時間對排除事件"""
    return PairExcludedEvent(source=source, **kwargs)


def create_grid_escape_event(source: str, **kwargs) -> GridEscapeEvent:
    """創建網格逃逸事件"""
    return GridEscapeEvent(source=source, **kwargs)


def create_run_stage_event(source: str, **kwargs) -> RunStageEvent:
    """創建執行階段事件"""
    return RunStageEvent(source=source, **kwargs)
