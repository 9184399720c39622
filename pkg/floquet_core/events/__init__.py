"""
事件模組
數值核心與輸出層之間的解耦通訊
"""
from .event_bus import EventBus, EventRecord, get_event_bus, reset_event_bus
from .events import (
    EventType,
    FloquetEvent,
    PairExcludedEvent,
    GridEscapeEvent,
    RunStageEvent,
    create_pair_excluded_event,
    create_grid_escape_event,
    create_run_stage_event,
)

__all__ = [
    'EventBus',
    'EventRecord',
    'get_event_bus',
    'reset_event_bus',
    'EventType',
    'FloquetEvent',
    'PairExcludedEvent',
    'GridEscapeEvent',
    'RunStageEvent',
    'create_pair_excluded_event',
    'create_grid_escape_event',
    'create_run_stage_event',
]
