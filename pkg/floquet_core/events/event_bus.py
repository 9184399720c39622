"""
單次執行的事件紀錄
數值核心只發佈事件；運行清單依類型取回排除的時間對與網格逃逸
"""

import threading
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from loguru import logger

from .events import EventType, FloquetEvent


@dataclass(frozen=True)
class EventRecord:
    """已發佈事件的快照"""
    event_type: EventType
    source: str
    event_id: str
    data: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.data, source=self.source)


class EventBus:
    """
    同步事件紀錄

    掃描與色散子命令在多個執行緒中發佈，紀錄依發佈順序保存。
    """

    def __init__(self):
        self._records: List[EventRecord] = []
        self._counts: Counter = Counter()
        self._lock = threading.Lock()

    def publish(self, event: FloquetEvent) -> EventRecord:
        record = EventRecord(event.event_type, event.source, event.event_id, dict(event.data))
        with self._lock:
            self._records.append(record)
            self._counts[event.event_type] += 1
        logger.debug(f"📨 {record.event_id} 來自 {record.source}")
        return record

    def events_of(self, event_type: EventType) -> List[EventRecord]:
        """按發佈順序取出某類型的全部事件"""
        with self._lock:
            return [r for r in self._records if r.event_type is event_type]

    def counts(self) -> Dict[str, int]:
        with self._lock:
            return {t.value: self._counts[t] for t in EventType if self._counts[t]}


_global_event_bus: Optional[EventBus] = None


def get_event_bus() -> EventBus:
    """獲取全域事件總線實例"""
    global _global_event_bus
    if _global_event_bus is None:
        _global_event_bus = EventBus()
    return _global_event_bus


def reset_event_bus():
    """丟棄全域事件總線（每次 CLI 執行前呼叫）"""
    global _global_event_bus
    _global_event_bus = None
