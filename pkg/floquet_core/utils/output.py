#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
確定性輸出：CSV、JSON 與運行清單

浮點數一律以 repr（最短可往返十進位）輸出；CSV 行尾為 CRLF；JSON 鍵排序、不含時間戳。
相同配置與旗標的兩次執行產生逐位元相同的檔案。
"""

import hashlib
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from ..events import EventType, get_event_bus
from .logger import ContextualLogger

logger = ContextualLogger("output")

MANIFEST_NAME = "manifest.json"


def format_value(value: Any) -> str:
    """單一 CSV 欄位的文字"""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_jsonable(value: Any) -> Any:
    """numpy 型別與非有限浮點數轉為 JSON 可表示的值"""
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "value") and not isinstance(value, str):
        return to_jsonable(value.value)
    return value


def dumps_json(data: Any) -> str:
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False) + "\n"


def write_csv(path: Path, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
    """
    寫出 RFC-4180 CSV

    Args:
        path: 輸出路徑
        columns: 標頭
        rows: 依輸出順序排列的列
    """
    frame = pd.DataFrame(
        [[format_value(v) for v in row] for row in rows],
        columns=list(columns),
        dtype=object,
    )
    frame.to_csv(path, index=False, lineterminator="\r\n", na_rep="")
    logger.debug(f"📄 寫出 {path} ({len(frame)} 列)")
    return Path(path)


def write_json(path: Path, data: Any) -> Path:
    Path(path).write_text(dumps_json(data), encoding="utf-8", newline="\n")
    return Path(path)


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


class RunManifest:
    """收集輸出檔案並寫出 manifest.json"""

    def __init__(self, command: str, out_dir: Path, run_config=None, flags: Optional[Dict[str, Any]] = None):
        self.command = command
        self.out_dir = Path(out_dir)
        self.run_config = run_config
        self.flags = dict(flags or {})
        self.outputs: List[Path] = []
        self.results: Dict[str, Any] = {}

    def add_output(self, path: Path) -> Path:
        self.outputs.append(Path(path))
        return Path(path)

    def csv(self, name: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Path:
        return self.add_output(write_csv(self.out_dir / name, columns, rows))

    def json(self, name: str, data: Any) -> Path:
        return self.add_output(write_json(self.out_dir / name, data))

    def excluded_pairs(self) -> List[Dict[str, Any]]:
        events = get_event_bus().events_of(EventType.PAIR_EXCLUDED)
        return [e.to_dict() for e in events]

    def grid_escapes(self) -> List[Dict[str, Any]]:
        events = get_event_bus().events_of(EventType.GRID_ESCAPE)
        return [e.to_dict() for e in events]

    def build(self, status: str = "ok", error: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        manifest: Dict[str, Any] = {
            "command": self.command,
            "status": status,
            "flags": self.flags,
            "results": self.results,
            "excluded_pairs": self.excluded_pairs(),
            "grid_escapes": self.grid_escapes(),
            "event_counts": get_event_bus().counts(),
            "outputs": [
                {"file": p.name, "sha256": sha256_file(p)} for p in sorted(self.outputs, key=lambda q: q.name)
            ],
        }
        if self.run_config is not None:
            manifest["config_hash"] = self.run_config.config_hash
            manifest["config"] = self.run_config.computation_dict()
        if error is not None:
            manifest["error"] = error
        return manifest

    def write(self, status: str = "ok", error: Optional[Dict[str, Any]] = None) -> Path:
        path = write_json(self.out_dir / MANIFEST_NAME, self.build(status, error))
        logger.info(f"🧾 運行清單已寫出: {path}")
        return path
