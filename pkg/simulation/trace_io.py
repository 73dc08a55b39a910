"""
JSON Lines trace serialization.

One compact JSON object per line, keys in the fixed record field order.
A truncated trace ends with a marker line ``{"truncated":true,"tick":N}``.
"""

import json
import logging
from pathlib import Path
from typing import Optional, Union

from core.constants import JSON_SEPARATORS, TRACE_FIELDS
from core.exceptions import ValidationError
from simulation.events import Process
from simulation.state import EventTrace, TraceRecord
from utils.file_handler import FileHandler

logger = logging.getLogger(__name__)

TRUNCATION_KEY = "truncated"


def _dumps(data) -> str:
    return json.dumps(data, separators=JSON_SEPARATORS, ensure_ascii=False)


def trace_to_jsonl(trace: EventTrace) -> str:
    """Serialize a trace; byte-identical for identical traces."""
    lines = [_dumps(record.to_dict()) for record in trace.records]
    if trace.truncated:
        lines.append(_dumps({TRUNCATION_KEY: True, "tick": trace.final_tick}))
    return "".join(line + "\n" for line in lines)


def trace_from_jsonl(text: str) -> EventTrace:
    """
    Parse a JSON Lines trace.

    Raises:
        ValidationError: If a line is not a JSON object with the trace record fields
    """
    trace = EventTrace()
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise ValidationError(f"Line {number} is not valid JSON: {e.msg}", field="trace") from e
        if not isinstance(data, dict):
            raise ValidationError(f"Line {number} is not a JSON object", field="trace")
        if data.get(TRUNCATION_KEY):
            trace.truncated = True
            trace.final_tick = data.get("tick", trace.final_tick)
            continue
        missing = [name for name in ("seq", "tick", "machine", "stage", "action") if name not in data]
        if missing:
            raise ValidationError(f"Line {number} lacks {', '.join(missing)}", field="trace")
        unknown = set(data) - set(TRACE_FIELDS)
        if unknown:
            raise ValidationError(f"Line {number} has unknown fields {sorted(unknown)}", field="trace")
        record = TraceRecord.from_dict(data)
        trace.records.append(record)
        trace.final_tick = max(trace.final_tick, record.tick)
    return trace


def write_trace(trace: EventTrace, file_path: Union[str, Path], file_handler: Optional[FileHandler] = None) -> str:
    handler = file_handler or FileHandler()
    path = handler.write_text(file_path, trace_to_jsonl(trace))
    logger.info(f"Wrote {len(trace)} trace records to {path}")
    return path


def read_trace(file_path: Union[str, Path], file_handler: Optional[FileHandler] = None) -> EventTrace:
    handler = file_handler or FileHandler()
    return trace_from_jsonl(handler.read_text(file_path))


def process_to_json(process: Process) -> str:
    return json.dumps(process.to_dict(), indent=2) + "\n"


def write_events(process: Process, file_path: Union[str, Path], file_handler: Optional[FileHandler] = None) -> str:
    handler = file_handler or FileHandler()
    path = handler.write_text(file_path, process_to_json(process))
    logger.info(f"Wrote {len(process)} events to {path}")
    return path
