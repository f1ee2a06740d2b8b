"""Structured event history for pipeline runs"""
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..config import LOG_FILE


class RunLogger:
    """Records stage, pass and operation events of a run as JSON"""

    def __init__(self, log_file: Optional[str] = None):
        self.log_file = Path(log_file or LOG_FILE)
        self.history: List[Dict[str, Any]] = []
        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S")

    def _append(self, event: str, stage: Optional[str], **payload) -> Dict[str, Any]:
        entry = {
            "timestamp": datetime.now().isoformat(),
            "event": event,
            "stage": stage,
            **payload,
        }
        self.history.append(entry)
        return entry

    def log_stage_start(self, stage: str, state: Dict[str, Any]):
        """Log when a pipeline stage starts"""
        return self._append("stage_start", stage, state_snapshot={
            "has_inputs": state.get("inputs") is not None,
            "has_multimesh": state.get("multimesh") is not None,
            "has_statistics": state.get("statistics") is not None,
            "note_count": len(state.get("notes", [])),
        })

    def log_stage_end(self, stage: str, output: Dict[str, Any]):
        """Log when a pipeline stage completes"""
        return self._append("stage_end", stage, output=output)

    def log_pass(self, stage: str, statistics: Dict[str, Any]):
        """Log the statistics of a finished scheduler pass"""
        return self._append("pass", stage, statistics=statistics)

    def log_operation(self, pass_name: str, operation: str, edge: List[int], outcome: str):
        """Log one scheduled operation and whether it was accepted"""
        return self._append("operation", pass_name, operation=operation, edge=edge, outcome=outcome)

    def log_message(self, stage: str, level: str, content: str):
        """Log a free-form message, e.g. the error that stopped a stage"""
        return self._append("message", stage, level=level, content=content)

    def save_history(self):
        """Save the complete history to the JSON log file"""
        output = {
            "session_id": self.session_id,
            "start_time": self.history[0]["timestamp"] if self.history else datetime.now().isoformat(),
            "end_time": datetime.now().isoformat(),
            "total_events": len(self.history),
            "history": self.history,
        }
        self.log_file.parent.mkdir(parents=True, exist_ok=True)
        with open(self.log_file, "w", encoding="utf-8") as f:
            json.dump(output, f, indent=2, ensure_ascii=False)
        return str(self.log_file.absolute())

    def save_final_state(self, state: Dict[str, Any]):
        """Save a JSON summary of the final pipeline state"""
        final_state_file = self.log_file.parent / f"final_state_{self.session_id}.json"
        output = {
            "session_id": self.session_id,
            "timestamp": datetime.now().isoformat(),
            "state": serialize_state(state),
        }
        final_state_file.parent.mkdir(parents=True, exist_ok=True)
        with open(final_state_file, "w", encoding="utf-8") as f:
            json.dump(output, f, indent=2, ensure_ascii=False)
        return str(final_state_file.absolute())


def serialize_state(state: Dict[str, Any]) -> Dict[str, Any]:
    """JSON-safe view of a pipeline state; meshes are reduced to counts."""
    out: Dict[str, Any] = {}
    for key, value in state.items():
        if hasattr(value, "model_dump"):
            out[key] = value.model_dump(mode="json")
        elif hasattr(value, "summary"):
            out[key] = value.summary()
        elif isinstance(value, list):
            out[key] = [v.model_dump(mode="json") if hasattr(v, "model_dump") else v for v in value]
        elif value is None:
            out[key] = None
        else:
            try:
                json.dumps(value)
                out[key] = value
            except (TypeError, ValueError):
                out[key] = str(value)
    return out


# Global logger instance
_logger_instance: Optional[RunLogger] = None


def get_logger() -> RunLogger:
    """Get or create the global logger instance"""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = RunLogger()
    return _logger_instance


def reset_logger(log_file: Optional[str] = None) -> RunLogger:
    """Start a fresh global history, optionally writing elsewhere"""
    global _logger_instance
    _logger_instance = RunLogger(log_file)
    return _logger_instance


def log_stage_start(stage: str, state: Dict[str, Any]):
    return get_logger().log_stage_start(stage, state)


def log_stage_end(stage: str, output: Dict[str, Any]):
    return get_logger().log_stage_end(stage, output)


def log_pass(stage: str, statistics: Dict[str, Any]):
    return get_logger().log_pass(stage, statistics)


def log_operation(pass_name: str, operation: str, edge: List[int], outcome: str):
    return get_logger().log_operation(pass_name, operation, edge, outcome)


def log_message(stage: str, level: str, content: str):
    return get_logger().log_message(stage, level, content)


def save_logs():
    """Save all logs to file"""
    return get_logger().save_history()


def save_final_state(state: Dict[str, Any]):
    """Save final pipeline state"""
    return get_logger().save_final_state(state)
