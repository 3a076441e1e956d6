"""
In-memory progress tracking for running chains.
Worker threads write into it; the fit command reads it for status and summaries.
"""

import time
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from threading import Lock
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class ChainStatus(str, Enum):
    """Lifecycle of a chain"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"

    @property
    def finished(self) -> bool:
        return self in (ChainStatus.COMPLETED, ChainStatus.FAILED)


@dataclass
class ChainProgress:
    """Latest report of one chain; unset fields keep their previous value on update"""
    chain_id: int
    status: ChainStatus
    message: str
    step: int = 0
    total_steps: int = 0
    best_log_posterior: Optional[float] = None
    error_details: Optional[str] = None
    started_at: float = field(default_factory=time.monotonic)
    updated_at: float = field(default_factory=time.monotonic)

    @property
    def progress_percentage(self) -> int:
        if self.status == ChainStatus.COMPLETED or self.total_steps == 0:
            return 100 if self.status == ChainStatus.COMPLETED else 0
        return max(0, min(100, int(100 * self.step / self.total_steps)))

    @property
    def elapsed(self) -> float:
        return self.updated_at - self.started_at

    def update(self, status: Optional[ChainStatus] = None, message: Optional[str] = None,
               step: Optional[int] = None, total_steps: Optional[int] = None,
               best: Optional[float] = None, error: Optional[str] = None) -> None:
        changes = {
            "status": status,
            "message": message,
            "step": step,
            "total_steps": total_steps,
            "best_log_posterior": best,
            "error_details": error,
        }
        for name, value in changes.items():
            if value is not None:
                setattr(self, name, value)
        self.updated_at = time.monotonic()


class ChainProgressCache:
    """Thread-safe progress store keyed by chain id"""

    def __init__(self):
        self._chains: Dict[int, ChainProgress] = {}
        self._lock = Lock()

    def set_progress(self, chain_id: int, status: ChainStatus, message: str, step: Optional[int] = None,
                     total_steps: Optional[int] = None, best: Optional[float] = None,
                     error: Optional[str] = None) -> None:
        with self._lock:
            entry = self._chains.get(chain_id)
            if entry is None:
                entry = self._chains[chain_id] = ChainProgress(chain_id=chain_id, status=status, message=message)
            entry.update(status=status, message=message, step=step, total_steps=total_steps,
                         best=best, error=error)
            percent = entry.progress_percentage
        logger.debug(f"Chain {chain_id} -> {status.value} ({percent}%): {message}")

    def get_progress(self, chain_id: int) -> Optional[ChainProgress]:
        with self._lock:
            return self._chains.get(chain_id)

    def get_all_active(self) -> Dict[int, ChainProgress]:
        """Chains that are neither completed nor failed"""
        with self._lock:
            return {cid: entry for cid, entry in self._chains.items() if not entry.status.finished}

    def get_stats(self) -> Dict[str, Any]:
        with self._lock:
            entries = list(self._chains.values())
        best = [entry.best_log_posterior for entry in entries if entry.best_log_posterior is not None]
        return {
            "total_chains": len(entries),
            "by_status": dict(Counter(entry.status.value for entry in entries)),
            "active_chains": sum(not entry.status.finished for entry in entries),
            "best_log_posterior": max(best) if best else None,
            "slowest_chain_seconds": round(max((entry.elapsed for entry in entries), default=0.0), 3),
        }
