"""Replay protection: remember which request nonces were already accepted."""

from __future__ import annotations

import threading
from datetime import datetime, timedelta
from typing import Iterable

NONCE_RETENTION_S = 24 * 60 * 60


class NonceCache:
    """Set of (tool_id, nonce) pairs seen recently, with atomic insert.

    ``check_and_store`` is the only way in: it refuses a nonce that is
    already present and records it otherwise, under one lock, so two
    concurrent copies of the same request cannot both pass. Entries are
    dropped once older than the retention window; the timestamp skew check
    rejects anything that stale long before the nonce check is consulted.
    """

    def __init__(self, retention_s: int = NONCE_RETENTION_S) -> None:
        if retention_s < 1:
            raise ValueError("retention_s must be >= 1")
        self._retention = timedelta(seconds=retention_s)
        self._seen: dict[tuple[str, bytes], datetime] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._seen)

    def check_and_store(self, tool_id: str, nonce: bytes, sent_at: datetime, now: datetime) -> bool:
        """Record the nonce unless it was seen before; True means fresh."""
        key = (tool_id, nonce)
        with self._lock:
            self._prune_locked(now)
            if key in self._seen:
                return False
            self._seen[key] = sent_at
            return True

    def seed(self, items: Iterable[tuple[str, bytes, datetime]], now: datetime) -> None:
        """Preload nonces recovered from storage, e.g. after a restart."""
        horizon = now - self._retention
        with self._lock:
            for tool_id, nonce, sent_at in items:
                if sent_at >= horizon:
                    self._seen[(tool_id, nonce)] = sent_at

    def _prune_locked(self, now: datetime) -> None:
        horizon = now - self._retention
        expired = [key for key, sent_at in self._seen.items() if sent_at < horizon]
        for key in expired:
            del self._seen[key]
