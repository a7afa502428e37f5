"""The usage log entry: one recorded use of somebody's data."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Iterable

from safekeeper.core.timeutil import as_utc_seconds


def _require_text(name: str, value: str) -> str:
    if not isinstance(value, str) or not value:
        raise ValueError(f"{name} must be a non-empty string")
    return value


def _require_text_list(name: str, values: Iterable[str]) -> tuple[str, ...]:
    items = tuple(values)
    if not items:
        raise ValueError(f"{name} must not be empty")
    for item in items:
        _require_text(f"{name} element", item)
    return items


@dataclass(frozen=True)
class UsageLogEntry:
    """A single data usage: who used what, through which tool, and why.

    ``owners`` names the people the data is about; ``responsible`` is the
    data consumer who triggered the usage. ``timestamp`` is when the usage
    happened (UTC, whole seconds), which is distinct from when the entry
    was submitted to the log.
    """

    entry_id: str
    responsible: str
    tool: str
    kind: str
    justification: str
    data_types: tuple[str, ...]
    owners: tuple[str, ...]
    timestamp: datetime

    def __post_init__(self) -> None:
        _require_text("entry_id", self.entry_id)
        _require_text("responsible", self.responsible)
        _require_text("tool", self.tool)
        _require_text("kind", self.kind)
        if not isinstance(self.justification, str):
            raise ValueError("justification must be a string")
        object.__setattr__(
            self, "data_types", _require_text_list("data_types", self.data_types)
        )
        object.__setattr__(self, "owners", _require_text_list("owners", self.owners))
        object.__setattr__(self, "timestamp", as_utc_seconds(self.timestamp))
