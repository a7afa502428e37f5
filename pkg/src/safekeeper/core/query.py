"""Filtering and pagination over chained usage records.

Matching runs over the decoded records in memory; stores this service
targets stay small enough that scanning beats maintaining indexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Sequence

from safekeeper.core.chain import ChainedRecord
from safekeeper.core.timeutil import as_utc_seconds

PAGE_SIZE_CAP = 500
DEFAULT_PAGE_SIZE = 50


@dataclass(frozen=True)
class QueryFilter:
    """Conjunctive record filter plus pagination; unset fields match all.

    ``owner`` matches entries listing that owner among their owners.
    ``text`` is a case-insensitive substring search across justification
    and data types. ``ts_from`` is inclusive, ``ts_to`` exclusive, both
    against entry timestamps.
    """

    owner: Optional[str] = None
    responsible: Optional[str] = None
    tool: Optional[str] = None
    kind: Optional[str] = None
    text: Optional[str] = None
    ts_from: Optional[datetime] = None
    ts_to: Optional[datetime] = None
    page_index: int = 0
    page_size: int = DEFAULT_PAGE_SIZE

    def __post_init__(self) -> None:
        for name in ("ts_from", "ts_to"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_utc_seconds(value))
        if self.ts_from is not None and self.ts_to is not None:
            if self.ts_from > self.ts_to:
                raise ValueError("ts_from must not exceed ts_to")
        if self.page_index < 0:
            raise ValueError("page_index must be >= 0")
        if self.page_size < 1:
            raise ValueError("page_size must be >= 1")

    def matches(self, record: ChainedRecord) -> bool:
        entry = record.entry
        if self.owner is not None and self.owner not in entry.owners:
            return False
        if self.responsible is not None and entry.responsible != self.responsible:
            return False
        if self.tool is not None and entry.tool != self.tool:
            return False
        if self.kind is not None and entry.kind != self.kind:
            return False
        if self.text is not None:
            needle = self.text.lower()
            haystacks = [entry.justification, *entry.data_types]
            if not any(needle in value.lower() for value in haystacks):
                return False
        if self.ts_from is not None and entry.timestamp < self.ts_from:
            return False
        if self.ts_to is not None and entry.timestamp >= self.ts_to:
            return False
        return True


@dataclass(frozen=True)
class QueryPage:
    records: tuple[ChainedRecord, ...]
    total: int
    page_index: int
    page_size: int


def query(records: Sequence[ChainedRecord], criteria: QueryFilter) -> QueryPage:
    """Filter, order newest-first, and slice out the requested page.

    Ordering is entry timestamp descending, chain sequence descending as
    the tiebreak, so same-second entries come out latest-appended first
    and pagination stays stable. ``total`` counts every match, not just
    the returned page. A page index past the end yields an empty page
    with the correct total.
    """
    page_size = min(criteria.page_size, PAGE_SIZE_CAP)
    matched = [record for record in records if criteria.matches(record)]
    matched.sort(key=lambda record: (record.entry.timestamp, record.sequence), reverse=True)

    start = criteria.page_index * page_size
    window = matched[start : start + page_size]
    return QueryPage(
        records=tuple(window),
        total=len(matched),
        page_index=criteria.page_index,
        page_size=page_size,
    )
