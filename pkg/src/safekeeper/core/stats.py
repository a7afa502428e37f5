"""Aggregate usage statistics for a data owner's overview screen."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Optional, Sequence

from safekeeper.core.chain import ChainedRecord
from safekeeper.core.timeutil import as_utc_seconds, day_start, utc_now

HISTORY_DAYS = 7


@dataclass(frozen=True)
class OverviewStats:
    """How an owner's data was used over the trailing week.

    ``history_7d`` has one count per UTC calendar day, oldest first, the
    final element being today so far; it sums to ``accesses_7d``.
    ``top_consumers_7d`` ranks every consumer active in the window by
    access count, so its counts also sum to ``accesses_7d`` and its length
    equals ``distinct_consumers_7d``.
    """

    accesses_today: int
    accesses_7d: int
    distinct_consumers_7d: int
    history_7d: tuple[int, ...]
    top_consumers_7d: tuple[tuple[str, int], ...]


def compute_overview(
    records: Sequence[ChainedRecord],
    owner: str,
    now: Optional[datetime] = None,
) -> OverviewStats:
    """Tally the owner's last seven UTC calendar days of usage.

    Only records listing ``owner`` count. "Today" runs from the most
    recent UTC midnight to ``now``; the window is the seven calendar days
    ending today. Records outside the window (including ones stamped
    after ``now``) are ignored. Equal-count consumers rank by id so the
    ordering is stable run to run.
    """
    if not owner:
        raise ValueError("owner must be non-empty")
    current = utc_now() if now is None else as_utc_seconds(now)
    today_start = day_start(current)
    window_start = today_start - timedelta(days=HISTORY_DAYS - 1)

    history = [0] * HISTORY_DAYS
    by_consumer: Counter[str] = Counter()
    for record in records:
        entry = record.entry
        if owner not in entry.owners:
            continue
        if entry.timestamp > current or entry.timestamp < window_start:
            continue
        history[(day_start(entry.timestamp) - window_start).days] += 1
        by_consumer[entry.responsible] += 1

    ranked = sorted(by_consumer.items(), key=lambda item: (-item[1], item[0]))
    return OverviewStats(
        accesses_today=history[-1],
        accesses_7d=sum(history),
        distinct_consumers_7d=len(ranked),
        history_7d=tuple(history),
        top_consumers_7d=tuple(ranked),
    )
