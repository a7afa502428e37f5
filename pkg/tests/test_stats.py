"""Owner overview aggregation against an independent recount."""

from __future__ import annotations

import random
from collections import defaultdict
from datetime import datetime, timedelta, timezone

import pytest
from conftest import BASE_TIME, OWNERS, random_entry
from safekeeper.core.stats import HISTORY_DAYS, OverviewStats, compute_overview
from test_query import random_store, wrap


def oracle_overview(records, owner: str, now: datetime) -> OverviewStats:
    """Recount day by day rather than binning by offset arithmetic."""
    midnight = now.astimezone(timezone.utc).replace(
        hour=0, minute=0, second=0, microsecond=0
    )
    day_counts: list[int] = []
    consumers: dict[str, int] = defaultdict(int)
    for back in range(HISTORY_DAYS - 1, -1, -1):
        lo = midnight - timedelta(days=back)
        hi = lo + timedelta(days=1)
        count = 0
        for record in records:
            entry = record.entry
            if owner not in entry.owners:
                continue
            if entry.timestamp > now:
                continue
            if lo <= entry.timestamp < hi:
                count += 1
                consumers[entry.responsible] += 1
        day_counts.append(count)
    ranked = tuple(sorted(consumers.items(), key=lambda kv: (-kv[1], kv[0])))
    return OverviewStats(
        accesses_today=day_counts[-1],
        accesses_7d=sum(day_counts),
        distinct_consumers_7d=len(ranked),
        history_7d=tuple(day_counts),
        top_consumers_7d=ranked,
    )


def at(day_offset: int, hour: int = 10) -> datetime:
    return datetime(2025, 3, 9, hour, 0, 0, tzinfo=timezone.utc) + timedelta(
        days=day_offset
    )


def entry_at(seq: int, when: datetime, responsible: str, owner: str):
    rng = random.Random(seq)
    base = random_entry(rng, seq)
    return wrap(
        type(base)(
            entry_id=base.entry_id,
            responsible=responsible,
            tool=base.tool,
            kind=base.kind,
            justification=base.justification,
            data_types=base.data_types,
            owners=(owner,),
            timestamp=when,
        ),
        seq,
    )


NOW = datetime(2025, 3, 9, 15, 30, 0, tzinfo=timezone.utc)


class TestExamples:
    def test_empty_store_is_all_zero(self):
        stats = compute_overview([], "alex", now=NOW)
        assert stats == OverviewStats(0, 0, 0, (0,) * HISTORY_DAYS, ())

    def test_empty_owner_rejected(self):
        with pytest.raises(ValueError):
            compute_overview([], "", now=NOW)

    def test_handworked_week(self):
        records = [
            entry_at(0, at(0), "erick", "alex"),         # today
            entry_at(1, at(0, hour=0), "dana", "alex"),  # today, at midnight
            entry_at(2, at(-1), "erick", "alex"),        # yesterday
            entry_at(3, at(-6), "smita", "alex"),        # oldest day in window
            entry_at(4, at(-7), "erick", "alex"),        # fell out of window
            entry_at(5, at(0, hour=23), "erick", "alex"),  # stamped after `now`
            entry_at(6, at(0), "erick", "bo"),           # other owner
        ]
        stats = compute_overview(records, "alex", now=NOW)
        assert stats.accesses_today == 2
        assert stats.accesses_7d == 4
        assert stats.history_7d == (1, 0, 0, 0, 0, 1, 2)
        assert stats.distinct_consumers_7d == 3
        assert stats.top_consumers_7d == (("erick", 2), ("dana", 1), ("smita", 1))

    def test_tie_breaks_by_consumer_id(self):
        records = [
            entry_at(0, at(0), "zoe", "alex"),
            entry_at(1, at(0), "abe", "alex"),
        ]
        stats = compute_overview(records, "alex", now=NOW)
        assert stats.top_consumers_7d == (("abe", 1), ("zoe", 1))

    def test_window_boundary_first_instant_counts(self):
        start_of_window = at(-6, hour=0)
        records = [
            entry_at(0, start_of_window, "erick", "alex"),
            entry_at(1, start_of_window - timedelta(seconds=1), "erick", "alex"),
        ]
        stats = compute_overview(records, "alex", now=NOW)
        assert stats.accesses_7d == 1
        assert stats.history_7d[0] == 1


class TestInvariants:
    def test_random_stores_match_oracle_and_invariants(self):
        rng = random.Random(777)
        for round_no in range(60):
            records = random_store(rng, rng.randrange(0, 150))
            owner = rng.choice(OWNERS)
            now = BASE_TIME + timedelta(hours=rng.randrange(-24, 48))
            stats = compute_overview(records, owner, now=now)
            assert stats == oracle_overview(records, owner, now), f"round {round_no}"
            assert len(stats.history_7d) == HISTORY_DAYS
            assert sum(stats.history_7d) == stats.accesses_7d
            assert stats.history_7d[-1] == stats.accesses_today
            assert sum(c for _, c in stats.top_consumers_7d) == stats.accesses_7d
            assert len(stats.top_consumers_7d) == stats.distinct_consumers_7d
            counts = [c for _, c in stats.top_consumers_7d]
            assert counts == sorted(counts, reverse=True)
