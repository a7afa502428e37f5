"""Deterministic fixture generation.

Everything derives from one ``random.Random(seed)`` stream consumed in a
fixed order, and the time window is anchored to a hard-coded instant
rather than the wall clock, so the same seed always yields byte-identical
fixtures regardless of when or where they are generated.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from safekeeper.analytics.events import (
    CommitEvent,
    EventFixture,
    MessageEvent,
    ReviewEvent,
)

DEFAULT_END = datetime(2025, 3, 10, 12, 0, 0, tzinfo=timezone.utc)
DEFAULT_SPAN_DAYS = 7

_REPOSITORIES = ("core", "webapp", "infra")
_CHANNELS = ("general", "engineering", "support")


def generate_fixture(
    seed: int,
    roster_size: int = 9,
    n_commits: int = 60,
    n_reviews: int = 40,
    n_messages: int = 80,
    end: datetime = DEFAULT_END,
    span_days: int = DEFAULT_SPAN_DAYS,
) -> EventFixture:
    """Build a fixture with exactly the requested event counts."""
    if roster_size < 2:
        raise ValueError("roster_size must be >= 2 (reviews need two people)")
    if min(n_commits, n_reviews, n_messages) < 0:
        raise ValueError("event counts must be >= 0")
    if span_days < 1:
        raise ValueError("span_days must be >= 1")

    rng = random.Random(seed)
    roster = tuple(f"member-{i:02d}" for i in range(1, roster_size + 1))
    span_s = span_days * 24 * 60 * 60

    def moment() -> datetime:
        return end - timedelta(seconds=rng.randrange(span_s))

    commits = tuple(
        CommitEvent(
            author=rng.choice(roster),
            time=moment(),
            repository=rng.choice(_REPOSITORIES),
        )
        for _ in range(n_commits)
    )
    reviews = []
    for index in range(n_reviews):
        reviewer, reviewee = rng.sample(roster, 2)
        reviews.append(
            ReviewEvent(
                reviewer=reviewer,
                reviewee=reviewee,
                item_id=f"change-{index + 1:04d}",
                time=moment(),
            )
        )
    messages = tuple(
        MessageEvent(
            sender=rng.choice(roster),
            mentions=tuple(
                rng.choice(roster) for _ in range(rng.randrange(0, 3))
            ),
            channel=rng.choice(_CHANNELS),
            time=moment(),
        )
        for _ in range(n_messages)
    )
    return EventFixture(
        roster=roster, commits=commits, reviews=tuple(reviews), messages=messages
    )
