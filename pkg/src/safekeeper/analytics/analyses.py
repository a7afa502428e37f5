"""The three demo analyses: pure functions over fixture events."""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Sequence

from safekeeper.analytics.events import CommitEvent, MessageEvent, ReviewEvent

HOURS_PER_DAY = 24


def commit_hours(commits: Sequence[CommitEvent]) -> dict[str, list[int]]:
    """Per-author histogram of commit counts by UTC hour of day.

    Authors without commits do not appear; each present author's 24 bins
    sum to their commit count.
    """
    histograms: dict[str, list[int]] = defaultdict(lambda: [0] * HOURS_PER_DAY)
    for commit in commits:
        histograms[commit.author][commit.time.hour] += 1
    return dict(histograms)


def supporter_ranking(reviews: Sequence[ReviewEvent]) -> list[tuple[str, int]]:
    """Reviewers ranked by how many reviews they performed.

    Descending by count; equal counts order by reviewer id so the ranking
    is deterministic.
    """
    counts = Counter(review.reviewer for review in reviews)
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def mention_network(messages: Sequence[MessageEvent]) -> dict[tuple[str, str], int]:
    """Directed mention graph: (sender, mentioned) -> number of mentions.

    Mentioning someone twice in one message counts twice; self-mentions
    stay in as loops.
    """
    edges: Counter[tuple[str, str]] = Counter()
    for message in messages:
        for mentioned in message.mentions:
            edges[(message.sender, mentioned)] += 1
    return dict(edges)
