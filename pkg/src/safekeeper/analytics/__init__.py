"""Demo analytics: event fixtures and the three analyses run over them."""

from safekeeper.analytics.analyses import commit_hours, mention_network, supporter_ranking
from safekeeper.analytics.events import (
    CommitEvent,
    EventFixture,
    MessageEvent,
    ReviewEvent,
    load_fixture,
    save_fixture,
)
from safekeeper.analytics.fixtures import DEFAULT_END, generate_fixture

__all__ = [
    "CommitEvent",
    "DEFAULT_END",
    "EventFixture",
    "MessageEvent",
    "ReviewEvent",
    "commit_hours",
    "generate_fixture",
    "load_fixture",
    "mention_network",
    "save_fixture",
    "supporter_ranking",
]
