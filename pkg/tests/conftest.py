"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone
from typing import Optional

import pytest

from safekeeper import crypto
from safekeeper.auth.envelope import sign_envelope
from safekeeper.core.chain import ChainedRecord, ChainState, append
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import SignedEnvelope

# A fixed reference instant keeps time-window tests deterministic.
BASE_TIME = datetime(2025, 3, 9, 15, 30, 0, tzinfo=timezone.utc)

TOOL_ID = "jira-board"
CONSUMERS = ("erick", "dana", "smita", "jonas")
OWNERS = ("alex", "bo", "chris", "devi", "ida")
TOOLS = ("jira-board", "chat-graph", "review-board", "scrum-report")
KINDS = ("aggregation", "ranking", "history", "graph")


def make_entry(**overrides) -> UsageLogEntry:
    values = {
        "entry_id": "entry-0001",
        "responsible": "erick",
        "tool": "jira-board",
        "kind": "aggregation",
        "justification": "summarize pages created per user",
        "data_types": ("user_name", "pages_created"),
        "owners": ("alex",),
        "timestamp": BASE_TIME,
    }
    values.update(overrides)
    return UsageLogEntry(**values)


def random_entry(rng: random.Random, index: int = 0) -> UsageLogEntry:
    n_types = rng.randint(1, 3)
    n_owners = rng.randint(1, 3)
    return UsageLogEntry(
        entry_id=f"entry-{index:05d}-{rng.randrange(10**6):06d}",
        responsible=rng.choice(CONSUMERS),
        tool=rng.choice(TOOLS),
        kind=rng.choice(KINDS),
        justification=rng.choice(
            ("sprint report", "capacity planning", "quarterly review", "")
        ),
        data_types=tuple(rng.sample(("user_name", "pages_created", "commit-history", "review-activity"), n_types)),
        owners=tuple(rng.sample(OWNERS, n_owners)),
        timestamp=BASE_TIME - timedelta(seconds=rng.randrange(10 * 24 * 3600)),
    )


@pytest.fixture()
def signing_key() -> bytes:
    return crypto.generate_signing_key()


@pytest.fixture()
def keypair(signing_key: bytes) -> tuple[bytes, bytes]:
    return signing_key, crypto.verification_key(signing_key)


def build_chain(
    envelopes: list[SignedEnvelope],
) -> tuple[list[ChainedRecord], ChainState]:
    state = ChainState.genesis()
    records: list[ChainedRecord] = []
    for envelope in envelopes:
        record, state = append(state, envelope)
        records.append(record)
    return records, state


def signed_chain(
    signing_key: bytes,
    count: int,
    tool_id: str = TOOL_ID,
    rng: Optional[random.Random] = None,
) -> tuple[list[ChainedRecord], ChainState]:
    rng = rng or random.Random(1234)
    envelopes = [
        sign_envelope(
            random_entry(rng, i), tool_id, signing_key, sent_at=BASE_TIME
        )
        for i in range(count)
    ]
    return build_chain(envelopes)
