"""Synthetic engineering-activity events the demo analyses run over.

A fixture stands in for live Git, review and chat data sources. On disk it
is line-delimited JSON: the first line holds the roster, every following
line one event object tagged with its ``type``. Times are integer UNIX
seconds, UTC.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from safekeeper.core.timeutil import as_utc_seconds, from_unix, to_unix


def _require_id(value: str, what: str) -> str:
    if not value:
        raise ValueError(f"{what} must be non-empty")
    return value


@dataclass(frozen=True)
class CommitEvent:
    author: str
    time: datetime
    repository: str

    def __post_init__(self) -> None:
        _require_id(self.author, "author")
        _require_id(self.repository, "repository")
        object.__setattr__(self, "time", as_utc_seconds(self.time))


@dataclass(frozen=True)
class ReviewEvent:
    reviewer: str
    reviewee: str
    item_id: str
    time: datetime

    def __post_init__(self) -> None:
        _require_id(self.reviewer, "reviewer")
        _require_id(self.reviewee, "reviewee")
        _require_id(self.item_id, "item_id")
        object.__setattr__(self, "time", as_utc_seconds(self.time))


@dataclass(frozen=True)
class MessageEvent:
    sender: str
    mentions: tuple[str, ...]
    channel: str
    time: datetime

    def __post_init__(self) -> None:
        _require_id(self.sender, "sender")
        _require_id(self.channel, "channel")
        object.__setattr__(
            self, "mentions", tuple(_require_id(m, "mention") for m in self.mentions)
        )
        object.__setattr__(self, "time", as_utc_seconds(self.time))


@dataclass(frozen=True)
class EventFixture:
    roster: tuple[str, ...]
    commits: tuple[CommitEvent, ...]
    reviews: tuple[ReviewEvent, ...]
    messages: tuple[MessageEvent, ...]

    def __post_init__(self) -> None:
        members = set(self.roster)
        if len(members) != len(self.roster) or not members:
            raise ValueError("roster must be non-empty and free of duplicates")
        for commit in self.commits:
            if commit.author not in members:
                raise ValueError(f"commit author {commit.author!r} not in roster")
        for review in self.reviews:
            if review.reviewer not in members or review.reviewee not in members:
                raise ValueError(f"review {review.item_id!r} references non-roster id")
        for message in self.messages:
            if message.sender not in members:
                raise ValueError(f"message sender {message.sender!r} not in roster")
            for mention in message.mentions:
                if mention not in members:
                    raise ValueError(f"mention {mention!r} not in roster")


def save_fixture(fixture: EventFixture, path: Path) -> None:
    lines = [json.dumps({"roster": list(fixture.roster)}, sort_keys=True)]
    for commit in fixture.commits:
        lines.append(
            json.dumps(
                {
                    "type": "commit",
                    "author": commit.author,
                    "time": to_unix(commit.time),
                    "repository": commit.repository,
                },
                sort_keys=True,
            )
        )
    for review in fixture.reviews:
        lines.append(
            json.dumps(
                {
                    "type": "review",
                    "reviewer": review.reviewer,
                    "reviewee": review.reviewee,
                    "item_id": review.item_id,
                    "time": to_unix(review.time),
                },
                sort_keys=True,
            )
        )
    for message in fixture.messages:
        lines.append(
            json.dumps(
                {
                    "type": "message",
                    "sender": message.sender,
                    "mentions": list(message.mentions),
                    "channel": message.channel,
                    "time": to_unix(message.time),
                },
                sort_keys=True,
            )
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_fixture(path: Path) -> EventFixture:
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"fixture file is empty: {path}")
    header = json.loads(lines[0])
    roster = tuple(header["roster"])
    commits: list[CommitEvent] = []
    reviews: list[ReviewEvent] = []
    messages: list[MessageEvent] = []
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        obj = json.loads(line)
        kind = obj.get("type")
        if kind == "commit":
            commits.append(
                CommitEvent(
                    author=obj["author"],
                    time=from_unix(obj["time"]),
                    repository=obj["repository"],
                )
            )
        elif kind == "review":
            reviews.append(
                ReviewEvent(
                    reviewer=obj["reviewer"],
                    reviewee=obj["reviewee"],
                    item_id=obj["item_id"],
                    time=from_unix(obj["time"]),
                )
            )
        elif kind == "message":
            messages.append(
                MessageEvent(
                    sender=obj["sender"],
                    mentions=tuple(obj["mentions"]),
                    channel=obj["channel"],
                    time=from_unix(obj["time"]),
                )
            )
        else:
            raise ValueError(f"{path}:{number}: unknown event type {kind!r}")
    return EventFixture(
        roster=roster,
        commits=tuple(commits),
        reviews=tuple(reviews),
        messages=tuple(messages),
    )
