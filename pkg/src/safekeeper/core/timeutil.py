"""UTC time helpers.

Every timestamp in the system is a timezone-aware UTC instant at whole-second
precision; on the wire and in canonical bytes it travels as integer UNIX
seconds. These helpers are the single place that conversion happens.
"""

from __future__ import annotations

from datetime import datetime, timezone


def utc_now() -> datetime:
    """Current UTC time, truncated to whole seconds."""
    return datetime.now(tz=timezone.utc).replace(microsecond=0)


def as_utc_seconds(value: datetime) -> datetime:
    """Normalize an aware datetime to UTC at whole-second precision."""
    if value.tzinfo is None or value.tzinfo.utcoffset(value) is None:
        raise ValueError("timestamp must be timezone-aware")
    return value.astimezone(timezone.utc).replace(microsecond=0)


def to_unix(value: datetime) -> int:
    return int(value.timestamp())


def from_unix(seconds: int) -> datetime:
    return datetime.fromtimestamp(seconds, tz=timezone.utc)


def day_start(value: datetime) -> datetime:
    """Midnight UTC of the calendar day containing ``value``."""
    value = as_utc_seconds(value)
    return value.replace(hour=0, minute=0, second=0)
