"""Bearer-token identities for the read side of the service.

Submission is authenticated by envelope signatures; this module covers the
humans querying the log. Each token maps to a subject and a role, and the
role decides how queries get scoped: owners see entries about their data,
consumers see entries they are responsible for, admins see everything.
"""

from __future__ import annotations

import hmac
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional


class Role(str, Enum):
    OWNER = "owner"
    CONSUMER = "consumer"
    ADMIN = "admin"


@dataclass(frozen=True)
class Principal:
    subject: str
    role: Role

    def __post_init__(self) -> None:
        if not self.subject:
            raise ValueError("subject must be non-empty")


class TokenTable:
    def __init__(self, entries: Iterable[tuple[str, str, Role]] = ()) -> None:
        """``entries`` are (token, subject, role) triples."""
        self._entries: list[tuple[str, Principal]] = []
        seen: set[str] = set()
        for token, subject, role in entries:
            if not token:
                raise ValueError("token must be non-empty")
            if token in seen:
                raise ValueError("duplicate token")
            seen.add(token)
            self._entries.append((token, Principal(subject=subject, role=role)))

    def authenticate(self, token: str) -> Optional[Principal]:
        # Compare against every stored token so lookup time does not leak
        # which prefix matched.
        found: Optional[Principal] = None
        for stored, principal in self._entries:
            if hmac.compare_digest(stored.encode(), token.encode()):
                found = principal
        return found

    def __len__(self) -> int:
        return len(self._entries)
