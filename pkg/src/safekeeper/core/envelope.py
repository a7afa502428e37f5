"""Transport wrapper around a usage log entry.

An envelope is what a tool actually submits: the entry plus the tool's
identity, a random nonce and a submission timestamp, all covered by the
tool's signature. The signature is computed over the canonical payload
bytes (see :mod:`safekeeper.core.canonical`); the signing and verification
operations themselves live in :mod:`safekeeper.auth`.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime

from safekeeper.core.entries import UsageLogEntry, _require_text
from safekeeper.core.timeutil import as_utc_seconds

NONCE_LENGTH = 16  # 128-bit random value


@dataclass(frozen=True)
class EnvelopePayload:
    entry: UsageLogEntry
    tool_id: str
    nonce: bytes
    sent_at: datetime

    def __post_init__(self) -> None:
        if not isinstance(self.entry, UsageLogEntry):
            raise ValueError("entry must be a UsageLogEntry")
        _require_text("tool_id", self.tool_id)
        if not isinstance(self.nonce, bytes) or len(self.nonce) != NONCE_LENGTH:
            raise ValueError(f"nonce must be {NONCE_LENGTH} bytes")
        object.__setattr__(self, "sent_at", as_utc_seconds(self.sent_at))


@dataclass(frozen=True)
class SignedEnvelope:
    payload: EnvelopePayload
    signature: bytes

    def __post_init__(self) -> None:
        if not isinstance(self.signature, bytes) or not self.signature:
            raise ValueError("signature must be non-empty bytes")
