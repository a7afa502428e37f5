"""Signing and verification of submitted usage entries.

A tool wraps each entry in an envelope carrying its identity, a random
nonce and a send timestamp, then signs the canonical payload bytes. The
service accepts the envelope only if the tool is registered, the signature
checks out against the registered key, the send time is within the allowed
clock skew, and the nonce was never seen before. The checks run in that
order and the first miss wins, so a replayed envelope from an unregistered
tool reports unknown-tool, not replayed-nonce.
"""

from __future__ import annotations

import secrets
from datetime import datetime, timedelta
from enum import Enum
from typing import Callable, Optional

from safekeeper import crypto
from safekeeper.auth.nonces import NonceCache
from safekeeper.core.canonical import canonical_payload_bytes
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import NONCE_LENGTH, EnvelopePayload, SignedEnvelope
from safekeeper.core.timeutil import as_utc_seconds, utc_now

SKEW_WINDOW_S = 300


class RejectReason(str, Enum):
    UNKNOWN_TOOL = "unknown-tool"
    INVALID_SIGNATURE = "invalid-signature"
    STALE_TIMESTAMP = "stale-timestamp"
    REPLAYED_NONCE = "replayed-nonce"


class EnvelopeRejected(Exception):
    def __init__(self, reason: RejectReason, detail: str) -> None:
        super().__init__(f"{reason.value}: {detail}")
        self.reason = reason
        self.detail = detail


def sign_envelope(
    entry: UsageLogEntry,
    tool_id: str,
    signing_key: bytes,
    nonce: Optional[bytes] = None,
    sent_at: Optional[datetime] = None,
) -> SignedEnvelope:
    """Wrap an entry for submission, minting a fresh nonce unless given one."""
    payload = EnvelopePayload(
        entry=entry,
        tool_id=tool_id,
        nonce=secrets.token_bytes(NONCE_LENGTH) if nonce is None else nonce,
        sent_at=utc_now() if sent_at is None else as_utc_seconds(sent_at),
    )
    signature = crypto.sign(signing_key, canonical_payload_bytes(payload))
    return SignedEnvelope(payload=payload, signature=signature)


def verify_envelope(
    envelope: SignedEnvelope,
    key_lookup: Callable[[str], Optional[bytes]],
    nonces: NonceCache,
    now: Optional[datetime] = None,
    skew_window_s: int = SKEW_WINDOW_S,
) -> None:
    """Run the acceptance checks; raises EnvelopeRejected on the first failure.

    Success records the nonce as used. The caller must treat that as part
    of accepting the envelope: a retry after this point needs a new nonce.
    """
    payload = envelope.payload
    current = utc_now() if now is None else as_utc_seconds(now)

    key = key_lookup(payload.tool_id)
    if key is None:
        raise EnvelopeRejected(
            RejectReason.UNKNOWN_TOOL, f"no registered tool {payload.tool_id!r}"
        )
    if not crypto.verify(key, envelope.signature, canonical_payload_bytes(payload)):
        raise EnvelopeRejected(
            RejectReason.INVALID_SIGNATURE, "signature does not match payload"
        )
    skew = timedelta(seconds=skew_window_s)
    if payload.sent_at < current - skew or payload.sent_at > current + skew:
        raise EnvelopeRejected(
            RejectReason.STALE_TIMESTAMP,
            f"sent_at outside +/-{skew_window_s}s of server time",
        )
    if not nonces.check_and_store(payload.tool_id, payload.nonce, payload.sent_at, current):
        raise EnvelopeRejected(RejectReason.REPLAYED_NONCE, "nonce already used")
