"""Canonical byte encoding for envelopes.

Signing and hashing need a byte sequence that every implementation, in any
language, produces identically from the same logical payload. JSON cannot
promise that (key order, whitespace, number formatting), so envelopes are
encoded into an explicit binary form:

* text fields:   u32 big-endian byte length, then UTF-8 bytes
* text lists:    u32 element count, then each element as a text field
* timestamps:    i64 big-endian UNIX seconds
* nonce:         16 raw bytes (fixed length, no prefix)
* signature:     u32 byte length, then raw bytes

Payload fields are packed in this exact order:

    entry_id, responsible, tool, kind, justification,
    data_types, owners, entry timestamp, tool_id, nonce, sent_at

The envelope encoding is the payload bytes followed by the signature field.
Length prefixes make the encoding prefix-free per field, so two payloads
differing in any field produce different byte sequences.
"""

from __future__ import annotations

import struct

from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import NONCE_LENGTH, EnvelopePayload, SignedEnvelope
from safekeeper.core.timeutil import from_unix, to_unix

_U32 = struct.Struct(">I")
_I64 = struct.Struct(">q")

# Generous per-field ceiling; stops a forged length prefix from making the
# decoder allocate gigabytes.
MAX_TEXT_BYTES = 64 * 1024


class CanonicalDecodeError(ValueError):
    """Raised when bytes do not parse as a canonical envelope."""


def _pack_text(parts: list[bytes], value: str) -> None:
    raw = value.encode("utf-8")
    if len(raw) > MAX_TEXT_BYTES:
        raise ValueError(f"text field exceeds {MAX_TEXT_BYTES} bytes")
    parts.append(_U32.pack(len(raw)))
    parts.append(raw)


def _pack_text_list(parts: list[bytes], values: tuple[str, ...]) -> None:
    parts.append(_U32.pack(len(values)))
    for value in values:
        _pack_text(parts, value)


def canonical_payload_bytes(payload: EnvelopePayload) -> bytes:
    """Encode the signing base for an envelope payload."""
    entry = payload.entry
    parts: list[bytes] = []
    _pack_text(parts, entry.entry_id)
    _pack_text(parts, entry.responsible)
    _pack_text(parts, entry.tool)
    _pack_text(parts, entry.kind)
    _pack_text(parts, entry.justification)
    _pack_text_list(parts, entry.data_types)
    _pack_text_list(parts, entry.owners)
    parts.append(_I64.pack(to_unix(entry.timestamp)))
    _pack_text(parts, payload.tool_id)
    parts.append(payload.nonce)
    parts.append(_I64.pack(to_unix(payload.sent_at)))
    return b"".join(parts)


def canonical_envelope_bytes(envelope: SignedEnvelope) -> bytes:
    """Encode a full envelope (payload + signature); this is what gets hashed."""
    body = canonical_payload_bytes(envelope.payload)
    return body + _U32.pack(len(envelope.signature)) + envelope.signature


class _Reader:
    def __init__(self, data: bytes) -> None:
        self._data = data
        self._pos = 0

    def take(self, count: int) -> bytes:
        end = self._pos + count
        if count < 0 or end > len(self._data):
            raise CanonicalDecodeError("truncated canonical data")
        chunk = self._data[self._pos : end]
        self._pos = end
        return chunk

    def take_u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def take_i64(self) -> int:
        return _I64.unpack(self.take(8))[0]

    def take_text(self) -> str:
        length = self.take_u32()
        if length > MAX_TEXT_BYTES:
            raise CanonicalDecodeError("text field exceeds size limit")
        raw = self.take(length)
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CanonicalDecodeError("invalid UTF-8 in canonical data") from exc

    def take_text_list(self) -> tuple[str, ...]:
        count = self.take_u32()
        return tuple(self.take_text() for _ in range(count))

    def done(self) -> bool:
        return self._pos == len(self._data)


def decode_envelope(data: bytes) -> SignedEnvelope:
    """Parse canonical envelope bytes back into a :class:`SignedEnvelope`.

    Strict inverse of :func:`canonical_envelope_bytes`: trailing bytes or
    field values that violate the type invariants are decode errors.
    """
    reader = _Reader(data)
    try:
        entry = UsageLogEntry(
            entry_id=reader.take_text(),
            responsible=reader.take_text(),
            tool=reader.take_text(),
            kind=reader.take_text(),
            justification=reader.take_text(),
            data_types=reader.take_text_list(),
            owners=reader.take_text_list(),
            timestamp=from_unix(reader.take_i64()),
        )
        payload = EnvelopePayload(
            entry=entry,
            tool_id=reader.take_text(),
            nonce=reader.take(NONCE_LENGTH),
            sent_at=from_unix(reader.take_i64()),
        )
        signature = reader.take(reader.take_u32())
        envelope = SignedEnvelope(payload=payload, signature=signature)
    except CanonicalDecodeError:
        raise
    except (ValueError, OverflowError, OSError) as exc:
        raise CanonicalDecodeError(str(exc)) from exc
    if not reader.done():
        raise CanonicalDecodeError("trailing bytes after canonical envelope")
    return envelope
