"""Independent re-implementation of the canonical envelope encoding.

Written directly against the documented byte layout, from primitive values
rather than the production dataclasses, so it can cross-check the encoder
in safekeeper.core.canonical. Kept intentionally separate: if the two ever
disagree, one of them drifted from the documented format.
"""

from __future__ import annotations

import struct


def _text(value: str) -> bytes:
    raw = value.encode("utf-8")
    return struct.pack(">I", len(raw)) + raw


def _text_list(values: list[str]) -> bytes:
    return struct.pack(">I", len(values)) + b"".join(_text(v) for v in values)


def oracle_payload_bytes(
    entry_id: str,
    responsible: str,
    tool: str,
    kind: str,
    justification: str,
    data_types: list[str],
    owners: list[str],
    timestamp_unix: int,
    tool_id: str,
    nonce: bytes,
    sent_at_unix: int,
) -> bytes:
    assert len(nonce) == 16
    return (
        _text(entry_id)
        + _text(responsible)
        + _text(tool)
        + _text(kind)
        + _text(justification)
        + _text_list(data_types)
        + _text_list(owners)
        + struct.pack(">q", timestamp_unix)
        + _text(tool_id)
        + nonce
        + struct.pack(">q", sent_at_unix)
    )


def oracle_envelope_bytes(payload_bytes: bytes, signature: bytes) -> bytes:
    return payload_bytes + struct.pack(">I", len(signature)) + signature
