"""JSON wire codecs for the HTTP API.

Decoding is deliberately unforgiving: exact key sets, exact types,
timestamps as integer UNIX seconds, binary fields as fixed-length
lowercase hex. Anything else raises WireError and turns into a 400. Hex
case matters because the signature covers the payload bytes, not their
JSON spelling; accepting "AB" where "ab" was signed would let a modified
request through verification.
"""

from __future__ import annotations

import re
from datetime import datetime
from typing import Any, Mapping

from safekeeper.core.canonical import MAX_TEXT_BYTES
from safekeeper.core.chain import ChainedRecord, ChainState, AppendReceipt
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import NONCE_LENGTH, EnvelopePayload, SignedEnvelope
from safekeeper.core.stats import OverviewStats
from safekeeper.core.timeutil import from_unix, to_unix
from safekeeper import crypto

_LOWER_HEX = re.compile(r"^[0-9a-f]*$")

_ENTRY_KEYS = (
    "entry_id",
    "responsible",
    "tool",
    "kind",
    "justification",
    "data_types",
    "owners",
    "timestamp",
)
_ENVELOPE_KEYS = ("entry", "tool_id", "nonce", "sent_at", "signature")
_TOOL_KEYS = ("tool_id", "display_name", "verification_key")


class WireError(ValueError):
    pass


def _require_mapping(value: Any, what: str) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise WireError(f"{what} must be a JSON object")
    return value


def _require_keys(obj: Mapping[str, Any], keys: tuple[str, ...], what: str) -> None:
    missing = [key for key in keys if key not in obj]
    if missing:
        raise WireError(f"{what} missing keys: {', '.join(missing)}")
    unknown = [key for key in obj if key not in keys]
    if unknown:
        raise WireError(f"{what} has unknown keys: {', '.join(sorted(unknown))}")


def _get_text(obj: Mapping[str, Any], key: str, allow_empty: bool = False) -> str:
    value = obj[key]
    if not isinstance(value, str):
        raise WireError(f"{key} must be a string")
    if not allow_empty and not value:
        raise WireError(f"{key} must be non-empty")
    if len(value.encode("utf-8")) > MAX_TEXT_BYTES:
        raise WireError(f"{key} too long")
    return value


def _get_text_list(obj: Mapping[str, Any], key: str) -> tuple[str, ...]:
    value = obj[key]
    if not isinstance(value, list) or not value:
        raise WireError(f"{key} must be a non-empty array")
    out: list[str] = []
    for item in value:
        if not isinstance(item, str) or not item:
            raise WireError(f"{key} items must be non-empty strings")
        if len(item.encode("utf-8")) > MAX_TEXT_BYTES:
            raise WireError(f"{key} item too long")
        out.append(item)
    return tuple(out)


def _get_timestamp(obj: Mapping[str, Any], key: str) -> datetime:
    value = obj[key]
    # bool is an int subclass; true/false are not timestamps.
    if isinstance(value, bool) or not isinstance(value, int):
        raise WireError(f"{key} must be an integer (UNIX seconds)")
    try:
        return from_unix(value)
    except (ValueError, OverflowError, OSError) as exc:
        raise WireError(f"{key} out of range") from exc


def _get_hex(obj: Mapping[str, Any], key: str, n_bytes: int) -> bytes:
    value = obj[key]
    if not isinstance(value, str):
        raise WireError(f"{key} must be a string")
    if len(value) != n_bytes * 2 or not _LOWER_HEX.fullmatch(value):
        raise WireError(f"{key} must be {n_bytes * 2} lowercase hex characters")
    return bytes.fromhex(value)


def entry_from_wire(obj: Any) -> UsageLogEntry:
    mapping = _require_mapping(obj, "entry")
    _require_keys(mapping, _ENTRY_KEYS, "entry")
    try:
        return UsageLogEntry(
            entry_id=_get_text(mapping, "entry_id"),
            responsible=_get_text(mapping, "responsible"),
            tool=_get_text(mapping, "tool"),
            kind=_get_text(mapping, "kind"),
            justification=_get_text(mapping, "justification", allow_empty=True),
            data_types=_get_text_list(mapping, "data_types"),
            owners=_get_text_list(mapping, "owners"),
            timestamp=_get_timestamp(mapping, "timestamp"),
        )
    except WireError:
        raise
    except ValueError as exc:
        raise WireError(str(exc)) from exc


def entry_to_wire(entry: UsageLogEntry) -> dict[str, Any]:
    return {
        "entry_id": entry.entry_id,
        "responsible": entry.responsible,
        "tool": entry.tool,
        "kind": entry.kind,
        "justification": entry.justification,
        "data_types": list(entry.data_types),
        "owners": list(entry.owners),
        "timestamp": to_unix(entry.timestamp),
    }


def envelope_from_wire(obj: Any) -> SignedEnvelope:
    mapping = _require_mapping(obj, "envelope")
    _require_keys(mapping, _ENVELOPE_KEYS, "envelope")
    entry = entry_from_wire(mapping["entry"])
    try:
        payload = EnvelopePayload(
            entry=entry,
            tool_id=_get_text(mapping, "tool_id"),
            nonce=_get_hex(mapping, "nonce", NONCE_LENGTH),
            sent_at=_get_timestamp(mapping, "sent_at"),
        )
        return SignedEnvelope(
            payload=payload,
            signature=_get_hex(mapping, "signature", crypto.SIGNATURE_LENGTH),
        )
    except WireError:
        raise
    except ValueError as exc:
        raise WireError(str(exc)) from exc


def envelope_to_wire(envelope: SignedEnvelope) -> dict[str, Any]:
    payload = envelope.payload
    return {
        "entry": entry_to_wire(payload.entry),
        "tool_id": payload.tool_id,
        "nonce": payload.nonce.hex(),
        "sent_at": to_unix(payload.sent_at),
        "signature": envelope.signature.hex(),
    }


def record_to_wire(record: ChainedRecord) -> dict[str, Any]:
    """Full-fidelity record view; enough to re-verify the chain externally."""
    payload = record.envelope.payload
    return {
        "sequence": record.sequence,
        "prev_hash": record.prev_hash.hex(),
        "entry_hash": record.entry_hash.hex(),
        "entry": entry_to_wire(payload.entry),
        "tool_id": payload.tool_id,
        "nonce": payload.nonce.hex(),
        "sent_at": to_unix(payload.sent_at),
        "signature": record.envelope.signature.hex(),
    }


def receipt_to_wire(receipt: AppendReceipt) -> dict[str, Any]:
    return {
        "sequence": receipt.sequence,
        "entry_hash": receipt.entry_hash.hex(),
        "head_hash": receipt.head_hash.hex(),
    }


def chain_head_to_wire(state: ChainState) -> dict[str, Any]:
    return {"head_hash": state.head_hash.hex(), "length": state.length}


def overview_to_wire(stats: OverviewStats) -> dict[str, Any]:
    return {
        "accesses_today": stats.accesses_today,
        "accesses_7d": stats.accesses_7d,
        "distinct_consumers_7d": stats.distinct_consumers_7d,
        "history_7d": list(stats.history_7d),
        "top_consumers_7d": [
            {"consumer": name, "count": count}
            for name, count in stats.top_consumers_7d
        ],
    }


def tool_registration_from_wire(obj: Any) -> tuple[str, str, bytes]:
    mapping = _require_mapping(obj, "tool registration")
    _require_keys(mapping, _TOOL_KEYS, "tool registration")
    return (
        _get_text(mapping, "tool_id"),
        _get_text(mapping, "display_name"),
        _get_hex(mapping, "verification_key", crypto.VERIFICATION_KEY_LENGTH),
    )
