"""Canonical encoding: determinism, injectivity, strict decoding, golden cross-check."""

from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canonical_oracle import oracle_envelope_bytes, oracle_payload_bytes
from conftest import make_entry
from safekeeper.core.canonical import (
    MAX_TEXT_BYTES,
    CanonicalDecodeError,
    canonical_envelope_bytes,
    canonical_payload_bytes,
    decode_envelope,
)
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import EnvelopePayload, SignedEnvelope

GOLDEN_PATH = Path(__file__).parent / "data" / "canonical_golden.json"


def make_payload(**entry_overrides) -> EnvelopePayload:
    return EnvelopePayload(
        entry=make_entry(**entry_overrides),
        tool_id="jira-board",
        nonce=bytes(range(16)),
        sent_at=datetime(2025, 3, 9, 15, 30, 5, tzinfo=timezone.utc),
    )


class TestDeterminismAndInjectivity:
    def test_same_payload_twice_yields_identical_bytes(self):
        a = canonical_payload_bytes(make_payload())
        b = canonical_payload_bytes(make_payload())
        assert a == b

    def test_changed_justification_changes_bytes(self):
        a = canonical_payload_bytes(make_payload(justification="a"))
        b = canonical_payload_bytes(make_payload(justification="b"))
        assert a != b

    def test_every_field_is_load_bearing(self):
        """Changing any single field must change the encoding."""
        base = canonical_payload_bytes(make_payload())
        variants = [
            make_payload(entry_id="entry-0002"),
            make_payload(responsible="dana"),
            make_payload(tool="chat-graph"),
            make_payload(kind="ranking"),
            make_payload(justification="different"),
            make_payload(data_types=("user_name",)),
            make_payload(owners=("bo",)),
            make_payload(timestamp=datetime(2025, 3, 9, 15, 30, 1, tzinfo=timezone.utc)),
        ]
        for variant in variants:
            assert canonical_payload_bytes(variant) != base

    def test_list_boundaries_are_not_ambiguous(self):
        """["ab"] and ["a","b"] must encode differently (prefix-free lists)."""
        a = canonical_payload_bytes(make_payload(data_types=("ab",)))
        b = canonical_payload_bytes(make_payload(data_types=("a", "b")))
        assert a != b


class TestGoldenCrossCheck:
    def test_production_matches_frozen_golden_and_independent_oracle(self):
        golden = json.loads(GOLDEN_PATH.read_text())
        entry = UsageLogEntry(
            entry_id=golden["entry_id"],
            responsible=golden["responsible"],
            tool=golden["tool"],
            kind=golden["kind"],
            justification=golden["justification"],
            data_types=tuple(golden["data_types"]),
            owners=tuple(golden["owners"]),
            timestamp=datetime.fromtimestamp(golden["timestamp"], tz=timezone.utc),
        )
        payload = EnvelopePayload(
            entry=entry,
            tool_id=golden["tool_id"],
            nonce=bytes.fromhex(golden["nonce"]),
            sent_at=datetime.fromtimestamp(golden["sent_at"], tz=timezone.utc),
        )
        envelope = SignedEnvelope(
            payload=payload, signature=bytes.fromhex(golden["signature"])
        )

        prod_payload = canonical_payload_bytes(payload)
        prod_envelope = canonical_envelope_bytes(envelope)
        oracle_payload = oracle_payload_bytes(
            golden["entry_id"],
            golden["responsible"],
            golden["tool"],
            golden["kind"],
            golden["justification"],
            golden["data_types"],
            golden["owners"],
            golden["timestamp"],
            golden["tool_id"],
            bytes.fromhex(golden["nonce"]),
            golden["sent_at"],
        )
        oracle_envelope = oracle_envelope_bytes(
            oracle_payload, bytes.fromhex(golden["signature"])
        )

        assert prod_payload == oracle_payload
        assert prod_envelope == oracle_envelope
        assert hashlib.sha256(prod_payload).hexdigest() == golden["payload_sha256"]
        assert hashlib.sha256(prod_envelope).hexdigest() == golden["envelope_sha256"]
        assert len(prod_payload) == golden["payload_length"]
        assert len(prod_envelope) == golden["envelope_length"]


text_field = st.text(min_size=1, max_size=40)
text_list = st.lists(text_field, min_size=1, max_size=4).map(tuple)
timestamps = st.integers(min_value=0, max_value=4_000_000_000).map(
    lambda s: datetime.fromtimestamp(s, tz=timezone.utc)
)

envelopes = st.builds(
    SignedEnvelope,
    payload=st.builds(
        EnvelopePayload,
        entry=st.builds(
            UsageLogEntry,
            entry_id=text_field,
            responsible=text_field,
            tool=text_field,
            kind=text_field,
            justification=st.text(max_size=40),
            data_types=text_list,
            owners=text_list,
            timestamp=timestamps,
        ),
        tool_id=text_field,
        nonce=st.binary(min_size=16, max_size=16),
        sent_at=timestamps,
    ),
    signature=st.binary(min_size=1, max_size=80),
)


class TestRoundTrip:
    @settings(max_examples=200, deadline=None)
    @given(envelope=envelopes)
    def test_decode_inverts_encode(self, envelope: SignedEnvelope):
        assert decode_envelope(canonical_envelope_bytes(envelope)) == envelope

    def test_trailing_bytes_rejected(self):
        data = canonical_envelope_bytes(
            SignedEnvelope(payload=make_payload(), signature=b"\x01" * 64)
        )
        with pytest.raises(CanonicalDecodeError):
            decode_envelope(data + b"\x00")

    @settings(max_examples=100, deadline=None)
    @given(envelope=envelopes, cut=st.integers(min_value=0, max_value=200))
    def test_truncation_always_rejected(self, envelope: SignedEnvelope, cut: int):
        data = canonical_envelope_bytes(envelope)
        if cut >= len(data):
            cut = len(data) - 1
        with pytest.raises(CanonicalDecodeError):
            decode_envelope(data[:cut])

    def test_invalid_utf8_rejected(self):
        data = bytearray(
            canonical_envelope_bytes(
                SignedEnvelope(payload=make_payload(), signature=b"\x01" * 64)
            )
        )
        # First field is entry_id: u32 length then text; corrupt its first byte.
        data[4] = 0xFF
        with pytest.raises(CanonicalDecodeError):
            decode_envelope(bytes(data))

    def test_oversized_length_prefix_rejected(self):
        data = (MAX_TEXT_BYTES + 1).to_bytes(4, "big") + b"x" * 32
        with pytest.raises(CanonicalDecodeError):
            decode_envelope(data)

    def test_empty_required_field_rejected_at_decode(self):
        """Hand-craft bytes with an empty entry_id: structurally fine, invalid entry."""
        good = make_payload()
        raw = oracle_payload_bytes(
            "",
            good.entry.responsible,
            good.entry.tool,
            good.entry.kind,
            good.entry.justification,
            list(good.entry.data_types),
            list(good.entry.owners),
            1_700_000_000,
            good.tool_id,
            good.nonce,
            1_700_000_000,
        )
        data = oracle_envelope_bytes(raw, b"\x01" * 64)
        with pytest.raises(CanonicalDecodeError):
            decode_envelope(data)

    def test_encoder_rejects_oversized_field(self):
        with pytest.raises(ValueError):
            canonical_payload_bytes(make_payload(justification="x" * (MAX_TEXT_BYTES + 1)))
