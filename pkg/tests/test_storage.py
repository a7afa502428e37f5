"""On-disk framing, crash-tail handling, and fail-closed recovery."""

from __future__ import annotations

import os

import pytest
from conftest import TOOL_ID, make_entry, signed_chain
from safekeeper import crypto
from safekeeper.auth.envelope import sign_envelope
from safekeeper.core.chain import GENESIS_HASH
from safekeeper.service.storage import (
    RECORDS_FILE,
    LogStore,
    RecordDecodeError,
    TamperedStoreError,
    encode_record,
    read_log,
    recover_on_startup,
    write_log,
)


@pytest.fixture
def lookup(signing_key):
    key = crypto.verification_key(signing_key)
    return lambda tool_id: key if tool_id == TOOL_ID else None


def populate(tmp_path, signing_key, count: int):
    records, state = signed_chain(signing_key, count)
    write_log(tmp_path / RECORDS_FILE, records)
    return records, state


class TestFraming:
    def test_roundtrip(self, tmp_path, signing_key):
        records, _ = populate(tmp_path, signing_key, 10)
        loaded, clean = read_log(tmp_path / RECORDS_FILE)
        assert loaded == records
        assert clean == (tmp_path / RECORDS_FILE).stat().st_size

    def test_missing_file_reads_empty(self, tmp_path):
        records, clean = read_log(tmp_path / RECORDS_FILE)
        assert records == []
        assert clean == 0

    def test_partial_tail_frame_stops_clean(self, tmp_path, signing_key):
        records, _ = populate(tmp_path, signing_key, 5)
        path = tmp_path / RECORDS_FILE
        full = path.stat().st_size
        with path.open("ab") as fh:
            fh.write(encode_record(records[0])[:11])  # torn mid-write
        loaded, clean = read_log(path)
        assert len(loaded) == 5
        assert clean == full

    def test_partial_length_prefix_stops_clean(self, tmp_path, signing_key):
        populate(tmp_path, signing_key, 3)
        path = tmp_path / RECORDS_FILE
        full = path.stat().st_size
        with path.open("ab") as fh:
            fh.write(b"\x00\x00")
        loaded, clean = read_log(path)
        assert len(loaded) == 3
        assert clean == full

    def test_corrupt_complete_frame_raises(self, tmp_path, signing_key):
        records, _ = populate(tmp_path, signing_key, 6)
        path = tmp_path / RECORDS_FILE
        data = bytearray(path.read_bytes())
        # Flip one byte inside the third frame's envelope region. The frame
        # stays complete, so this must read as tampering, not a crash tail.
        offset = 0
        for _ in range(2):
            frame_len = int.from_bytes(data[offset : offset + 4], "big")
            offset += 4 + frame_len
        data[offset + 4 + 80] ^= 0xFF
        path.write_bytes(bytes(data))
        with pytest.raises(RecordDecodeError) as exc:
            read_log(path)
        assert exc.value.index == 2


class TestLogStore:
    def test_submit_persists_and_reopens(self, tmp_path, signing_key):
        store = LogStore(tmp_path)
        receipts = []
        for index in range(4):
            envelope = sign_envelope(
                make_entry(entry_id=f"e-{index}"), TOOL_ID, signing_key
            )
            receipts.append(store.submit(envelope))
        assert [r.sequence for r in receipts] == [0, 1, 2, 3]
        assert store.state.length == 4
        store.close()

        reopened = LogStore(tmp_path)
        assert len(reopened) == 4
        assert reopened.state.head_hash == receipts[-1].head_hash
        envelope = sign_envelope(make_entry(entry_id="e-4"), TOOL_ID, signing_key)
        receipt = reopened.submit(envelope)
        assert receipt.sequence == 4
        reopened.close()

    def test_first_record_chains_from_genesis(self, tmp_path, signing_key):
        store = LogStore(tmp_path)
        store.submit(sign_envelope(make_entry(), TOOL_ID, signing_key))
        assert store.records()[0].prev_hash == GENESIS_HASH
        store.close()

    def test_open_truncates_torn_tail(self, tmp_path, signing_key):
        records, _ = populate(tmp_path, signing_key, 5)
        path = tmp_path / RECORDS_FILE
        clean_size = path.stat().st_size
        with path.open("ab") as fh:
            fh.write(encode_record(records[0])[:-7])
        store = LogStore(tmp_path)
        assert len(store) == 5
        assert path.stat().st_size == clean_size
        # Appending after the truncation keeps the file parseable.
        store.submit(sign_envelope(make_entry(entry_id="new"), TOOL_ID, signing_key))
        store.close()
        loaded, _ = read_log(path)
        assert len(loaded) == 6


class TestRecovery:
    def test_clean_store_recovers(self, tmp_path, signing_key, lookup):
        _, state = populate(tmp_path, signing_key, 8)
        store = recover_on_startup(tmp_path, lookup, expected=state)
        assert len(store) == 8
        store.close()

    def test_undecodable_record_fails_closed(self, tmp_path, signing_key, lookup):
        populate(tmp_path, signing_key, 4)
        path = tmp_path / RECORDS_FILE
        data = bytearray(path.read_bytes())
        data[4 + 80] ^= 0xFF  # first frame's envelope bytes
        path.write_bytes(bytes(data))
        with pytest.raises(TamperedStoreError):
            recover_on_startup(tmp_path, lookup)

    def test_chain_failure_fails_closed(self, tmp_path, signing_key, lookup):
        records, _ = populate(tmp_path, signing_key, 6)
        del records[3]
        write_log(tmp_path / RECORDS_FILE, records)
        with pytest.raises(TamperedStoreError) as exc:
            recover_on_startup(tmp_path, lookup)
        assert not exc.value.report.ok

    def test_truncation_against_expected_state_fails_closed(
        self, tmp_path, signing_key, lookup
    ):
        records, state = populate(tmp_path, signing_key, 6)
        write_log(tmp_path / RECORDS_FILE, records[:4])
        with pytest.raises(TamperedStoreError):
            recover_on_startup(tmp_path, lookup, expected=state)

    def test_unknown_tool_fails_closed(self, tmp_path, signing_key):
        populate(tmp_path, signing_key, 2)
        with pytest.raises(TamperedStoreError):
            recover_on_startup(tmp_path, lambda _tool: None)


class TestDurability:
    def test_receipt_means_fsynced_frame(self, tmp_path, signing_key, monkeypatch):
        """fsync must happen before the receipt exists, on every submit."""
        synced: list[int] = []
        real_fsync = os.fsync

        def spy(fd: int) -> None:
            real_fsync(fd)
            synced.append(fd)

        monkeypatch.setattr(os, "fsync", spy)
        store = LogStore(tmp_path)
        store.submit(sign_envelope(make_entry(), TOOL_ID, signing_key))
        assert synced, "submit returned without fsync"
        store.close()

    def test_failed_write_produces_no_receipt(self, tmp_path, signing_key, monkeypatch):
        store = LogStore(tmp_path)

        def boom(fd: int) -> None:
            raise OSError("disk full")

        monkeypatch.setattr(os, "fsync", boom)
        with pytest.raises(OSError):
            store.submit(sign_envelope(make_entry(), TOOL_ID, signing_key))
        monkeypatch.undo()
        store.close()
