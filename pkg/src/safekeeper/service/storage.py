"""Durable append-only storage for chained records.

Records live in a single ``records.log`` file as length-prefixed frames:

    u32 frame length (bytes after this field)
    u64 sequence
    32B prev_hash
    32B entry_hash
    u32 envelope length
    envelope bytes (canonical encoding)

Appends are flushed and fsynced before the caller gets a receipt, so an
acknowledged entry survives a crash. A frame cut short at end of file is
the footprint of a crash mid-write and is silently truncated on open; a
complete frame that fails to decode can only come from someone editing the
file and is reported as tampering, never repaired.
"""

from __future__ import annotations

import os
import struct
import threading
from pathlib import Path
from typing import Optional, Sequence

from safekeeper.core.canonical import (
    CanonicalDecodeError,
    canonical_envelope_bytes,
    decode_envelope,
)
from safekeeper.core.chain import (
    HASH_LENGTH,
    AppendReceipt,
    ChainedRecord,
    ChainState,
    FailureClass,
    KeyLookup,
    VerificationReport,
    append,
    verify_chain,
)
from safekeeper.core.envelope import SignedEnvelope

RECORDS_FILE = "records.log"
TOOLS_FILE = "tools.json"

_U32 = struct.Struct(">I")
_U64 = struct.Struct(">Q")
_FIXED_BODY = 8 + HASH_LENGTH + HASH_LENGTH + 4  # sequence, hashes, env length


class RecordDecodeError(ValueError):
    """A fully present frame whose contents do not parse."""

    def __init__(self, index: int, detail: str) -> None:
        super().__init__(f"record {index}: {detail}")
        self.index = index


class TamperedStoreError(RuntimeError):
    def __init__(self, report: VerificationReport) -> None:
        super().__init__(report.describe())
        self.report = report


def encode_record(record: ChainedRecord) -> bytes:
    envelope_bytes = canonical_envelope_bytes(record.envelope)
    body = (
        _U64.pack(record.sequence)
        + record.prev_hash
        + record.entry_hash
        + _U32.pack(len(envelope_bytes))
        + envelope_bytes
    )
    return _U32.pack(len(body)) + body


def _decode_body(index: int, body: bytes) -> ChainedRecord:
    if len(body) < _FIXED_BODY:
        raise RecordDecodeError(index, "frame shorter than fixed header")
    (sequence,) = _U64.unpack_from(body, 0)
    prev_hash = body[8 : 8 + HASH_LENGTH]
    entry_hash = body[8 + HASH_LENGTH : 8 + 2 * HASH_LENGTH]
    (env_len,) = _U32.unpack_from(body, 8 + 2 * HASH_LENGTH)
    envelope_bytes = body[_FIXED_BODY:]
    if env_len != len(envelope_bytes):
        raise RecordDecodeError(index, "envelope length disagrees with frame length")
    try:
        envelope = decode_envelope(envelope_bytes)
    except CanonicalDecodeError as exc:
        raise RecordDecodeError(index, f"envelope does not decode: {exc}") from exc
    return ChainedRecord(
        sequence=sequence, prev_hash=prev_hash, entry_hash=entry_hash, envelope=envelope
    )


def read_log(path: Path) -> tuple[list[ChainedRecord], int]:
    """Decode all complete frames; returns records and the clean byte length.

    The clean length stops before any incomplete trailing frame, letting
    the caller chop off a crash artifact. Damage anywhere else raises
    RecordDecodeError.
    """
    data = path.read_bytes() if path.exists() else b""
    records: list[ChainedRecord] = []
    offset = 0
    while offset < len(data):
        if offset + 4 > len(data):
            break  # partial length prefix: crash tail
        (frame_len,) = _U32.unpack_from(data, offset)
        if offset + 4 + frame_len > len(data):
            break  # frame announced but not fully written: crash tail
        body = data[offset + 4 : offset + 4 + frame_len]
        records.append(_decode_body(len(records), body))
        offset += 4 + frame_len
    return records, offset


def write_log(path: Path, records: Sequence[ChainedRecord]) -> None:
    """Rewrite the whole file; used by tooling, never by the live service."""
    tmp = path.with_suffix(".tmp")
    with tmp.open("wb") as fh:
        for record in records:
            fh.write(encode_record(record))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


class LogStore:
    """The live store: in-memory records plus a fsynced append handle."""

    def __init__(self, data_dir: Path) -> None:
        self._dir = data_dir
        data_dir.mkdir(parents=True, exist_ok=True)
        self._path = data_dir / RECORDS_FILE
        records, clean_len = read_log(self._path)
        if self._path.exists() and clean_len < self._path.stat().st_size:
            # Drop the torn tail frame left by a crash before reopening
            # for append.
            with self._path.open("rb+") as fh:
                fh.truncate(clean_len)
        self._records: list[ChainedRecord] = records
        self._state = (
            ChainState(head_hash=records[-1].entry_hash, length=len(records))
            if records
            else ChainState.genesis()
        )
        self._fh = self._path.open("ab")
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self._path

    @property
    def state(self) -> ChainState:
        with self._lock:
            return self._state

    def records(self) -> tuple[ChainedRecord, ...]:
        with self._lock:
            return tuple(self._records)

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)

    def submit(self, envelope: SignedEnvelope) -> AppendReceipt:
        """Chain, persist and acknowledge one envelope.

        The receipt is only constructed after the frame is fsynced, so a
        receipt in hand means the entry is on disk.
        """
        with self._lock:
            record, new_state = append(self._state, envelope)
            self._fh.write(encode_record(record))
            self._fh.flush()
            os.fsync(self._fh.fileno())
            self._records.append(record)
            self._state = new_state
            return AppendReceipt(
                sequence=record.sequence,
                entry_hash=record.entry_hash,
                head_hash=new_state.head_hash,
            )

    def close(self) -> None:
        self._fh.close()


def recover_on_startup(
    data_dir: Path,
    key_lookup: KeyLookup,
    expected: Optional[ChainState] = None,
) -> LogStore:
    """Open the store and refuse to serve from a log that fails verification.

    Decode failures and chain failures both abort with TamperedStoreError;
    the service must not come up and quietly extend a falsified history.
    """
    try:
        store = LogStore(data_dir)
    except RecordDecodeError as exc:
        report = VerificationReport()
        report.add(exc.index, FailureClass.ALTERED)
        raise TamperedStoreError(report) from exc
    report = verify_chain(store.records(), key_lookup, expected=expected)
    if not report.ok:
        store.close()
        raise TamperedStoreError(report)
    return store
