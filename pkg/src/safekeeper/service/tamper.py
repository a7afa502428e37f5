"""Deliberate store corruption for exercising the verifier.

Each attack rewrites records.log the way a particular adversary would:

    alter        rewrite one entry's justification in place, hashes untouched
    remove       drop one record, leave the rest verbatim
    insert-fake  splice in a forged record and carefully re-link everything
                 after it, so only the bogus signature gives it away
    truncate     cut the log off after a position
    purge        empty the log entirely

Test tooling only; the live service never rewrites its log.
"""

from __future__ import annotations

import dataclasses
import os
from pathlib import Path

from safekeeper.core.chain import ChainedRecord, record_hash
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import NONCE_LENGTH, EnvelopePayload, SignedEnvelope
from safekeeper.core.timeutil import utc_now
from safekeeper import crypto
from safekeeper.service.storage import RECORDS_FILE, read_log, write_log

ATTACKS = ("alter", "remove", "insert-fake", "truncate", "purge")


def _forged_record(prev: bytes, sequence: int) -> ChainedRecord:
    entry = UsageLogEntry(
        entry_id=f"forged-{sequence}",
        responsible="rogue-consumer",
        tool="rogue-tool",
        kind="exfiltration",
        justification="definitely legitimate",
        data_types=("everything",),
        owners=("everyone",),
        timestamp=utc_now(),
    )
    payload = EnvelopePayload(
        entry=entry,
        tool_id="rogue-tool",
        nonce=os.urandom(NONCE_LENGTH),
        sent_at=utc_now(),
    )
    envelope = SignedEnvelope(
        payload=payload, signature=os.urandom(crypto.SIGNATURE_LENGTH)
    )
    return ChainedRecord(
        sequence=sequence,
        prev_hash=prev,
        entry_hash=record_hash(prev, envelope),
        envelope=envelope,
    )


def _relink(records: list[ChainedRecord], start: int) -> None:
    """Renumber and re-hash records from ``start`` so links stay consistent."""
    for i in range(start, len(records)):
        prev_hash = records[i - 1].entry_hash if i > 0 else bytes(32)
        old = records[i]
        records[i] = ChainedRecord(
            sequence=i,
            prev_hash=prev_hash,
            entry_hash=record_hash(prev_hash, old.envelope),
            envelope=old.envelope,
        )


def apply_attack(data_dir: Path, attack: str, position: int = 0) -> str:
    """Apply one attack to the stored log; returns a description of the damage."""
    if attack not in ATTACKS:
        raise ValueError(f"unknown attack {attack!r}; choose from {', '.join(ATTACKS)}")
    path = data_dir / RECORDS_FILE
    records, _ = read_log(path)

    if attack == "purge":
        write_log(path, [])
        return f"purged all {len(records)} records"

    if not records:
        raise ValueError("store is empty; nothing to attack")
    if not 0 <= position < len(records):
        raise ValueError(f"position {position} out of range 0..{len(records) - 1}")

    if attack == "alter":
        victim = records[position]
        entry = victim.entry
        edited = dataclasses.replace(
            entry, justification=entry.justification + " [rewritten after the fact]"
        )
        payload = dataclasses.replace(victim.envelope.payload, entry=edited)
        # Keep the stored hashes and signature: the forger edits the text
        # and hopes nobody recomputes.
        records[position] = ChainedRecord(
            sequence=victim.sequence,
            prev_hash=victim.prev_hash,
            entry_hash=victim.entry_hash,
            envelope=SignedEnvelope(payload=payload, signature=victim.envelope.signature),
        )
        write_log(path, records)
        return f"altered justification of record {position}"

    if attack == "remove":
        del records[position]
        write_log(path, records)
        return f"removed record {position}, remainder untouched"

    if attack == "insert-fake":
        prev_hash = records[position - 1].entry_hash if position > 0 else bytes(32)
        records.insert(position, _forged_record(prev_hash, position))
        _relink(records, position + 1)
        write_log(path, records)
        return f"inserted forged record at {position} and re-linked the chain"

    assert attack == "truncate"
    write_log(path, records[:position])
    return f"truncated log to first {position} records"
