"""Hash-chained append-only log records and chain verification.

Each stored record binds its envelope to everything before it:

    entry_hash = SHA-256(prev_hash || canonical envelope bytes)

with the first record chaining from 32 zero bytes. A verifier holding the
records (and, for truncation and purge detection, an externally remembered
head state) can therefore detect altered, removed, reordered, fabricated,
truncated and purged entries.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Union

from safekeeper import crypto
from safekeeper.core.canonical import canonical_envelope_bytes, canonical_payload_bytes
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import SignedEnvelope

HASH_LENGTH = 32
GENESIS_HASH = bytes(HASH_LENGTH)

# tool_id -> raw verification key, or None when the tool is unknown
KeyLookup = Callable[[str], Optional[bytes]]


@dataclass(frozen=True)
class ChainState:
    """Current head of the chain: last entry hash and record count."""

    head_hash: bytes
    length: int

    @classmethod
    def genesis(cls) -> "ChainState":
        return cls(head_hash=GENESIS_HASH, length=0)


@dataclass(frozen=True)
class ChainedRecord:
    sequence: int
    prev_hash: bytes
    entry_hash: bytes
    envelope: SignedEnvelope

    @property
    def entry(self) -> UsageLogEntry:
        return self.envelope.payload.entry


@dataclass(frozen=True)
class AppendReceipt:
    """What a submitter gets back; holding on to it witnesses the append.

    ``head_hash`` equals ``entry_hash`` immediately after the append, but a
    receipt kept from an earlier submission lets a client later prove the
    log was truncated behind its back.
    """

    sequence: int
    entry_hash: bytes
    head_hash: bytes


def record_hash(prev_hash: bytes, envelope: SignedEnvelope) -> bytes:
    return hashlib.sha256(prev_hash + canonical_envelope_bytes(envelope)).digest()


def append(
    state: ChainState, envelope: SignedEnvelope
) -> tuple[ChainedRecord, ChainState]:
    """Link ``envelope`` onto the chain; pure, returns the new record and state."""
    entry_hash = record_hash(state.head_hash, envelope)
    record = ChainedRecord(
        sequence=state.length,
        prev_hash=state.head_hash,
        entry_hash=entry_hash,
        envelope=envelope,
    )
    return record, ChainState(head_hash=entry_hash, length=state.length + 1)


class FailureClass(str, Enum):
    ALTERED = "altered"
    REMOVED_OR_TRUNCATED = "removed-or-truncated"
    FAKE_INSERTED = "fake-inserted"
    PURGED = "purged"
    BROKEN_LINK = "broken-link"


Location = Union[int, str]  # record sequence, or "head" / "length"


@dataclass
class VerificationReport:
    failures: list[tuple[Location, FailureClass]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, location: Location, failure: FailureClass) -> None:
        self.failures.append((location, failure))

    def describe(self) -> str:
        if self.ok:
            return "chain ok"
        lines = [f"  at {loc}: {cls.value}" for loc, cls in self.failures]
        return "chain verification FAILED\n" + "\n".join(lines)


def verify_chain(
    records: Sequence[ChainedRecord],
    key_lookup: KeyLookup,
    expected: ChainState | None = None,
    *,
    expected_head: Optional[bytes] = None,
    expected_length: Optional[int] = None,
) -> VerificationReport:
    """Re-check the whole chain against the attack model.

    Per record, in order of precedence:

    * sequence gaps (a record missing in the middle)  -> removed-or-truncated
    * link to the previous record broken              -> broken-link
    * stored entry_hash does not recompute            -> altered
    * signature invalid or tool unknown               -> fake-inserted

    With an out-of-band remembered state (``expected`` sets both fields;
    the keyword forms allow checking just one) additionally:

    * store empty but records were known to exist     -> purged
    * head or length mismatch                         -> removed-or-truncated
    """
    report = VerificationReport()
    prev: ChainedRecord | None = None
    for record in records:
        if prev is None:
            if record.sequence != 0:
                report.add(0, FailureClass.REMOVED_OR_TRUNCATED)
            elif record.prev_hash != GENESIS_HASH:
                report.add(record.sequence, FailureClass.BROKEN_LINK)
        else:
            if record.sequence != prev.sequence + 1:
                # A numbering gap already names the culprit; the dangling
                # prev_hash across the gap is a consequence, not a second
                # finding.
                report.add(prev.sequence + 1, FailureClass.REMOVED_OR_TRUNCATED)
            elif record.prev_hash != prev.entry_hash:
                report.add(record.sequence, FailureClass.BROKEN_LINK)

        # Self-consistency: does the stored hash recompute from the stored
        # prev_hash and envelope? A mismatch means bytes were rewritten.
        if record_hash(record.prev_hash, record.envelope) != record.entry_hash:
            report.add(record.sequence, FailureClass.ALTERED)
        else:
            payload = record.envelope.payload
            key = key_lookup(payload.tool_id)
            if key is None or not crypto.verify(
                key, record.envelope.signature, canonical_payload_bytes(payload)
            ):
                report.add(record.sequence, FailureClass.FAKE_INSERTED)
        prev = record

    if expected is not None:
        expected_head = expected.head_hash
        expected_length = expected.length
    if not records:
        if expected_length is not None and expected_length > 0:
            report.add("length", FailureClass.PURGED)
        elif expected_head is not None and expected_head != GENESIS_HASH:
            report.add("head", FailureClass.PURGED)
    else:
        if expected_head is not None and records[-1].entry_hash != expected_head:
            report.add("head", FailureClass.REMOVED_OR_TRUNCATED)
        elif expected_length is not None and expected_length != len(records):
            report.add("length", FailureClass.REMOVED_OR_TRUNCATED)
    return report
