"""Chain primitives: entries, canonical bytes, hashing, queries, stats."""

from safekeeper.core.canonical import (
    CanonicalDecodeError,
    canonical_envelope_bytes,
    canonical_payload_bytes,
    decode_envelope,
)
from safekeeper.core.chain import (
    GENESIS_HASH,
    AppendReceipt,
    ChainedRecord,
    ChainState,
    FailureClass,
    VerificationReport,
    append,
    record_hash,
    verify_chain,
)
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.envelope import NONCE_LENGTH, EnvelopePayload, SignedEnvelope
from safekeeper.core.query import (
    DEFAULT_PAGE_SIZE,
    PAGE_SIZE_CAP,
    QueryFilter,
    QueryPage,
    query,
)
from safekeeper.core.stats import HISTORY_DAYS, OverviewStats, compute_overview

__all__ = [
    "AppendReceipt",
    "CanonicalDecodeError",
    "ChainState",
    "ChainedRecord",
    "DEFAULT_PAGE_SIZE",
    "EnvelopePayload",
    "FailureClass",
    "GENESIS_HASH",
    "HISTORY_DAYS",
    "NONCE_LENGTH",
    "OverviewStats",
    "PAGE_SIZE_CAP",
    "QueryFilter",
    "QueryPage",
    "SignedEnvelope",
    "UsageLogEntry",
    "VerificationReport",
    "append",
    "canonical_envelope_bytes",
    "canonical_payload_bytes",
    "compute_overview",
    "decode_envelope",
    "query",
    "record_hash",
    "verify_chain",
]
