"""Submission signing, replay protection, tool roster and reader tokens."""

from safekeeper.auth.envelope import (
    SKEW_WINDOW_S,
    EnvelopeRejected,
    RejectReason,
    sign_envelope,
    verify_envelope,
)
from safekeeper.auth.nonces import NONCE_RETENTION_S, NonceCache
from safekeeper.auth.principals import Principal, Role, TokenTable
from safekeeper.auth.tools import DuplicateToolError, ToolIdentity, ToolRegistry

__all__ = [
    "DuplicateToolError",
    "EnvelopeRejected",
    "NONCE_RETENTION_S",
    "NonceCache",
    "Principal",
    "RejectReason",
    "Role",
    "SKEW_WINDOW_S",
    "TokenTable",
    "ToolIdentity",
    "ToolRegistry",
    "sign_envelope",
    "verify_envelope",
]
