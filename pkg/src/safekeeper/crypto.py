"""Ed25519 signing primitives and key file handling.

The whole toolchain is pinned to one signature scheme: Ed25519 with raw
32-byte keys and 64-byte signatures. Keys are stored on disk as a single
line of lowercase hex (64 characters for either half of the pair),
terminated by a newline.
"""

from __future__ import annotations

from pathlib import Path

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)

SIGNING_KEY_LENGTH = 32
VERIFICATION_KEY_LENGTH = 32
SIGNATURE_LENGTH = 64

_RAW = serialization.Encoding.Raw
_RAW_PRIVATE = serialization.PrivateFormat.Raw
_RAW_PUBLIC = serialization.PublicFormat.Raw
_NO_ENCRYPTION = serialization.NoEncryption()


def generate_signing_key() -> bytes:
    """Return a fresh 32-byte Ed25519 signing key (the private seed)."""
    key = Ed25519PrivateKey.generate()
    return key.private_bytes(_RAW, _RAW_PRIVATE, _NO_ENCRYPTION)


def verification_key(signing_key: bytes) -> bytes:
    """Derive the 32-byte public verification key from a signing key."""
    private = Ed25519PrivateKey.from_private_bytes(signing_key)
    return private.public_key().public_bytes(_RAW, _RAW_PUBLIC)


def sign(signing_key: bytes, message: bytes) -> bytes:
    """Sign ``message``, returning the 64-byte Ed25519 signature."""
    return Ed25519PrivateKey.from_private_bytes(signing_key).sign(message)


def verify(verification_key_bytes: bytes, signature: bytes, message: bytes) -> bool:
    """Check ``signature`` over ``message``; malformed inputs count as invalid."""
    try:
        public = Ed25519PublicKey.from_public_bytes(verification_key_bytes)
        public.verify(signature, message)
    except (InvalidSignature, ValueError):
        return False
    return True


def is_valid_verification_key(key: bytes) -> bool:
    """True if ``key`` decodes as an Ed25519 public key."""
    try:
        Ed25519PublicKey.from_public_bytes(key)
    except ValueError:
        return False
    return True


def save_key_file(path: Path | str, key: bytes, private: bool = False) -> None:
    """Write a key as one lowercase-hex line. Hex keeps the files greppable.

    ``private`` tightens the file mode to owner-only, for signing keys.
    """
    target = Path(path)
    target.write_text(key.hex() + "\n", encoding="ascii")
    if private:
        target.chmod(0o600)


def load_key_file(path: Path | str) -> bytes:
    """Read a hex key file written by :func:`save_key_file`."""
    text = Path(path).read_text(encoding="ascii").strip()
    key = bytes.fromhex(text)
    if len(key) not in (SIGNING_KEY_LENGTH, VERIFICATION_KEY_LENGTH):
        raise ValueError(f"key file {path} holds {len(key)} bytes, expected 32")
    return key
