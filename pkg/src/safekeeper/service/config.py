"""Service configuration: a small JSON file plus environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from safekeeper.auth.envelope import SKEW_WINDOW_S
from safekeeper.auth.nonces import NONCE_RETENTION_S
from safekeeper.auth.principals import Role

ENV_LISTEN = "SAFEKEEPER_LISTEN"
ENV_DATA_DIR = "SAFEKEEPER_DATA_DIR"

DEFAULT_LISTEN = "127.0.0.1:8085"


@dataclass(frozen=True)
class TokenEntry:
    token: str
    subject: str
    role: Role


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8085
    data_dir: Path = Path("safekeeper-data")
    tokens: tuple[TokenEntry, ...] = field(default_factory=tuple)
    skew_window_s: int = SKEW_WINDOW_S
    nonce_retention_s: int = NONCE_RETENTION_S


def _split_listen(listen: str) -> tuple[str, int]:
    host, sep, port_text = listen.rpartition(":")
    if not sep or not host:
        raise ValueError(f"listen must look like host:port, got {listen!r}")
    try:
        port = int(port_text)
    except ValueError as exc:
        raise ValueError(f"invalid port in listen value {listen!r}") from exc
    if not 0 <= port <= 65535:
        raise ValueError(f"port out of range in listen value {listen!r}")
    return host, port


def load_config(path: Path | None = None) -> ServiceConfig:
    """Read config from JSON; SAFEKEEPER_LISTEN / SAFEKEEPER_DATA_DIR win.

    All keys are optional:

    ``listen``            "host:port" string
    ``data_dir``          directory for records.log and tools.json
    ``tokens``            list of {token, subject, role} objects
    ``skew_window_s``     accepted send-time divergence for submissions
    ``nonce_retention_s`` how long used nonces are remembered
    """
    raw: dict = {}
    if path is not None:
        raw = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError(f"config root must be a JSON object: {path}")
        unknown = set(raw) - {
            "listen",
            "data_dir",
            "tokens",
            "skew_window_s",
            "nonce_retention_s",
        }
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")

    listen = os.environ.get(ENV_LISTEN) or raw.get("listen", DEFAULT_LISTEN)
    host, port = _split_listen(str(listen))

    data_dir = os.environ.get(ENV_DATA_DIR) or raw.get("data_dir", "safekeeper-data")

    tokens: list[TokenEntry] = []
    for item in raw.get("tokens", []):
        if not isinstance(item, dict) or set(item) != {"token", "subject", "role"}:
            raise ValueError("each token entry needs exactly token, subject, role")
        tokens.append(
            TokenEntry(
                token=str(item["token"]),
                subject=str(item["subject"]),
                role=Role(item["role"]),
            )
        )

    skew = int(raw.get("skew_window_s", SKEW_WINDOW_S))
    retention = int(raw.get("nonce_retention_s", NONCE_RETENTION_S))
    if skew < 0:
        raise ValueError("skew_window_s must be >= 0")
    if retention < 1:
        raise ValueError("nonce_retention_s must be >= 1")

    return ServiceConfig(
        host=host,
        port=port,
        data_dir=Path(data_dir),
        tokens=tuple(tokens),
        skew_window_s=skew,
        nonce_retention_s=retention,
    )
