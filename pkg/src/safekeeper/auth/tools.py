"""Registry of analysis tools allowed to submit usage entries.

Only envelopes signed by a registered tool's key are accepted, so the
registry is the service's roster of trusted submitters. It persists as a
small JSON file next to the record log; unlike the log itself it is
config, not evidence, and carries no tamper protection.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from safekeeper import crypto


class DuplicateToolError(ValueError):
    pass


@dataclass(frozen=True)
class ToolIdentity:
    tool_id: str
    display_name: str
    verification_key: bytes

    def __post_init__(self) -> None:
        if not self.tool_id:
            raise ValueError("tool_id must be non-empty")
        if not self.display_name:
            raise ValueError("display_name must be non-empty")
        if not crypto.is_valid_verification_key(self.verification_key):
            raise ValueError(
                f"verification_key must be {crypto.VERIFICATION_KEY_LENGTH} bytes"
            )


class ToolRegistry:
    """Thread-safe tool roster, optionally mirrored to a JSON file."""

    def __init__(self, path: Optional[Path] = None) -> None:
        self._path = path
        self._tools: dict[str, ToolIdentity] = {}
        self._lock = threading.Lock()
        if path is not None and path.exists():
            self._load(path)

    def register(self, identity: ToolIdentity) -> None:
        with self._lock:
            if identity.tool_id in self._tools:
                raise DuplicateToolError(f"tool already registered: {identity.tool_id}")
            self._tools[identity.tool_id] = identity
            if self._path is not None:
                self._save_locked()

    def get(self, tool_id: str) -> Optional[ToolIdentity]:
        with self._lock:
            return self._tools.get(tool_id)

    def lookup_key(self, tool_id: str) -> Optional[bytes]:
        identity = self.get(tool_id)
        return None if identity is None else identity.verification_key

    def list_tools(self) -> list[ToolIdentity]:
        with self._lock:
            return sorted(self._tools.values(), key=lambda t: t.tool_id)

    def __len__(self) -> int:
        with self._lock:
            return len(self._tools)

    def _load(self, path: Path) -> None:
        raw = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(raw, dict) or not isinstance(raw.get("tools"), list):
            raise ValueError(f"malformed tool registry file: {path}")
        for item in raw["tools"]:
            identity = ToolIdentity(
                tool_id=item["tool_id"],
                display_name=item["display_name"],
                verification_key=bytes.fromhex(item["verification_key"]),
            )
            if identity.tool_id in self._tools:
                raise ValueError(f"duplicate tool in registry file: {identity.tool_id}")
            self._tools[identity.tool_id] = identity

    def _save_locked(self) -> None:
        assert self._path is not None
        payload = {
            "tools": [
                {
                    "tool_id": identity.tool_id,
                    "display_name": identity.display_name,
                    "verification_key": identity.verification_key.hex(),
                }
                for identity in sorted(self._tools.values(), key=lambda t: t.tool_id)
            ]
        }
        # Write-then-rename keeps a crash from leaving a half-written file.
        tmp = self._path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        os.replace(tmp, self._path)
