"""Network-facing service: wire protocol, persistence, recovery, hosting."""

from safekeeper.service.app import ApiError, build_service, create_app
from safekeeper.service.config import ServiceConfig, TokenEntry, load_config
from safekeeper.service.embedded import EmbeddedServer
from safekeeper.service.storage import (
    RECORDS_FILE,
    TOOLS_FILE,
    LogStore,
    RecordDecodeError,
    TamperedStoreError,
    read_log,
    recover_on_startup,
    write_log,
)
from safekeeper.service.tamper import ATTACKS, apply_attack

__all__ = [
    "ATTACKS",
    "ApiError",
    "EmbeddedServer",
    "LogStore",
    "RECORDS_FILE",
    "RecordDecodeError",
    "ServiceConfig",
    "TOOLS_FILE",
    "TamperedStoreError",
    "TokenEntry",
    "apply_attack",
    "build_service",
    "create_app",
    "load_config",
    "read_log",
    "recover_on_startup",
    "write_log",
]
