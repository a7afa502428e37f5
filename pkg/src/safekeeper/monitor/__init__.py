"""Fail-closed instrumentation SDK for analytics tools."""

from safekeeper.monitor.client import (
    LoggingFailed,
    SafekeeperClient,
    SubmitRejected,
    SubmitTransportError,
    fetch_json,
    register_tool,
)
from safekeeper.monitor.guard import (
    AnalysisGate,
    AnalysisOutput,
    AnalysisSpec,
    GateHiddenError,
    GateState,
    LoggingMode,
    Report,
    ResultCache,
    UsageDescriptor,
    guarded_run,
    select_and_report,
)

__all__ = [
    "AnalysisGate",
    "AnalysisOutput",
    "AnalysisSpec",
    "GateHiddenError",
    "GateState",
    "LoggingFailed",
    "LoggingMode",
    "Report",
    "ResultCache",
    "SafekeeperClient",
    "SubmitRejected",
    "SubmitTransportError",
    "UsageDescriptor",
    "fetch_json",
    "guarded_run",
    "register_tool",
    "select_and_report",
]
