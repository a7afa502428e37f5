"""Client-side guards: analyses run only after their usage is logged.

Three modes cover the patterns the instrumented tools need:

    ON_REQUEST       log the declared usage, await the receipt, then run
    ON_RESULT        run first, log only the data types the result actually
                     carries, release the result after the receipt
    ONCE_PER_REPORT  like ON_REQUEST, but a cached result short-circuits:
                     reopening a report logs nothing new

All modes fail closed: no receipt, no result. A result you can see always
has a durable log entry behind it (or came from a cache whose creation
had one).
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Protocol, Sequence

from safekeeper.core.chain import AppendReceipt
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.timeutil import utc_now
from safekeeper.monitor.client import LoggingFailed


class SubmitClient(Protocol):
    """What the guards need from a client; satisfied by SafekeeperClient."""

    responsible: str

    def submit_entry(self, entry: UsageLogEntry) -> AppendReceipt: ...


class LoggingMode(Enum):
    ON_REQUEST = "on-request"
    ON_RESULT = "on-result"
    ONCE_PER_REPORT = "once-per-report"


@dataclass(frozen=True)
class UsageDescriptor:
    """The usage-log fields an analysis author knows ahead of time."""

    tool: str
    kind: str
    justification: str
    data_types: tuple[str, ...]
    owners: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "data_types", tuple(self.data_types))
        object.__setattr__(self, "owners", tuple(self.owners))
        # Reject upfront what the log service would reject at submit time.
        self.to_entry("probe")

    def to_entry(
        self, responsible: str, data_types: Optional[tuple[str, ...]] = None
    ) -> UsageLogEntry:
        return UsageLogEntry(
            entry_id=uuid.uuid4().hex,
            responsible=responsible,
            tool=self.tool,
            kind=self.kind,
            justification=self.justification,
            data_types=self.data_types if data_types is None else data_types,
            owners=self.owners,
            timestamp=utc_now(),
        )


@dataclass(frozen=True)
class AnalysisOutput:
    """An analysis result plus the data-type labels it actually carries."""

    value: Any
    data_types: frozenset[str] = frozenset()


Analysis = Callable[[], Any]


class ResultCache:
    """Thread-safe result store backing ONCE_PER_REPORT."""

    def __init__(self) -> None:
        self._results: dict[UsageDescriptor, Any] = {}
        self._lock = threading.Lock()

    def get(self, descriptor: UsageDescriptor) -> tuple[bool, Any]:
        with self._lock:
            if descriptor in self._results:
                return True, self._results[descriptor]
            return False, None

    def put(self, descriptor: UsageDescriptor, value: Any) -> None:
        with self._lock:
            self._results[descriptor] = value

    def __len__(self) -> int:
        with self._lock:
            return len(self._results)


def _run_analysis(analysis: Analysis, mode: LoggingMode) -> tuple[Any, frozenset[str]]:
    output = analysis()
    if isinstance(output, AnalysisOutput):
        return output.value, frozenset(output.data_types)
    if mode is LoggingMode.ON_RESULT:
        raise TypeError(
            "ON_RESULT analyses must return AnalysisOutput so the guard "
            "knows which data types the result carries"
        )
    return output, frozenset()


def guarded_run(
    descriptor: UsageDescriptor,
    mode: LoggingMode,
    analysis: Analysis,
    client: SubmitClient,
    cache: Optional[ResultCache] = None,
) -> Any:
    """Run an analysis under the logging contract of ``mode``.

    Raises LoggingFailed (from the client) without releasing any result
    when the usage could not be logged. ONCE_PER_REPORT requires ``cache``;
    a cache hit returns the stored result with no submission at all.
    """
    if mode is LoggingMode.ONCE_PER_REPORT:
        if cache is None:
            raise ValueError("ONCE_PER_REPORT needs a ResultCache")
        hit, cached = cache.get(descriptor)
        if hit:
            return cached

    if mode is LoggingMode.ON_RESULT:
        value, produced = _run_analysis(analysis, mode)
        touched = tuple(t for t in descriptor.data_types if t in produced)
        # An empty result touches nothing; logging the declared types
        # over-reports rather than under-reports, so the entry stays valid.
        entry = descriptor.to_entry(
            client.responsible, data_types=touched if touched else None
        )
        client.submit_entry(entry)
        return value

    entry = descriptor.to_entry(client.responsible)
    client.submit_entry(entry)
    value, _ = _run_analysis(analysis, mode)
    if mode is LoggingMode.ONCE_PER_REPORT:
        assert cache is not None
        cache.put(descriptor, value)
    return value


class GateState(Enum):
    HIDDEN = "hidden"
    ACTIVATED = "activated"


class GateHiddenError(RuntimeError):
    pass


class AnalysisGate:
    """An insight that stays hidden until someone explicitly activates it.

    Dashboards build one gate per insight; merely rendering the dashboard
    runs nothing and logs nothing. Activation logs the usage (by default
    under ON_RESULT semantics) and reveals the result; once activated the
    cached result is shown without further log entries.
    """

    def __init__(
        self,
        descriptor: UsageDescriptor,
        analysis: Analysis,
        mode: LoggingMode = LoggingMode.ON_RESULT,
    ) -> None:
        if mode is LoggingMode.ONCE_PER_REPORT:
            raise ValueError("gates cache internally; use ON_REQUEST or ON_RESULT")
        self.descriptor = descriptor
        self._analysis = analysis
        self._mode = mode
        self._state = GateState.HIDDEN
        self._cached: Any = None
        self._lock = threading.Lock()

    @property
    def state(self) -> GateState:
        with self._lock:
            return self._state

    @property
    def result(self) -> Any:
        with self._lock:
            if self._state is not GateState.ACTIVATED:
                raise GateHiddenError("gate not activated; result is hidden")
            return self._cached

    def activate(self, client: SubmitClient) -> Any:
        """Log the usage, reveal the result, and remember it.

        A failed submission leaves the gate Hidden with nothing revealed.
        Activating an already-activated gate returns the cached result
        without a new log entry.
        """
        with self._lock:
            if self._state is GateState.ACTIVATED:
                return self._cached
            value = guarded_run(self.descriptor, self._mode, self._analysis, client)
            self._state = GateState.ACTIVATED
            self._cached = value
            return value


@dataclass(frozen=True)
class AnalysisSpec:
    """One selectable analysis: what to log and what to run."""

    descriptor: UsageDescriptor
    analysis: Analysis


@dataclass(frozen=True)
class Report:
    """Results of a selection, generated once and reopenable for free."""

    results: tuple[tuple[UsageDescriptor, Any], ...]
    receipts: tuple[AppendReceipt, ...] = field(repr=False, default=())

    def reopen(self) -> tuple[tuple[UsageDescriptor, Any], ...]:
        """Cached view; deliberately performs no logging and no recompute."""
        return self.results

    def value_for(self, kind: str) -> Any:
        for descriptor, value in self.results:
            if descriptor.kind == kind:
                return value
        raise KeyError(kind)


def select_and_report(
    selection: Sequence[AnalysisSpec], client: SubmitClient
) -> Report:
    """Log every selected analysis up front, then compute the report.

    All submissions complete (receipts in hand) before any analysis runs;
    if one fails the whole report is aborted and no analysis executes.
    Reopening the returned report adds no entries.
    """
    specs = list(selection)
    if not specs:
        raise ValueError("selection must not be empty")
    receipts: list[AppendReceipt] = []
    for spec in specs:
        entry = spec.descriptor.to_entry(client.responsible)
        receipts.append(client.submit_entry(entry))
    results = tuple(
        (spec.descriptor, _run_analysis(spec.analysis, LoggingMode.ONCE_PER_REPORT)[0])
        for spec in specs
    )
    return Report(results=results, receipts=tuple(receipts))
