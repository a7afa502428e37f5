"""HTTP client a monitored tool uses to log its data usage.

Every submission is signed with the tool's key and carries a fresh nonce.
Transport hiccups and server-side storage failures are retried a bounded
number of times within a fixed budget, re-signing each attempt so the
nonce stays unique; rejections are final. When the budget runs out the
caller gets an exception, and per the fail-closed contract it must not
show its analysis result.
"""

from __future__ import annotations

import time
from typing import Any, Optional

import httpx

from safekeeper.auth.envelope import sign_envelope
from safekeeper.core.chain import AppendReceipt
from safekeeper.core.entries import UsageLogEntry
from safekeeper.service.wire import envelope_to_wire

MAX_ATTEMPTS = 3
RETRY_BUDGET_S = 10.0
REQUEST_TIMEOUT_S = 5.0
_BACKOFF_BASE_S = 0.2


class LoggingFailed(Exception):
    """Usage logging did not complete; the analysis result must stay hidden."""


class SubmitRejected(LoggingFailed):
    """The service refused the envelope; retrying the same request is futile."""

    def __init__(self, status: int, error: str, detail: str) -> None:
        super().__init__(f"submission rejected ({status} {error}): {detail}")
        self.status = status
        self.error = error
        self.detail = detail


class SubmitTransportError(LoggingFailed):
    """The service could not be reached, or kept failing, within the budget."""


def _parse_receipt(body: Any) -> AppendReceipt:
    try:
        return AppendReceipt(
            sequence=int(body["sequence"]),
            entry_hash=bytes.fromhex(body["entry_hash"]),
            head_hash=bytes.fromhex(body["head_hash"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SubmitTransportError(f"unparseable receipt: {exc}") from exc


class SafekeeperClient:
    """Submission client bound to one tool identity and one responsible user."""

    def __init__(
        self,
        base_url: str,
        tool_id: str,
        signing_key: bytes,
        responsible: str,
        timeout_s: float = REQUEST_TIMEOUT_S,
        max_attempts: int = MAX_ATTEMPTS,
        retry_budget_s: float = RETRY_BUDGET_S,
    ) -> None:
        if not responsible:
            raise ValueError("responsible must be non-empty")
        self.tool_id = tool_id
        self.responsible = responsible
        self._signing_key = signing_key
        self._max_attempts = max(1, max_attempts)
        self._budget = retry_budget_s
        self._http = httpx.Client(base_url=base_url, timeout=timeout_s)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "SafekeeperClient":
        return self

    def __exit__(self, *_exc_info: object) -> None:
        self.close()

    def submit_entry(self, entry: UsageLogEntry) -> AppendReceipt:
        """Sign and submit one entry, retrying transient failures.

        Each attempt is a fresh envelope (new nonce, new sent_at): the
        previous try may have died after the server burned the nonce but
        before the response arrived.
        """
        deadline = time.monotonic() + self._budget
        last_failure: Optional[LoggingFailed] = None
        for attempt in range(self._max_attempts):
            if attempt > 0:
                pause = _BACKOFF_BASE_S * (4**(attempt - 1))
                if time.monotonic() + pause > deadline:
                    break
                time.sleep(pause)
            envelope = sign_envelope(entry, self.tool_id, self._signing_key)
            try:
                response = self._http.post(
                    "/api/log", json=envelope_to_wire(envelope)
                )
            except httpx.TransportError as exc:
                last_failure = SubmitTransportError(f"submission failed: {exc}")
                continue
            if response.status_code == 200:
                return _parse_receipt(response.json())
            error, detail = _error_fields(response)
            if 400 <= response.status_code < 500:
                raise SubmitRejected(response.status_code, error, detail)
            last_failure = SubmitTransportError(
                f"server error {response.status_code} ({error}): {detail}"
            )
        assert last_failure is not None
        raise last_failure


def _error_fields(response: httpx.Response) -> tuple[str, str]:
    try:
        body = response.json()
        return str(body.get("error", "unknown")), str(body.get("detail", ""))
    except ValueError:
        return "unknown", response.text[:200]


class ApiCallError(RuntimeError):
    """A non-2xx answer to a plain API call (registration, queries)."""

    def __init__(self, status: int, error: str, detail: str) -> None:
        super().__init__(f"{status} {error}: {detail}")
        self.status = status
        self.error = error
        self.detail = detail


def _checked(response: httpx.Response) -> Any:
    if response.status_code != 200:
        error, detail = _error_fields(response)
        raise ApiCallError(response.status_code, error, detail)
    return response.json()


def register_tool(
    base_url: str,
    admin_token: str,
    tool_id: str,
    display_name: str,
    verification_key: bytes,
    timeout_s: float = REQUEST_TIMEOUT_S,
) -> None:
    _checked(
        httpx.post(
            f"{base_url}/api/tools",
            json={
                "tool_id": tool_id,
                "display_name": display_name,
                "verification_key": verification_key.hex(),
            },
            headers={"Authorization": f"Bearer {admin_token}"},
            timeout=timeout_s,
        )
    )


def fetch_json(
    base_url: str,
    path: str,
    token: str,
    params: Optional[dict[str, str]] = None,
    timeout_s: float = REQUEST_TIMEOUT_S,
) -> Any:
    """GET an authenticated endpoint and return the decoded JSON body."""
    return _checked(
        httpx.get(
            f"{base_url}{path}",
            params=params,
            headers={"Authorization": f"Bearer {token}"},
            timeout=timeout_s,
        )
    )
