"""End-to-end demonstration: three instrumented analyses, one live service.

The demo boots a real HTTP service on a loopback port, registers three
analysis tools over the wire, then drives each through its guard:

    chat-graph     mention network, logged ON_REQUEST, triggered twice
    review-board   supporter ranking behind two explicit-activation gates,
                   only one of which gets activated (logged ON_RESULT)
    scrum-report   commit-hours report via select-and-report, then
                   reopened twice from cache

Mode semantics make the entry count independent of the fixture: two
triggers + one activation + one report = four entries, and the reopens
add nothing. Afterwards the demo fetches each owner's overview through
the API exactly like a dashboard would.
"""

from __future__ import annotations

import secrets
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from safekeeper import crypto
from safekeeper.analytics import (
    EventFixture,
    commit_hours,
    generate_fixture,
    mention_network,
    supporter_ranking,
)
from safekeeper.auth.nonces import NonceCache
from safekeeper.auth.principals import Role, TokenTable
from safekeeper.auth.tools import ToolRegistry
from safekeeper.monitor import (
    AnalysisGate,
    AnalysisOutput,
    AnalysisSpec,
    GateState,
    LoggingMode,
    SafekeeperClient,
    UsageDescriptor,
    fetch_json,
    guarded_run,
    register_tool,
    select_and_report,
)
from safekeeper.service.app import create_app
from safekeeper.service.embedded import EmbeddedServer
from safekeeper.service.storage import TOOLS_FILE, recover_on_startup

EXPECTED_ENTRIES = 4  # 2 triggers + 1 activation + 1 report


@dataclass(frozen=True)
class DemoOutcome:
    seed: int
    entries_logged: int
    chain_length: int
    head_hash: str
    triggers: int
    activations: int
    hidden_gates: int
    report_analyses: int
    reopens: int
    mention_edge_count: int
    top_supporter: Optional[tuple[str, int]]
    commit_authors: int
    overviews: tuple[tuple[str, dict[str, Any]], ...]


def _owners_with(ids: set[str], roster: tuple[str, ...]) -> tuple[str, ...]:
    """Roster-ordered owner list; falls back to the whole roster if empty."""
    picked = tuple(member for member in roster if member in ids)
    return picked if picked else roster


def run_demo(seed: int, data_dir: Optional[Path] = None) -> DemoOutcome:
    """Run the full scenario; raises LoggingFailed if the log path breaks."""
    fixture = generate_fixture(seed)
    if data_dir is not None:
        return _run_against_dir(seed, fixture, data_dir)
    with tempfile.TemporaryDirectory(prefix="safekeeper-demo-") as tmp:
        return _run_against_dir(seed, fixture, Path(tmp))


def _run_against_dir(seed: int, fixture: EventFixture, data_dir: Path) -> DemoOutcome:
    admin_token = secrets.token_hex(16)
    owner_tokens = {member: secrets.token_hex(16) for member in fixture.roster}

    registry = ToolRegistry(data_dir / TOOLS_FILE)
    store = recover_on_startup(data_dir, registry.lookup_key)
    tokens = TokenTable(
        [(admin_token, "demo-operator", Role.ADMIN)]
        + [(token, member, Role.OWNER) for member, token in owner_tokens.items()]
    )
    app = create_app(store, registry, NonceCache(), tokens)
    base_length = len(store)

    try:
        with EmbeddedServer(app) as server:
            outcome = _drive(
                seed, fixture, server.base_url, admin_token, owner_tokens, base_length
            )
    finally:
        store.close()
    return outcome


def _drive(
    seed: int,
    fixture: EventFixture,
    base_url: str,
    admin_token: str,
    owner_tokens: dict[str, str],
    base_length: int,
) -> DemoOutcome:
    keys = {
        tool_id: crypto.generate_signing_key()
        for tool_id in ("chat-graph", "review-board", "scrum-report")
    }
    for tool_id, display in (
        ("chat-graph", "Chat Mention Grapher"),
        ("review-board", "Review Support Board"),
        ("scrum-report", "Scrum Activity Report"),
    ):
        register_tool(
            base_url, admin_token, tool_id, display,
            crypto.verification_key(keys[tool_id]),
        )

    mention_desc = UsageDescriptor(
        tool="chat-graph",
        kind="mention-network",
        justification="map who collaborates with whom",
        data_types=("chat-mentions", "message-metadata"),
        owners=_owners_with(
            {m.sender for m in fixture.messages}
            | {who for m in fixture.messages for who in m.mentions},
            fixture.roster,
        ),
    )
    ranking_desc = UsageDescriptor(
        tool="review-board",
        kind="supporter-ranking",
        justification="recognize most active reviewers",
        data_types=("review-activity", "review-comments"),
        owners=_owners_with(
            {r.reviewer for r in fixture.reviews}
            | {r.reviewee for r in fixture.reviews},
            fixture.roster,
        ),
    )
    commit_desc = UsageDescriptor(
        tool="scrum-report",
        kind="commit-hours",
        justification="weekly activity report for sprint review",
        data_types=("commit-history",),
        owners=_owners_with({c.author for c in fixture.commits}, fixture.roster),
    )

    with SafekeeperClient(
        base_url, "chat-graph", keys["chat-graph"], responsible="analyst-blake"
    ) as chat_client, SafekeeperClient(
        base_url, "review-board", keys["review-board"], responsible="manager-casey"
    ) as review_client, SafekeeperClient(
        base_url, "scrum-report", keys["scrum-report"], responsible="lead-devon"
    ) as scrum_client:
        # Two separate views of the mention graph: each one logs first.
        graph = guarded_run(
            mention_desc,
            LoggingMode.ON_REQUEST,
            lambda: mention_network(fixture.messages),
            chat_client,
        )
        guarded_run(
            mention_desc,
            LoggingMode.ON_REQUEST,
            lambda: mention_network(fixture.messages),
            chat_client,
        )
        triggers = 2

        # A dashboard with two gated gadgets; rendering it logs nothing.
        def ranked_with_labels() -> AnalysisOutput:
            ranking = supporter_ranking(fixture.reviews)
            return AnalysisOutput(
                value=ranking,
                data_types=frozenset(("review-activity",) if ranking else ()),
            )

        gates = [
            AnalysisGate(ranking_desc, ranked_with_labels),
            AnalysisGate(ranking_desc, ranked_with_labels),
        ]
        ranking = gates[0].activate(review_client)
        hidden_gates = sum(1 for gate in gates if gate.state is GateState.HIDDEN)

        # Explicitly selected report; reopening serves the cached results.
        report = select_and_report(
            [AnalysisSpec(commit_desc, lambda: commit_hours(fixture.commits))],
            scrum_client,
        )
        report.reopen()
        report.reopen()

    head = fetch_json(base_url, "/api/chain/head", admin_token)
    overviews = tuple(
        (member, fetch_json(base_url, "/api/overview", owner_tokens[member]))
        for member in fixture.roster
    )
    return DemoOutcome(
        seed=seed,
        entries_logged=head["length"] - base_length,
        chain_length=head["length"],
        head_hash=head["head_hash"],
        triggers=triggers,
        activations=1,
        hidden_gates=hidden_gates,
        report_analyses=len(report.results),
        reopens=2,
        mention_edge_count=len(graph),
        top_supporter=tuple(ranking[0]) if ranking else None,
        commit_authors=len(report.value_for("commit-hours")),
        overviews=overviews,
    )


def render_outcome(outcome: DemoOutcome) -> str:
    lines = [
        f"demo (seed {outcome.seed})",
        f"  entries logged: {outcome.entries_logged}"
        f" (triggers {outcome.triggers}, activations {outcome.activations},"
        f" report analyses {outcome.report_analyses};"
        f" {outcome.reopens} reopens added 0)",
        f"  gates left hidden: {outcome.hidden_gates}",
        f"  chain length {outcome.chain_length}, head {outcome.head_hash[:16]}...",
        f"  mention graph edges: {outcome.mention_edge_count}",
        f"  top supporter: {outcome.top_supporter}",
        f"  authors in commit report: {outcome.commit_authors}",
        "  per-owner overview (7 days):",
    ]
    for owner, stats in outcome.overviews:
        top = ", ".join(
            f"{item['consumer']}:{item['count']}" for item in stats["top_consumers_7d"]
        )
        lines.append(
            f"    {owner}: today {stats['accesses_today']},"
            f" 7d {stats['accesses_7d']},"
            f" consumers {stats['distinct_consumers_7d']}"
            + (f" ({top})" if top else "")
        )
    return "\n".join(lines)
