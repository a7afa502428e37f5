"""Seed a service store for the dashboard parity tests.

Builds a week of usage records for one owner (20+20+20+20+20+17 on the six
prior UTC days, 11 today, across nine consumers) plus a service config with
an owner token and a consumer token, then exits. The test harness starts
the service over the seeded directory afterwards.
"""

import argparse
import json
from datetime import timedelta
from pathlib import Path

from safekeeper import crypto
from safekeeper.auth.envelope import sign_envelope
from safekeeper.auth.tools import ToolIdentity, ToolRegistry
from safekeeper.core.entries import UsageLogEntry
from safekeeper.core.timeutil import utc_now
from safekeeper.service.storage import LogStore

TOOL_ID = "jira-board"


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--data-dir", required=True)
    parser.add_argument("--config-out", required=True)
    parser.add_argument("--listen", required=True)
    args = parser.parse_args()

    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    signing_key = crypto.generate_signing_key()
    ToolRegistry(data_dir / "tools.json").register(
        ToolIdentity(TOOL_ID, "Jira Board", crypto.verification_key(signing_key))
    )

    now = utc_now()
    today_start = now.replace(hour=0, minute=0, second=0)
    stamps = []
    for back, count in zip(range(6, 0, -1), (20, 20, 20, 20, 20, 17)):
        day = today_start - timedelta(days=back)
        stamps.extend(day + timedelta(hours=12, seconds=i) for i in range(count))
    step = (now - today_start) / 13
    stamps.extend(today_start + step * (i + 1) for i in range(11))

    store = LogStore(data_dir)
    for index, stamp in enumerate(stamps):
        entry = UsageLogEntry(
            entry_id=f"seed-{index:04d}",
            responsible=f"consumer-{index % 9}",
            tool=TOOL_ID,
            kind="aggregation",
            justification="summarize pages created per user",
            data_types=("user_name", "pages_created"),
            owners=("alex",),
            timestamp=stamp,
        )
        store.submit(sign_envelope(entry, TOOL_ID, signing_key))
    store.close()

    Path(args.config_out).write_text(
        json.dumps(
            {
                "listen": args.listen,
                "data_dir": str(data_dir),
                "tokens": [
                    {"token": "tok-alex", "subject": "alex", "role": "owner"},
                    {
                        "token": "tok-consumer",
                        "subject": "consumer-0",
                        "role": "consumer",
                    },
                ],
            }
        )
    )


if __name__ == "__main__":
    main()
