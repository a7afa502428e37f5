"""Operator command line: serve, verify, tamper, demo, query, key and tool management.

Exit codes are stable so scripts and the test harness can branch on them:

    0  success
    1  unexpected failure
    2  usage or configuration error
    3  chain verification failure (including refusing to serve)
    4  authentication or authorization failure
    5  transport failure (service unreachable, timeouts, 5xx)
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from datetime import timezone
from pathlib import Path
from typing import Optional

import httpx
import uvicorn

from safekeeper import crypto
from safekeeper.auth.tools import ToolRegistry
from safekeeper.core.chain import VerificationReport, verify_chain
from safekeeper.core.timeutil import from_unix
from safekeeper.demo import render_outcome, run_demo
from safekeeper.monitor.client import ApiCallError, LoggingFailed, SubmitRejected, fetch_json, register_tool
from safekeeper.service.config import load_config
from safekeeper.service.app import build_service
from safekeeper.service.storage import (
    TOOLS_FILE,
    RecordDecodeError,
    TamperedStoreError,
    read_log,
)
from safekeeper.service.tamper import ATTACKS, apply_attack

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_AUTH = 4
EXIT_TRANSPORT = 5


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _api_error_exit(exc: ApiCallError) -> int:
    code = EXIT_AUTH if exc.status in (401, 403) else EXIT_TRANSPORT
    return _fail(f"error: {exc}", code)


def _report_payload(report: VerificationReport, records: int) -> dict:
    return {
        "ok": report.ok,
        "records": records,
        "failures": [
            {"location": loc, "class": cls.value} for loc, cls in report.failures
        ],
    }


def cmd_serve(args: argparse.Namespace) -> int:
    config_path = Path(args.config)
    if not config_path.is_file():
        return _fail(f"config file not found: {config_path}", EXIT_USAGE)
    try:
        config = load_config(config_path)
    except (ValueError, KeyError) as exc:
        return _fail(f"bad config: {exc}", EXIT_USAGE)
    try:
        app = build_service(config)
    except TamperedStoreError as exc:
        return _fail(
            "refusing to serve, stored log failed verification:\n"
            + exc.report.describe(),
            EXIT_VERIFY,
        )
    print(f"safekeeper serving on http://{config.host}:{config.port}")
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    data_dir = Path(args.data_dir)
    expected_head: Optional[bytes] = None
    if args.expected_head is not None:
        try:
            expected_head = bytes.fromhex(args.expected_head)
        except ValueError:
            return _fail("--expected-head must be hex", EXIT_USAGE)
        if len(expected_head) != 32:
            return _fail("--expected-head must be 32 bytes of hex", EXIT_USAGE)

    try:
        records, _ = read_log(data_dir / "records.log")
    except RecordDecodeError as exc:
        if args.format == "json":
            print(json.dumps({"ok": False, "undecodable_record": exc.index}))
        else:
            print(f"chain verification FAILED\n  at {exc.index}: altered (undecodable)")
        return EXIT_VERIFY

    registry_path = data_dir / TOOLS_FILE
    registry = ToolRegistry(registry_path if registry_path.exists() else None)
    report = verify_chain(
        records,
        registry.lookup_key,
        expected_head=expected_head,
        expected_length=args.expected_length,
    )
    if args.format == "json":
        print(json.dumps(_report_payload(report, len(records))))
    else:
        print(f"records: {len(records)}")
        print(report.describe())
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_tamper(args: argparse.Namespace) -> int:
    if not args.unsafe_test:
        return _fail(
            "tamper rewrites the store; pass --unsafe-test to confirm", EXIT_USAGE
        )
    try:
        description = apply_attack(Path(args.data_dir), args.attack, args.position)
    except ValueError as exc:
        return _fail(f"error: {exc}", EXIT_USAGE)
    print(description)
    return EXIT_OK


def cmd_demo(args: argparse.Namespace) -> int:
    data_dir = Path(args.data_dir) if args.data_dir else None
    try:
        outcome = run_demo(args.seed, data_dir=data_dir)
    except SubmitRejected as exc:
        return _fail(f"demo aborted, submission rejected: {exc}", EXIT_AUTH)
    except LoggingFailed as exc:
        return _fail(f"demo aborted, logging failed: {exc}", EXIT_TRANSPORT)
    except ApiCallError as exc:
        return _api_error_exit(exc)
    except httpx.TransportError as exc:
        return _fail(f"demo aborted, service unreachable: {exc}", EXIT_TRANSPORT)
    except TamperedStoreError as exc:
        return _fail(exc.report.describe(), EXIT_VERIFY)
    if args.format == "json":
        print(json.dumps(dataclasses.asdict(outcome)))
    else:
        print(render_outcome(outcome))
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    params: dict[str, str] = {}
    for name, value in (
        ("owner", args.owner),
        ("responsible", args.responsible),
        ("tool", args.tool),
        ("kind", args.kind),
        ("text", args.text),
        ("from", args.ts_from),
        ("to", args.ts_to),
        ("page_index", args.page_index),
        ("page_size", args.page_size),
    ):
        if value is not None:
            params[name] = str(value)
    try:
        body = fetch_json(args.url, "/api/log", args.token, params=params)
    except ApiCallError as exc:
        return _api_error_exit(exc)
    except httpx.TransportError as exc:
        return _fail(f"error: service unreachable: {exc}", EXIT_TRANSPORT)
    if args.format == "json":
        print(json.dumps(body))
        return EXIT_OK
    for item in body["items"]:
        entry = item["entry"]
        stamp = from_unix(entry["timestamp"]).astimezone(timezone.utc)
        print(
            f"{stamp:%Y-%m-%d %H:%M:%S}Z  #{item['sequence']:<5} "
            f"{entry['responsible']:<16} {entry['tool']:<14} {entry['kind']:<18} "
            f"types={','.join(entry['data_types'])} owners={','.join(entry['owners'])} "
            f"just={entry['justification']!r}"
        )
    print(
        f"total: {body['total']} (page {body['page_index']}, size {body['page_size']})"
    )
    return EXIT_OK


def cmd_keygen(args: argparse.Namespace) -> int:
    prefix = Path(args.out)
    if prefix.parent and not prefix.parent.exists():
        prefix.parent.mkdir(parents=True, exist_ok=True)
    signing_path = prefix.with_suffix(".key")
    public_path = prefix.with_suffix(".pub")
    if signing_path.exists() or public_path.exists():
        return _fail(f"refusing to overwrite existing {signing_path} / {public_path}", EXIT_USAGE)
    signing = crypto.generate_signing_key()
    crypto.save_key_file(signing_path, signing, private=True)
    crypto.save_key_file(public_path, crypto.verification_key(signing))
    print(f"signing key:      {signing_path}")
    print(f"verification key: {public_path}")
    print(f"public hex:       {crypto.verification_key(signing).hex()}")
    return EXIT_OK


def cmd_register_tool(args: argparse.Namespace) -> int:
    try:
        key = crypto.load_key_file(Path(args.key))
    except (OSError, ValueError) as exc:
        return _fail(f"cannot read key file: {exc}", EXIT_USAGE)
    try:
        register_tool(args.url, args.token, args.tool_id, args.display_name, key)
    except ApiCallError as exc:
        return _api_error_exit(exc)
    except httpx.TransportError as exc:
        return _fail(f"error: service unreachable: {exc}", EXIT_TRANSPORT)
    print(f"registered tool {args.tool_id} ({args.display_name})")
    return EXIT_OK


def cmd_list_tools(args: argparse.Namespace) -> int:
    registry_path = Path(args.data_dir) / TOOLS_FILE
    registry = ToolRegistry(registry_path if registry_path.exists() else None)
    tools = registry.list_tools()
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "tool_id": t.tool_id,
                        "display_name": t.display_name,
                        "verification_key": t.verification_key.hex(),
                    }
                    for t in tools
                ]
            )
        )
        return EXIT_OK
    if not tools:
        print("no tools registered")
        return EXIT_OK
    for tool in tools:
        print(f"{tool.tool_id:<20} {tool.display_name:<28} {tool.verification_key.hex()}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="safekeeper",
        description="Tamper-evident usage log: service, verifier and demo tooling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the log service")
    serve.add_argument("--config", required=True, help="path to JSON config file")
    serve.set_defaults(func=cmd_serve)

    verify = sub.add_parser("verify", help="verify a stored log")
    verify.add_argument("--data-dir", required=True)
    verify.add_argument("--expected-head", help="previously witnessed head hash (hex)")
    verify.add_argument(
        "--expected-length", type=int, help="previously witnessed record count"
    )
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.set_defaults(func=cmd_verify)

    tamper = sub.add_parser("tamper", help="corrupt a stored log (tests only)")
    tamper.add_argument("--data-dir", required=True)
    tamper.add_argument("--attack", required=True, choices=ATTACKS)
    tamper.add_argument("--position", type=int, default=0)
    tamper.add_argument("--unsafe-test", action="store_true")
    tamper.set_defaults(func=cmd_tamper)

    demo = sub.add_parser("demo", help="run the instrumented-analytics demo")
    demo.add_argument("--seed", type=int, default=42)
    demo.add_argument("--data-dir", help="keep the demo store here instead of a temp dir")
    demo.add_argument("--format", choices=("text", "json"), default="text")
    demo.set_defaults(func=cmd_demo)

    query = sub.add_parser("query", help="query the log over HTTP")
    query.add_argument("--url", required=True)
    query.add_argument("--token", required=True)
    query.add_argument("--owner")
    query.add_argument("--responsible")
    query.add_argument("--tool")
    query.add_argument("--kind")
    query.add_argument("--text")
    query.add_argument("--from", dest="ts_from", type=int, help="UNIX seconds, inclusive")
    query.add_argument("--to", dest="ts_to", type=int, help="UNIX seconds, exclusive")
    query.add_argument("--page-index", type=int)
    query.add_argument("--page-size", type=int)
    query.add_argument("--format", choices=("text", "json"), default="text")
    query.set_defaults(func=cmd_query)

    keygen = sub.add_parser("keygen", help="generate a tool key pair")
    keygen.add_argument("--out", required=True, help="path prefix for .key/.pub files")
    keygen.set_defaults(func=cmd_keygen)

    register = sub.add_parser("register-tool", help="register a tool with a service")
    register.add_argument("--url", required=True)
    register.add_argument("--token", required=True, help="admin bearer token")
    register.add_argument("--tool-id", required=True)
    register.add_argument("--display-name", required=True)
    register.add_argument("--key", required=True, help="path to the tool's .pub file")
    register.set_defaults(func=cmd_register_tool)

    list_tools = sub.add_parser("list-tools", help="list tools in a local registry")
    list_tools.add_argument("--data-dir", required=True)
    list_tools.add_argument("--format", choices=("text", "json"), default="text")
    list_tools.set_defaults(func=cmd_list_tools)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
