"""Command line client.

Every subcommand is a thin HTTP client: the request goes either to a
running service (``--server``) or to an in-process instance of the same
application over an ASGI transport, so CLI and service can never
disagree.  Reports arrive as JSON; ``--format markdown`` renders the
same dict locally.

Exit codes: 0 success, 1 failed checks or unexpected errors,
2 validation errors, 3 degenerate geometry, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Any

import httpx

from . import __version__
from .reports import render_markdown

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_GEOMETRY = 3
EXIT_BUDGET = 4

_ERROR_EXIT_CODES = {
    "validation": EXIT_VALIDATION,
    "degenerate_geometry": EXIT_GEOMETRY,
    "budget_exceeded": EXIT_BUDGET,
}

_IN_PROCESS = "http://permsym.internal"


def _pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts) or parts[0] == parts[1]:
        raise argparse.ArgumentTypeError(
            "expected two distinct comma-separated ids, e.g. --pair a,b"
        )
    return parts[0], parts[1]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="particle configuration JSON")
    common.add_argument(
        "--format", choices=("json", "markdown"), default="json",
        help="report rendering (default: json)",
    )
    common.add_argument(
        "--tolerance", type=float, metavar="T",
        help="override the geometric tolerance",
    )
    common.add_argument(
        "--server", metavar="URL",
        help="send requests to a running service instead of in-process",
    )
    common.add_argument(
        "--output", metavar="FILE", help="write the report to a file instead of stdout"
    )

    parser = argparse.ArgumentParser(
        prog="permsym",
        description="Exchange phases of ranked multi-particle state vectors.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[common], help="run the invariant checks")
    p_exchange = sub.add_parser("exchange", parents=[common], help="swap two particles")
    p_exchange.add_argument("--pair", type=_pair, required=True, metavar="A,B")
    sub.add_parser("csp", parents=[common], help="tabulate exchange phases vs the CSP")
    sub.add_parser(
        "impossibility", parents=[common],
        help="exhaustive parity refutation for three fermions",
    )
    p_search = sub.add_parser("search", parents=[common], help="search ranking schemes")
    p_search.add_argument("--max-rank", type=int, default=1, metavar="R")
    sub.add_parser(
        "breakdown", parents=[common], help="four-fermion double-exchange witness"
    )
    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    return parser


class _CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        raise _CliError(EXIT_VALIDATION, "this command needs --config FILE")
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise _CliError(EXIT_VALIDATION, f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _CliError(EXIT_VALIDATION, f"{path} is not valid JSON: {exc}") from exc


def _client(server: str | None) -> httpx.AsyncClient:
    # The in-process ASGI transport only speaks async, so both paths use
    # the async client and the caller drives one asyncio.run per command.
    if server:
        return httpx.AsyncClient(base_url=server, timeout=300.0)
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    return httpx.AsyncClient(transport=transport, base_url=_IN_PROCESS, timeout=300.0)


async def _send(args: argparse.Namespace) -> httpx.Response:
    async with _client(args.server) as client:
        if args.command == "verify":
            return await client.post(
                "/verify",
                json={"config": _load_config(args.config), "tolerance": args.tolerance},
            )
        if args.command == "exchange":
            return await client.post(
                "/exchange",
                json={
                    "config": _load_config(args.config),
                    "pair": list(args.pair),
                    "tolerance": args.tolerance,
                },
            )
        if args.command == "csp":
            return await client.post(
                "/csp",
                json={"config": _load_config(args.config), "tolerance": args.tolerance},
            )
        if args.command == "search":
            return await client.post(
                "/search",
                json={
                    "config": _load_config(args.config),
                    "max_rank": args.max_rank,
                    "tolerance": args.tolerance,
                },
            )
        if args.command == "impossibility":
            return await client.get("/impossibility")
        if args.command == "breakdown":
            return await client.get("/breakdown")
        raise _CliError(EXIT_VALIDATION, f"unknown command {args.command}")


def _request(args: argparse.Namespace) -> dict[str, Any]:
    resp = asyncio.run(_send(args))
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        raise _CliError(EXIT_FAILURE, f"HTTP {resp.status_code}: {resp.text}")
    tag = body.get("error")
    detail = body.get("detail")
    if not isinstance(detail, str):
        detail = json.dumps(detail)
    if tag in _ERROR_EXIT_CODES:
        raise _CliError(_ERROR_EXIT_CODES[tag], f"{tag}: {detail}")
    if resp.status_code == 422:
        raise _CliError(EXIT_VALIDATION, f"validation: {detail}")
    raise _CliError(EXIT_FAILURE, f"HTTP {resp.status_code}: {detail}")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("permsym.service.app:app", host=args.host, port=args.port)
        return EXIT_OK
    try:
        report = _request(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if args.format == "markdown":
        text = render_markdown(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True)
    _emit(text, args.output)
    if args.command == "verify" and not report["results"]["passed"]:
        return EXIT_FAILURE
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))
