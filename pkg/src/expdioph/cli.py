"""Command-line entry point.

Exit codes: 0 pass, 1 falsification, 2 usage, 3 I/O.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .bounds import bounds_table
from .campaign import CampaignConfig, CampaignReport, report_emit, run_campaign

EXIT_PASS, EXIT_FALSIFIED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
WORKERS_ENV = "EXPDIOPH_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep it explicit
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config_file(path: str | Path) -> dict[str, str]:
    """key = value lines; blank lines and # comments ignored. Dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; explicit flags win")
    p.add_argument("--out", help="directory for JSON-lines artifacts and summary.json")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--workers", type=int, help=f"worker processes (default: ${WORKERS_ENV} or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expdioph", description="Checks for a^x + b^y = c^z and a^x - b^y = c.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="regression checks on the known identity lists")
    verify.add_argument("target", choices=["exceptional-lists"])
    _common(verify)

    sv = sub.add_parser("sieve", help="three-step sieve")
    sv.add_argument("target", choices=["c13"])
    sv.add_argument("--case", choices=["v", "vi"])
    sv.add_argument("--z-max", type=int)
    sv.add_argument("--n-prime", type=int, choices=range(4))
    sv.add_argument("--chunk", type=int)
    sv.add_argument("--checkpoint")
    sv.add_argument("--resume", action="store_true", default=None)
    sv.add_argument("--drop-order-three", action="store_true", default=None,
                    help="skip the b = 3, 4, 9, 10 (mod 13) filter in step 2")
    _common(sv)

    bd = sub.add_parser("bounds", help="table of bound constants")
    bd.add_argument("--show", action="store_true")
    _common(bd)

    se = sub.add_parser("search", help="enumerate a^x + b^y = c^z")
    for key in ("--a", "--b", "--c", "--z-max"):
        se.add_argument(key, type=int)
    _common(se)

    pi = sub.add_parser("pillai", help="enumerate a^x - b^y = c")
    for key in ("--a", "--b", "--c", "--x-max"):
        pi.add_argument(key, type=int)
    _common(pi)

    cl = sub.add_parser("closures", help="finite brute-force closures")
    cl.add_argument("--z-max-vii", type=int)
    cl.add_argument("--besi-box", help="S,K,N")
    cl.add_argument("--sqrt13-kmax", type=int)
    _common(cl)

    rp = sub.add_parser("report", help="re-render a saved summary.json")
    rp.add_argument("--in", dest="infile", required=True)
    rp.add_argument("--format", choices=("json", "csv", "text"), default="text")
    return parser


_SKIP = {"command", "target", "config", "out", "format", "workers", "verbose", "show", "case"}


def _config_from_args(args: argparse.Namespace) -> CampaignConfig:
    params: dict[str, Any] = read_config_file(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key not in _SKIP and value is not None:
            params[key] = value
    if args.command == "verify":
        mode = "exceptional-lists"
    elif args.command == "sieve":
        case = args.case or params.pop("case", None)
        if case not in ("v", "vi"):
            raise UsageError("sieve needs --case v or --case vi")
        mode = f"sieve-{case}"
    else:
        mode = args.command
    params.pop("case", None)
    workers = args.workers or params.pop("workers", None) or os.environ.get(WORKERS_ENV) or 1
    params.pop("workers", None)
    out = args.out or params.pop("out", None)
    params.pop("out", None)
    try:
        return CampaignConfig(mode, params, int(workers), Path(out) if out else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(data: bytes) -> None:
    sys.stdout.flush()
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "report":
            data = json.loads(Path(args.infile).read_text(encoding="utf-8"))
            report = CampaignReport.from_dict(data)
            _emit(report_emit(report, args.format))
            return EXIT_PASS if report.passed else EXIT_FALSIFIED
        if args.command == "bounds" and args.show and args.format == "text":
            for row in bounds_table():
                flag = "ok" if row.within_tolerance and row.reference_valid else "FAIL"
                print(f"{row.name:<16} computed {row.computed:>7}  ref {row.reference:>7}  {flag}")
        config = _config_from_args(args)
        report = run_campaign(config)
        _emit(report_emit(report, args.format))
        return EXIT_PASS if report.passed else EXIT_FALSIFIED
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
