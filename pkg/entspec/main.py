from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from .commands import HANDLERS
from .config import Settings
from .errors import EntspecError, InvalidArgumentError, OutputError, StateFormatError
from .models import CommandConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class EntspecArgumentParser(argparse.ArgumentParser):
    """Parse errors exit with status 1 (argparse defaults to 2, reserved for I/O failures)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="qubit count")
    common.add_argument("--seed", type=int, default=0, help="64-bit seed for random states")
    common.add_argument("--threads", type=int, help="sweep workers (0 = all CPUs)")
    common.add_argument("-o", "--output", help="output file (stdout when omitted, except for gen)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug logging")
    return common


def create_parser() -> EntspecArgumentParser:
    parser = EntspecArgumentParser(
        prog="entspec",
        description="Distribution of the participation number N_AB over balanced bipartitions of n-qubit pure states.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=EntspecArgumentParser)
    common = _common_parser()

    gen = sub.add_parser("gen", parents=[common], help="write a QSV1 state file")
    gen.add_argument("--type", dest="state_type", required=True, choices=["ghz", "w", "cluster", "random", "product"])
    gen.add_argument("--topology", choices=["chain", "ring"], default="chain")
    gen.add_argument("--index", type=int, default=0, help="basis index for --type product")

    for name, text in (
        ("sweep", "N_AB for every balanced bipartition, as CSV"),
        ("stats", "empirical and analytic statistics, as JSON"),
        ("hist", "histogram of N_AB, as CSV"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", help="state file (QSV1 or text); stats/hist also take a sweep CSV")
        if name == "stats":
            p.add_argument("--mu", choices=["exact", "asymptotic"], default="exact")
        if name == "hist":
            p.add_argument("--bins", type=int)
            p.add_argument("--range", nargs=2, type=float, metavar=("LOWER", "UPPER"))

    density = sub.add_parser("density", parents=[common], help="analytic density of N_AB, as CSV")
    density.add_argument("--points", type=int, default=100)
    density.add_argument("--mu", choices=["exact", "asymptotic"], default="exact")
    density.add_argument("--mass", action="store_true", help="also integrate the density over (0, inf)")

    table = sub.add_parser("table", parents=[common], help="recompute the reference table of mean N_AB")
    table.add_argument("--nmin", type=int, default=5)
    table.add_argument("--nmax", type=int, default=12)
    table.add_argument("--samples", type=int)
    table.add_argument("--topology", choices=["chain", "ring", "auto"], default="chain")

    scaling = sub.add_parser("scaling", parents=[common], help="mean and spread of N_AB versus n, as CSV")
    scaling.add_argument("--type", dest="state_type", choices=["ghz", "w", "cluster", "random"], default="random")
    scaling.add_argument("--nmin", type=int, default=5)
    scaling.add_argument("--nmax", type=int, default=12)
    scaling.add_argument("--samples", type=int)
    scaling.add_argument("--topology", choices=["chain", "ring"], default="chain")

    return parser


def build_config(args: argparse.Namespace) -> CommandConfig:
    fields: dict[str, Any] = {k: v for k, v in vars(args).items() if v is not None and k != "verbose"}
    if "range" in fields:
        fields["range_lower"], fields["range_upper"] = fields.pop("range")
    return CommandConfig(**fields)


def setup_logging(settings: Settings, verbose: int) -> None:
    level = {0: settings.LOG_LEVEL.upper(), 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    settings = Settings()
    setup_logging(settings, args.verbose)

    try:
        config = build_config(args)
        result = HANDLERS[config.command](config, settings)
    except ValidationError as e:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"entspec {args.command}: invalid flags: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidArgumentError as e:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"entspec {args.command}: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except (StateFormatError, OutputError) as e:
        print(f"entspec {args.command}: {e.message}", file=sys.stderr)
        return EXIT_IO
    except EntspecError as e:
        logger.error("[FAILED] %s", e.message)
        return EXIT_IO

    if result.message:
        print(result.message)
    if result.notice:
        print(result.notice, file=sys.stderr)
    logger.info("[DONE] %s outputs=%s summary=%s", config.command, result.outputs, result.summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
