"""
Command-Line Interface

Entry point of the `fracident` tool:

    fracident [--config run.yaml] [--out DIR] [--seed N] [--verbose] COMMAND

Commands:
    simulate   generate input/output CSVs and a manifest
    identify   estimate parameters from CSVs, write result.csv
    lower      print the normalized identification equation
    benchmark  run the acceptance cases and print a pass/fail table

Exit codes: 0 success, 1 usage/configuration/I/O error, 2 singular
regressor, coherence failure or failed benchmark case.

Author: Jane Smith
Date: October 2026
Version: 0.1.0
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .. import __version__
from ..config import RunConfig, load_run_config
from ..env import ensure_dir, output_dir
from ..errors import (
    CoherenceError,
    ConfigError,
    GridMismatchError,
    ModelError,
    SingularRegressorError,
)
from .benchmark import cmd_benchmark
from .commands import cmd_identify, cmd_lower, cmd_simulate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

COMMANDS = ("simulate", "identify", "lower", "benchmark")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracident",
        description="Identify fractional-order models from sampled input/output signals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, help="YAML run configuration")
    parser.add_argument("--out", type=Path, help="output directory (default: $FRACIDENT_OUT)")
    parser.add_argument("--seed", type=int, help="noise seed (overrides the configuration)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("simulate", help="generate input/output CSVs and a manifest")
    sub.add_parser("identify", help="estimate parameters from CSVs")
    sub.add_parser("lower", help="print the normalized identification equation")
    sub.add_parser("benchmark", help="run the acceptance cases")
    return parser


def _run(command: str, config: RunConfig, out_dir: Path) -> int:
    if command == "simulate":
        cmd_simulate(config, ensure_dir(out_dir))
    elif command == "identify":
        cmd_identify(config, out_dir)
    elif command == "lower":
        cmd_lower(config)
    else:
        results = cmd_benchmark(config)
        if not all(r.passed for r in results):
            return EXIT_FAILURE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command-line tool.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config = load_run_config(args.config, {"seed": args.seed})
        out_dir = Path(args.out) if args.out else Path(output_dir())
        return _run(args.command, config, out_dir)
    except (SingularRegressorError, CoherenceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ModelError, GridMismatchError, FileNotFoundError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["main", "build_parser", "COMMANDS", "EXIT_OK", "EXIT_USAGE", "EXIT_FAILURE"]
