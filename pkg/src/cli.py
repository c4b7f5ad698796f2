"""
Command-line interface for the mill analyses.

Subcommands:
    - steady: closed-form steady state and identity checks
    - evolve: nonlinear evolution of a perturbed steady state
    - stability: (b, n) spectrum sweep, amplification report, linearization check
    - fredholm: angular kernel normalization and nullspace scan
    - all: every analysis in order

Exit codes:
    0 success, 2 configuration error, 3 constraint violation,
    4 numerical failure or unwritable output.

Example:
    mill stability --config experiments/canonical.json --out out --jobs 4
    python -m src.cli all --config experiments/canonical.json --seed 7
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from src.exceptions.mill_exceptions import MillError
from src.services.mill_service import MillService

logger = logging.getLogger("src.cli")

SUBCOMMANDS = ("steady", "evolve", "stability", "fredholm", "all")


def non_negative_int(text: str) -> int:
    """argparse type for seeds: numpy generators reject negative seeds."""
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per analysis, sharing the run options."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON run configuration")
    common.add_argument("--out", default=None, help="output directory (overrides output_dir)")
    common.add_argument(
        "--seed", type=non_negative_int, default=0, help="seed of random directions"
    )
    common.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="stderr log level",
    )

    parser = argparse.ArgumentParser(
        prog="mill",
        description="Stability analysis of a chemotactic rotating-mill model",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        subparsers.add_parser(name, parents=[common], help=f"run the {name} analysis")
    return parser


def configure_logging(level: str) -> None:
    """Send library logs and numpy/python warnings to stderr."""
    logging.basicConfig(
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger().setLevel(level)
    logging.captureWarnings(True)


def run(argv: Sequence[str] | None = None, service: MillService | None = None) -> int:
    """
    Parse arguments, run one subcommand and return its exit code.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:].
        service: Orchestrator to use; a default one is built when omitted.

    Returns:
        Process exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2

    configure_logging(args.log_level)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2

    service = service or MillService()
    try:
        config = service.load_config(args.config)
        out_dir = args.out or config.output_dir
        if args.command == "steady":
            service.run_steady(config, out_dir)
        elif args.command == "evolve":
            service.run_evolve(config, out_dir)
        elif args.command == "stability":
            service.run_stability(config, out_dir, seed=args.seed, jobs=args.jobs)
        elif args.command == "fredholm":
            service.run_fredholm(config, out_dir, jobs=args.jobs)
        else:
            service.run_all(config, out_dir, seed=args.seed, jobs=args.jobs)
    except MillError as e:
        logger.debug("%s failed: %s", args.command, e.to_dict())
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    logger.info("%s finished, artifacts in %s", args.command, out_dir)
    return 0


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
