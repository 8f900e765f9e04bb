#!/usr/bin/env python3
"""
Command Line Interface for the polya-cure package.

This module runs curing-strategy experiments from a configuration file,
generates graphs for reuse across suites and runs the property checks.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Tuple

from . import __version__
from .exceptions import OutputError, PolyaCureError
from .graph.generator import GeneratorSpec
from .graph.parser import write_edge_list
from .harness.config import load_config
from .harness.output import summary_frame, write_artifacts
from .harness.suite import ExperimentSuite
from .strategy.strategies import DEFAULT_EPSILON
from .verify import FAIL, run_property_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return number


def _epsilon(value: str) -> float:
    epsilon = float(value)
    if not 0 <= epsilon < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in [0, 1)")
    return epsilon


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        prog="polya-cure",
        description="Network Polya contagion curing experiments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Run every case of an experiment file
  polya-cure run --config experiments/ba100.toml --out results/

  # Write a 100-node preferential-attachment tree
  polya-cure gen-graph ba:100:1:seed=7 --out ba100.edges

  # Check the drift, gradient and estimator properties
  polya-cure verify
        """,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress (-v) or per-step detail (-vv) to stderr",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Run command
    run_parser = subparsers.add_parser("run", help="Run an experiment suite")
    run_parser.add_argument("--config", required=True, help="TOML experiment file")
    run_parser.add_argument("--out", help="Output directory (overrides the config)")
    run_parser.add_argument(
        "--workers", type=_positive, help="Worker processes (default: all cores)"
    )
    run_parser.add_argument("--seed", type=_seed, help="Master seed override")
    run_parser.add_argument(
        "--json", action="store_true", help="Print the summary as JSON"
    )

    # Graph generation command
    gen_parser = subparsers.add_parser("gen-graph", help="Generate an edge list")
    gen_parser.add_argument("spec", help="Generator spec, ba:<n>:<m>[:seed=<s>]")
    gen_parser.add_argument("--out", help="Edge-list file (default: stdout)")

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Run the property checks")
    verify_parser.add_argument(
        "--config", help="Experiment file supplying the seed and epsilon"
    )
    verify_parser.add_argument(
        "--epsilon",
        type=_epsilon,
        help=f"Strictness margin of the drift bounds (default {DEFAULT_EPSILON:g})",
    )
    verify_parser.add_argument("--seed", type=_seed, help="Fixture seed")
    verify_parser.add_argument(
        "--samples", type=_positive, default=50, help="Random fixtures per check"
    )
    verify_parser.add_argument(
        "--trials",
        type=_positive,
        default=20000,
        help="Monte-Carlo trials for the estimator check",
    )
    verify_parser.add_argument(
        "--fail-fast",
        action="store_true",
        help="Stop at the first failed property",
    )
    verify_parser.add_argument(
        "--json", action="store_true", help="Output in JSON format"
    )

    # Version command
    subparsers.add_parser("version", help="Show version information")

    return parser.parse_args(argv)


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def format_output(data: Any, json_format: bool = False) -> str:
    """Format output for display."""
    if json_format:
        return json.dumps(data, indent=2, default=str)
    if isinstance(data, list):
        return "\n".join(format_output(item) for item in data)
    if isinstance(data, dict):
        return "  ".join(f"{key}: {value}" for key, value in data.items())
    return str(data)


def _exit_code(error: PolyaCureError) -> int:
    """Bad input and unwritable output map to 2, failures while running to 1."""
    if isinstance(error, OutputError) or error.error_code.value.startswith("4"):
        return EXIT_USAGE
    return EXIT_FAILURE


def cmd_run(args: argparse.Namespace) -> int:
    """Handle the run command."""
    try:
        config_path = Path(args.config)
        config = load_config(config_path).with_overrides(
            seed=args.seed,
            workers=args.workers,
            directory=Path(args.out) if args.out else None,
        )
        suite = ExperimentSuite.from_config(config, base_dir=config_path.parent)
        results = suite.run()
        write_artifacts(suite, results, config.output.directory)
    except PolyaCureError as e:
        print(f"Error: {e}", file=sys.stderr)
        for message in e.details.get("validation_errors", []):
            print(f"  {message}", file=sys.stderr)
        return _exit_code(e)
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    summary = summary_frame(results)
    if args.json:
        print(format_output(summary.to_dict(orient="records"), True))
    else:
        print(summary.to_string(index=False))
    return EXIT_OK


def cmd_gen_graph(args: argparse.Namespace) -> int:
    """Handle the gen-graph command."""
    try:
        spec = GeneratorSpec.parse(args.spec)
        graph = spec.build()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as f:
                write_edge_list(graph, f, comment=str(spec))
        else:
            write_edge_list(graph, sys.stdout, comment=str(spec))
    except PolyaCureError as e:
        print(f"Error generating graph: {e}", file=sys.stderr)
        return _exit_code(e)
    except OSError as e:
        print(f"Error writing graph: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger.info(f"Generated {graph!r} from {spec}")
    return EXIT_OK


def _verify_settings(args: argparse.Namespace) -> Tuple[int, float]:
    seed, epsilon = 0, DEFAULT_EPSILON
    if args.config:
        config = load_config(args.config)
        seed = config.seed
        strict = [c for c in config.cases if c.strategy == "ii" and c.strict]
        if strict:
            epsilon = strict[0].epsilon
    if args.seed is not None:
        seed = args.seed
    if args.epsilon is not None:
        epsilon = args.epsilon
    return seed, epsilon


def cmd_verify(args: argparse.Namespace) -> int:
    """Handle the verify command."""
    try:
        seed, epsilon = _verify_settings(args)
        results = run_property_checks(
            epsilon=epsilon,
            seed=seed,
            samples=args.samples,
            mc_trials=args.trials,
            fail_fast=args.fail_fast,
        )
    except PolyaCureError as e:
        print(f"Error: {e}", file=sys.stderr)
        return _exit_code(e)

    if args.json:
        print(format_output([r.to_dict() for r in results], True))
    else:
        for r in results:
            print(f"{r.status.upper():9} {r.name:28} {r.detail}")
    return EXIT_FAILURE if any(r.status == FAIL for r in results) else EXIT_OK


def cmd_version(args: argparse.Namespace) -> int:
    """Handle the version command."""
    try:
        from importlib.metadata import version

        pkg_version = version("polya-cure")
        print(f"polya-cure {pkg_version}")
    except Exception:
        print(f"polya-cure {__version__}")
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "gen-graph": cmd_gen_graph,
    "verify": cmd_verify,
    "version": cmd_version,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI."""
    try:
        args = parse_arguments(argv)
        configure_logging(args.verbose)
        if not args.command:
            print(
                "Error: No command specified. Use --help for usage information.",
                file=sys.stderr,
            )
            return EXIT_USAGE
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return EXIT_INTERRUPTED
    except PolyaCureError as e:
        print(f"Error: {e}", file=sys.stderr)
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
