# -*- coding: utf-8 -*-

"""The ``implant`` command line."""

import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from implantlab.core import (
    EmptyResultsError,
    ImplantException,
    MissingArtifactError,
    TrainingDivergedError,
)
from implantlab.perturb import PerturbationKind

from ._commands import cmd_all, cmd_demos, cmd_eval, cmd_plot, cmd_train
from ._config_loader import algorithm_names, apply_overrides, load_run_config
from .models import RunConfig

_logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DIVERGED = 2
EXIT_MISSING_ARTIFACT = 3
EXIT_EMPTY_RESULTS = 4

Command = Callable[[RunConfig, int], object]

COMMANDS: Dict[str, Command] = {
    "demos": cmd_demos,
    "train": cmd_train,
    "eval": cmd_eval,
    "plot": cmd_plot,
    "all": cmd_all,
}


def _common_arguments() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", help="YAML run configuration; defaults if omitted")
    parser.add_argument("--seed", type=int, help="root seed of every random stream")
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker threads for cells and planner rollouts",
    )
    parser.add_argument("--out", help="output root (default: $IMPLANT_OUT)")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    return parser


def _algorithm_argument() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--algorithm", choices=algorithm_names(), help="run a single algorithm"
    )
    return parser


def _eval_arguments() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--sigma", type=float, help="noise level of the perturbation")
    parser.add_argument("--horizon", type=int, help="planning horizon H")
    parser.add_argument("--budget", type=int, help="planner rollout budget B")
    parser.add_argument(
        "--sweep",
        choices=[
            PerturbationKind.MOTOR_NOISE.value,
            PerturbationKind.TRANSITION_NOISE.value,
        ],
        help="evaluate the full sigma grid of a noise kind",
    )
    parser.add_argument(
        "--horizon-sweep",
        action="store_true",
        help="also write the normalized-return-vs-horizon curve",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per pipeline stage."""
    parser = argparse.ArgumentParser(
        prog="implant",
        description="Imitation learning with decision-time planning.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_arguments()
    algorithm = _algorithm_argument()
    evaluation = _eval_arguments()
    subparsers.add_parser(
        "demos", parents=[common], help="record expert demonstrations"
    )
    subparsers.add_parser(
        "train", parents=[common, algorithm], help="train from the latest demos"
    )
    subparsers.add_parser(
        "eval",
        parents=[common, algorithm, evaluation],
        help="evaluate the latest checkpoints",
    )
    subparsers.add_parser("plot", parents=[common], help="render the latest results")
    subparsers.add_parser(
        "all", parents=[common, algorithm, evaluation], help="run every stage"
    )
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    return apply_overrides(
        load_run_config(args.config),
        seed=args.seed,
        out=args.out,
        sigma=getattr(args, "sigma", None),
        horizon=getattr(args, "horizon", None),
        budget=getattr(args, "budget", None),
        algorithm=getattr(args, "algorithm", None),
        sweep=getattr(args, "sweep", None),
        horizon_sweep=getattr(args, "horizon_sweep", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run a subcommand and return its exit code.

    Exit codes: 0 on success, 2 when training diverged, 3 when a checkpoint or demo
    file is missing, 4 when ``plot`` finds no results, 1 for any other failure.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT
    )
    try:
        config = _resolve_config(args)
        COMMANDS[args.command](config, args.jobs)
    except TrainingDivergedError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.iteration is not None:
            print(f"training diverged at iteration {e.iteration}", file=sys.stderr)
        return EXIT_DIVERGED
    except MissingArtifactError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISSING_ARTIFACT
    except EmptyResultsError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EMPTY_RESULTS
    except ImplantException as e:
        _logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK
