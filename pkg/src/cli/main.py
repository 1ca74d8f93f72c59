import argparse
import json
import sys
from collections.abc import Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from src.cli.cache import ResultCache, logger
from src.cli.config_loader import LoadedSuite, load_config
from src.cli.library import list_library
from src.cli.reports import emit_reports
from src.cli.runner import ScenarioRunner, run_suite
from src.core.exceptions import ConfigError
from src.evaluation.checkers import CheckerFactory, ScenarioSetup

EXIT_OK = 0
EXIT_GOLDEN_MISMATCH = 1
EXIT_CONFIG_ERROR = 2


def run(args: argparse.Namespace) -> int:
    loaded = load_config(args.config, reps=args.reps, seed=args.seed)
    runner = ScenarioRunner(
        cache=None if args.no_cache else ResultCache(), jobs=args.jobs
    )
    if isinstance(loaded, LoadedSuite):
        records, matrix = run_suite(loaded, runner)
    else:
        records, matrix = [runner.run(loaded)], None

    emit_reports(records, args.out, matrix)
    failures = [failure for record in records for failure in record.golden_failures]
    if matrix is not None:
        failures += matrix.golden_failures
        if not matrix.impossibility_holds:
            logger.warning("A matrix row satisfies every property")
    for failure in failures:
        logger.error("Golden mismatch", failure=failure)
    return EXIT_GOLDEN_MISMATCH if failures else EXIT_OK


def verify(args: argparse.Namespace) -> int:
    config = load_config(args.config, reps=args.reps, seed=args.seed)
    if isinstance(config, LoadedSuite):
        raise ConfigError(args.config, "verify takes a single scenario, not a suite")
    verdict = CheckerFactory.create(args.checker)(
        ScenarioSetup.from_config(config, jobs=args.jobs)
    )
    print(json.dumps(verdict.model_dump(mode="json"), indent=2, ensure_ascii=False))
    expected = config.expect.get(args.checker)
    if expected is not None and expected != verdict.passed:
        return EXIT_GOLDEN_MISMATCH
    return EXIT_OK


def list_command(args: argparse.Namespace) -> int:
    print(list_library(), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tfmlab",
        description="Transaction fee mechanism simulator and property checkers.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_budget_arguments(command: argparse.ArgumentParser) -> None:
        command.add_argument("config", type=str, help="Scenario or suite file")
        command.add_argument("--reps", type=int, default=None)
        command.add_argument("--seed", type=int, default=None)
        command.add_argument("--jobs", type=int, default=None)

    run_parser = commands.add_parser("run", help="Run a scenario or suite")
    add_budget_arguments(run_parser)
    run_parser.add_argument("--out", type=str, default="out")
    run_parser.add_argument("--no-cache", action="store_true")
    run_parser.set_defaults(handler=run)

    verify_parser = commands.add_parser("verify", help="Run a single checker")
    add_budget_arguments(verify_parser)
    verify_parser.add_argument(
        "--checker", type=str, required=True, choices=CheckerFactory.vocabulary()
    )
    verify_parser.set_defaults(handler=verify)

    list_parser = commands.add_parser("list", help="List the configurable library")
    list_parser.set_defaults(handler=list_command)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, ValidationError) as error:
        logger.error(f"Invalid config: {error}", error_type=type(error).__name__)
        print(f"config error: {error}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except Exception as error:
        logger.error(
            f"Run failed: {error}", error_type=type(error).__name__, exc_info=True
        )
        raise


if __name__ == "__main__":
    sys.exit(main())
