from src.cli.cache import ResultCache
from src.cli.config_loader import (
    LoadedSuite,
    canonicalize,
    load_config,
    parse_scenario,
    scenario_hash,
)
from src.cli.library import list_library
from src.cli.reports import emit_reports
from src.cli.runner import ScenarioRunner, run_suite

__all__ = [
    "LoadedSuite",
    "ResultCache",
    "ScenarioRunner",
    "canonicalize",
    "emit_reports",
    "list_library",
    "load_config",
    "parse_scenario",
    "run_suite",
    "scenario_hash",
]
