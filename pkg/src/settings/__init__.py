from src.settings.base_named_settings import BaseNamedSettings, settings_logger
from src.settings.checkers import CheckerSettings, checker_settings
from src.settings.services import (
    CliSettings,
    SimulationSettings,
    cli_settings,
    simulation_settings,
)

__all__ = [
    "BaseNamedSettings",
    "CheckerSettings",
    "CliSettings",
    "SimulationSettings",
    "checker_settings",
    "cli_settings",
    "settings_logger",
    "simulation_settings",
]
