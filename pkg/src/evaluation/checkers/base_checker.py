from abc import ABC, abstractmethod
from typing import Any, ClassVar

from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import PropertyVerdict, Witness
from src.settings import CheckerSettings, simulation_settings
from src.utils.logger import create_logger

logger = create_logger(
    "checkers",
    console_level=simulation_settings.console_log_level,
    file_level=simulation_settings.file_log_level,
)


class PropertyChecker(ABC):
    """Falsifier for one property over a declared search budget.

    A VIOLATION needs a gain above both ``z_threshold`` standard errors and
    ``abs_eps``; anything else is reported as NO_VIOLATION_FOUND.
    """

    checker_name: ClassVar[str]
    defaults: ClassVar[dict[str, Any]] = {}

    def __init__(self, settings: CheckerSettings | None = None):
        self._settings = settings

    def settings_for(self, setup: ScenarioSetup) -> CheckerSettings:
        if self._settings is not None:
            return self._settings
        return setup.checker_settings(self.checker_name, self.defaults)

    def __call__(self, setup: ScenarioSetup) -> PropertyVerdict:
        settings = self.settings_for(setup)
        logger.info(
            "Running checker",
            checker=self.checker_name,
            scenario=setup.config.name,
            n=setup.n,
        )
        verdict = self.check(setup, settings)
        logger.info(
            "Verdict",
            checker=self.checker_name,
            scenario=setup.config.name,
            verdict=verdict.verdict,
            gain=verdict.witness.gain if verdict.witness else None,
            std_err=verdict.witness.std_err if verdict.witness else None,
        )
        return verdict

    @abstractmethod
    def check(
        self, setup: ScenarioSetup, settings: CheckerSettings
    ) -> PropertyVerdict: ...

    @staticmethod
    def threshold(settings: CheckerSettings, std_err: float) -> float:
        return max(settings.z_threshold * std_err, settings.abs_eps)

    def significant(
        self, settings: CheckerSettings, gain: float, std_err: float
    ) -> bool:
        return gain > self.threshold(settings, std_err)

    def verdict(
        self,
        setup: ScenarioSetup,
        settings: CheckerSettings,
        witness: Witness | None,
        search_budget: dict[str, Any],
        notes: list[str] | None = None,
    ) -> PropertyVerdict:
        """VIOLATION exactly when the witness clears the significance threshold."""
        violated = witness is not None and self.significant(
            settings, witness.gain, witness.std_err
        )
        return PropertyVerdict(
            property_name=self.checker_name,
            verdict="VIOLATION" if violated else "NO_VIOLATION_FOUND",
            witness=witness,
            search_budget={
                "z_threshold": settings.z_threshold,
                "abs_eps": settings.abs_eps,
                **search_budget,
            },
            seed=setup.seed,
            notes=notes or [],
        )

    def trivial_violation(
        self, setup: ScenarioSetup, settings: CheckerSettings, description: str
    ) -> PropertyVerdict:
        """Violation that needs no search, e.g. a profile outside the premise."""
        return PropertyVerdict(
            property_name=self.checker_name,
            verdict="VIOLATION",
            witness=Witness(
                description=description, gain=float("inf"), family="premise"
            ),
            search_budget={},
            seed=setup.seed,
        )

    def stronger(
        self,
        settings: CheckerSettings,
        gain: float,
        std_err: float,
        current: Witness | None,
    ) -> bool:
        """Significant gains beat insignificant ones, then larger gains win."""
        if current is None:
            return True
        significant = self.significant(settings, gain, std_err)
        incumbent = self.significant(settings, current.gain, current.std_err)
        if significant != incumbent:
            return significant
        return gain > current.gain
