from datetime import UTC, datetime

from src.cli.cache import ResultCache, logger
from src.cli.config_loader import LoadedSuite, scenario_hash
from src.core.engine import estimate
from src.core.interim import check_payment_identity, interim_rules
from src.evaluation.checkers import (
    CheckerFactory,
    ScenarioSetup,
    compare_on_chain_equilibria,
)
from src.evaluation.property_matrix import (
    assemble_matrix,
    compare_with_golden,
    load_golden,
)
from src.models.reports import PropertyMatrix, ResultRecord, RevenuePoint
from src.models.scenario import ScenarioConfig
from src.settings import cli_settings

DEFAULT_INTERIM_POINTS = 21


class ScenarioRunner:
    """Runs scenarios through the estimators and checkers, with caching."""

    def __init__(self, cache: ResultCache | None = None, jobs: int | None = None):
        self.cache = cache
        self.jobs = jobs

    def run(self, config: ScenarioConfig) -> ResultRecord:
        digest = scenario_hash(config)
        logger.info("Scenario start", scenario=config.name, scenario_hash=digest)
        if self.cache is not None:
            cached = self.cache.load(digest)
            if cached is not None:
                return cached

        setup = ScenarioSetup.from_config(config, jobs=self.jobs)
        verdicts = [
            CheckerFactory.create(name)(setup)
            for name in config.checkers
            if name != "equilibria"
        ]
        rankings = []
        if "equilibria" in config.checkers:
            rankings.append(
                compare_on_chain_equilibria(setup, config.equilibria or None)
            )
        record = ResultRecord(
            scenario_hash=digest,
            scenario_name=config.name,
            matrix_row=config.matrix_row,
            verdicts=verdicts,
            estimates=self._revenue_curve(setup),
            interim=self._interim(setup),
            rankings=rankings,
            golden_failures=self._expectation_failures(config, verdicts),
            tool_version=cli_settings.tool_version,
            timestamp=datetime.now(UTC).isoformat(),
        )
        if self.cache is not None:
            self.cache.store(record)
        logger.info(
            "Scenario end",
            scenario=config.name,
            scenario_hash=digest,
            failures=len(record.golden_failures),
        )
        return record

    def _revenue_curve(self, setup: ScenarioSetup) -> list[RevenuePoint]:
        config = setup.config
        points = []
        for n in config.n_list:
            result = estimate(
                setup.mechanism,
                setup.profile(n),
                setup.distribution,
                config.reps,
                config.seed,
                jobs=self.jobs,
            )
            points.append(
                RevenuePoint(
                    scenario=config.name,
                    n=n,
                    mean=result.mean,
                    stderr=result.std_err,
                    reps=config.reps,
                    seed=config.seed,
                )
            )
        return points

    def _interim(self, setup: ScenarioSetup) -> dict:
        config = setup.config
        points = config.grids.value_points or DEFAULT_INTERIM_POINTS
        rules = {}
        for user in config.interim_users:
            rules[user] = interim_rules(
                setup.mechanism,
                setup.profile(),
                setup.distribution,
                user,
                setup.support_grid(points),
                config.reps,
                config.seed,
                jobs=self.jobs,
            )
            identity = check_payment_identity(rules[user])
            if not identity.passed:
                logger.warning(
                    "Payment identity fails",
                    scenario=config.name,
                    user=user,
                    max_excess=identity.max_excess,
                    worst_value=identity.worst_value,
                )
        return rules

    @staticmethod
    def _expectation_failures(config: ScenarioConfig, verdicts) -> list[str]:
        by_name = {verdict.property_name: verdict for verdict in verdicts}
        failures = []
        for name, expected in config.expect.items():
            if name not in by_name:
                failures.append(f"{config.name} / {name}: no verdict to compare")
            elif by_name[name].passed != expected:
                failures.append(
                    f"{config.name} / {name}: expected "
                    f"{'NO_VIOLATION_FOUND' if expected else 'VIOLATION'}, "
                    f"got {by_name[name].verdict}"
                )
        return failures


def run_suite(
    suite: LoadedSuite, runner: ScenarioRunner
) -> tuple[list[ResultRecord], PropertyMatrix | None]:
    """Run every scenario; rows with a ``matrix_row`` form the property matrix."""
    records = [runner.run(config) for config in suite.scenarios]
    rows = {
        record.matrix_row: (record.scenario_name, record.verdicts)
        for record in records
        if record.matrix_row is not None
    }
    if not rows:
        return records, None
    matrix = assemble_matrix(rows)
    if suite.golden is not None:
        matrix.golden_failures = compare_with_golden(matrix, load_golden(suite.golden))
    return records, matrix
