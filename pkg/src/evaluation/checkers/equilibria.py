from src.core.agents import equilibrium_profiles
from src.core.engine import estimate
from src.evaluation.checkers.scenario_setup import ScenarioSetup
from src.models.reports import EquilibriumRanking, RankedEquilibrium

LABEL = "equilibria"


def compare_on_chain_equilibria(
    setup: ScenarioSetup, labels: list[str] | None = None, reps: int | None = None
) -> EquilibriumRanking:
    """Rank named equilibria of the scenario's mechanism by expected revenue.

    Every equilibrium is played on the same value draws. Ties keep catalogue
    order.

    Raises:
        ValueError: a label is not in the mechanism's catalogue.
    """
    catalogue = equilibrium_profiles(setup.mechanism.config)
    labels = labels or list(catalogue)
    unknown = [label for label in labels if label not in catalogue]
    if unknown:
        raise ValueError(
            f"Unknown equilibria {unknown} for {setup.mechanism.kind}; "
            f"known: {list(catalogue)}"
        )
    entries = [
        (
            label,
            estimate(
                setup.mechanism,
                setup.profile(strategies=catalogue[label]),
                setup.distribution,
                reps or setup.config.reps,
                setup.seed,
                label=LABEL,
                jobs=setup.jobs,
            ),
        )
        for label in labels
    ]
    entries.sort(key=lambda entry: -entry[1].mean)
    return EquilibriumRanking(
        ranking=[
            RankedEquilibrium(label=label, mean=result.mean, std_err=result.std_err)
            for label, result in entries
        ]
    )
