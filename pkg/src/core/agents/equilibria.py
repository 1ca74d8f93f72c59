"""Named on-chain equilibria per mechanism kind.

Entries are strategy configurations rather than built profiles so a caller can
instantiate them for any number of users (shading tables depend on n).
"""

from src.models.mechanism import MechanismConfig
from src.models.scenario import StrategiesConfig, StrategySpec


def _profile(miner: StrategySpec, users: StrategySpec) -> StrategiesConfig:
    return StrategiesConfig(miner=miner, users=users)


def _compliant(advice=None) -> StrategySpec:
    params = {} if advice is None else {"advice": advice}
    return StrategySpec(name="compliant", params=params)


TRUTHFUL = StrategySpec(name="truthful")


def equilibrium_profiles(mechanism: MechanismConfig) -> dict[str, StrategiesConfig]:
    """Catalogue of known equilibria, keyed by label, in a stable order."""
    match mechanism.kind:
        case "eip1559":
            return {"truthful": _profile(_compliant(), TRUTHFUL)}
        case "c_k1_pa":
            return {
                "truthful_optimal_reserve": _profile(_compliant("optimal"), TRUTHFUL),
                "truthful_zero_reserve": _profile(_compliant(0.0), TRUTHFUL),
            }
        case "p_k1_pa":
            profiles = {
                "truthful_optimal_reserve": _profile(_compliant("optimal"), TRUTHFUL),
            }
            if mechanism.k == 1:
                profiles["first_price"] = _profile(
                    StrategySpec(name="reserve_at_max_bid"),
                    StrategySpec(name="shade_wpb", params={"reserve": 0.0, "k": 1}),
                )
            return profiles
        case "wpb":
            return {
                label: _profile(
                    _compliant("monopoly"),
                    StrategySpec(
                        name="shade_wpb",
                        params={"reserve": "monopoly", "below_reserve": below},
                    ),
                )
                for label, below in (
                    ("sigma_val", "bid_value"),
                    ("sigma_0", "bid_zero"),
                )
            }
        case "posted_plain" | "posted_crypto":
            return {"truthful": _profile(_compliant("monopoly"), TRUTHFUL)}
        case "bomb":
            return {
                "posted_price": _profile(
                    _compliant(),
                    StrategySpec(
                        name="threshold", params={"reserve": mechanism.reserve}
                    ),
                ),
                "winner_pays_bid": _profile(
                    _compliant(),
                    StrategySpec(
                        name="shade_wpb",
                        params={
                            "reserve": mechanism.reserve,
                            "below_reserve": "bid_zero",
                            "k": 1,
                        },
                    ),
                ),
            }
        case "sr2pa":
            return {
                "second_price": _profile(_compliant("monopoly"), TRUTHFUL),
                "first_price": _profile(
                    StrategySpec(name="reserve_at_max_bid"),
                    StrategySpec(name="shade_wpb", params={"reserve": 0.0, "k": 1}),
                ),
            }
        case "dra":
            return {
                "truthful_reveal": _profile(
                    _compliant(), StrategySpec(name="dra_truthful_reveal")
                )
            }
    raise ValueError(f"No equilibrium catalogue for mechanism kind {mechanism.kind}")
