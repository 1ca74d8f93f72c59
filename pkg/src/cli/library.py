from src.core.agents import StrategyFactory
from src.core.engine import (
    OffChainEntryFee,
    OffChainPostedPrice,
    OffChainSecondPrice,
    ShillRebate,
    SteerToThreshold,
    TabulatedShill,
)
from src.core.mechanisms import MechanismFactory
from src.evaluation.checkers import CheckerFactory

ATTACKS = {
    OffChainPostedPrice.name: ("price", "on_chain_bid"),
    OffChainEntryFee.name: ("fee", "surplus_price"),
    OffChainSecondPrice.name: ("reserve",),
    SteerToThreshold.name: ("reserve",),
    ShillRebate.name: ("bid", "rebate_base"),
    TabulatedShill.name: ("reports", "shill_bids", "rebates"),
}


def _section(title: str, entries: dict[str, tuple[str, ...]]) -> list[str]:
    lines = [f"{title}:"]
    for name, params in entries.items():
        lines.append(f"  {name}" + (f"  ({', '.join(params)})" if params else ""))
    return lines


def list_library() -> str:
    """Inventory of every configurable name, with its parameters."""
    strategies = StrategyFactory.vocabulary()
    checkers = {name: () for name in (*CheckerFactory.vocabulary(), "equilibria")}
    lines = [
        *_section("mechanisms", MechanismFactory.vocabulary()),
        *_section("user strategies", strategies["user"]),
        *_section("miner strategies", strategies["miner"]),
        *_section("off-chain mechanisms", ATTACKS),
        *_section("checkers", checkers),
    ]
    return "\n".join(lines) + "\n"
