from dataclasses import dataclass, replace

from src.core.agents.miner_strategies import MinerStrategy
from src.core.agents.user_strategies import UserStrategy
from src.core.exceptions import InfoViolationError


@dataclass(frozen=True)
class OnChainProfile:
    miner: MinerStrategy
    users: tuple[UserStrategy, ...]
    allow_multi_bid: bool = False

    @property
    def n(self) -> int:
        return len(self.users)

    @property
    def all_truthful(self) -> bool:
        return all(user.is_truthful for user in self.users)

    def with_user(self, index: int, strategy: UserStrategy) -> "OnChainProfile":
        users = list(self.users)
        users[index] = strategy
        return replace(self, users=tuple(users))

    def with_miner(self, strategy: MinerStrategy) -> "OnChainProfile":
        return replace(self, miner=strategy)

    def validate_for(self, crypto_model: str) -> None:
        if not self.miner.legal_under(crypto_model):
            raise InfoViolationError(
                f"Miner strategy {self.miner.name} is not legal in the "
                f"{crypto_model} model"
            )
