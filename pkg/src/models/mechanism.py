from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MechanismKind = Literal[
    "eip1559",
    "c_k1_pa",
    "p_k1_pa",
    "wpb",
    "posted_plain",
    "posted_crypto",
    "bomb",
    "sr2pa",
    "dra",
]
CryptoModel = Literal["plaintext", "gatekeeper", "deferred"]

DEFAULT_CRYPTO_MODEL: dict[str, CryptoModel] = {
    "eip1559": "plaintext",
    "c_k1_pa": "gatekeeper",
    "p_k1_pa": "plaintext",
    "wpb": "gatekeeper",
    "posted_plain": "plaintext",
    "posted_crypto": "gatekeeper",
    "bomb": "gatekeeper",
    "sr2pa": "plaintext",
    "dra": "deferred",
}
# kinds whose crypto model is part of their definition
FIXED_CRYPTO_MODEL = {
    "c_k1_pa": "gatekeeper",
    "p_k1_pa": "plaintext",
    "posted_plain": "plaintext",
    "posted_crypto": "gatekeeper",
    "dra": "deferred",
}
CAPACITY_KINDS = {"c_k1_pa", "p_k1_pa", "wpb"}


class MechanismConfig(BaseModel):
    kind: MechanismKind = Field(..., description="Block-building process")
    k: int | None = Field(
        1, description="Block capacity for (k+1)-price and pay-your-bid; null = inf"
    )
    price: float | None = Field(None, description="Exogenous EIP-1559 price p")
    reserve: float | Literal["monopoly"] | None = Field(
        None, description="Builder-known reserve r (bomb, dra)"
    )
    p_conceal: float = Field(0.0, description="DRA penalty for a concealed bid")
    burn: float = Field(
        0.0, description="Exogenous burn per inclusion for (k+1)-price auctions"
    )
    crypto_model: CryptoModel | None = Field(
        None, description="What the miner sees before acting"
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "examples": [
                {"kind": "c_k1_pa", "k": 1, "crypto_model": "gatekeeper"},
                {"kind": "eip1559", "price": 0.3},
                {"kind": "dra", "reserve": "monopoly", "p_conceal": 2.0},
            ]
        },
    )

    @field_validator("k", mode="before")
    @classmethod
    def parse_infinite_capacity(cls, value):
        if isinstance(value, str) and value.lower() in {"inf", "infinite", "none"}:
            return None
        return value

    @model_validator(mode="before")
    @classmethod
    def fill_crypto_model(cls, data):
        if isinstance(data, dict) and data.get("crypto_model") is None:
            kind = data.get("kind")
            if kind in DEFAULT_CRYPTO_MODEL:
                data = {**data, "crypto_model": DEFAULT_CRYPTO_MODEL[kind]}
        return data

    @model_validator(mode="after")
    def validate_kind_fields(self):
        if self.k is not None and self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.kind == "eip1559" and self.price is None:
            raise ValueError("eip1559 requires price")
        if self.kind in {"bomb", "dra"} and self.reserve is None:
            raise ValueError(f"{self.kind} requires reserve")
        for key in ("price", "p_conceal", "burn"):
            value = getattr(self, key)
            if value is not None and value < 0:
                raise ValueError(f"{key} must be >= 0, got {value}")
        if not isinstance(self.reserve, str | None) and self.reserve < 0:
            raise ValueError(f"reserve must be >= 0, got {self.reserve}")
        if self.burn > 0 and self.kind not in {"c_k1_pa", "p_k1_pa"}:
            raise ValueError("burn applies to c_k1_pa and p_k1_pa only")

        fixed = FIXED_CRYPTO_MODEL.get(self.kind)
        if fixed is not None and self.crypto_model != fixed:
            raise ValueError(
                f"{self.kind} is defined in the {fixed} model, "
                f"got crypto_model={self.crypto_model}"
            )
        return self

    @property
    def takes_advice(self) -> bool:
        return self.kind not in {"eip1559", "bomb", "dra"}

    @property
    def capacity(self) -> int | None:
        """Inclusions per block; None means unlimited."""
        if self.kind in CAPACITY_KINDS:
            return self.k
        if self.kind in {"sr2pa", "dra"}:
            return 1
        return None

    @property
    def burn_per_inclusion(self) -> float:
        if self.kind == "eip1559":
            return float(self.price)
        return self.burn
