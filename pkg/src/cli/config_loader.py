"""Scenario and suite files.

A file is TOML (one scenario, or a ``[suite]`` table listing scenario files)
or canonical JSON. Scenarios are identified by the sha256 of their canonical
JSON form.
"""

import hashlib
import json
import tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.core.exceptions import ConfigError
from src.models.scenario import ScenarioConfig, SuiteConfig


@dataclass(frozen=True)
class LoadedSuite:
    config: SuiteConfig
    scenarios: list[ScenarioConfig]
    golden: Path | None


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def canonicalize(config: ScenarioConfig) -> str:
    return canonical_json(config.model_dump(mode="json"))


def scenario_hash(config: ScenarioConfig) -> str:
    return hashlib.sha256(canonicalize(config).encode("utf-8")).hexdigest()


def read_config_data(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigError(str(path), f"cannot read config: {error}") from error
    try:
        if path.suffix == ".json":
            return json.loads(text)
        return tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as error:
        raise ConfigError(str(path), f"cannot parse config: {error}") from error


def _validated(model, data: dict[str, Any]):
    try:
        return model.model_validate(data)
    except ValidationError as error:
        first = error.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or model.__name__
        raise ConfigError(key, first["msg"]) from error


def parse_scenario(data: dict[str, Any], **overrides) -> ScenarioConfig:
    """Validate scenario data; non-None ``overrides`` replace top-level keys."""
    updates = {key: value for key, value in overrides.items() if value is not None}
    return _validated(ScenarioConfig, {**data, **updates})


def load_config(
    path: str | Path, reps: int | None = None, seed: int | None = None
) -> ScenarioConfig | LoadedSuite:
    """Load a scenario or a suite; ``reps``/``seed`` override every scenario.

    Raises:
        ConfigError: unreadable file or data that fails validation; the error
            names the offending key.
    """
    path = Path(path)
    data = read_config_data(path)
    if "suite" not in data:
        return parse_scenario(data, reps=reps, seed=seed)

    suite = _validated(SuiteConfig, data["suite"])
    scenarios = [
        parse_scenario(
            read_config_data(path.parent / scenario),
            reps=reps or suite.reps,
            seed=seed if seed is not None else suite.seed,
        )
        for scenario in suite.scenarios
    ]
    golden = path.parent / suite.golden if suite.golden else None
    return LoadedSuite(config=suite, scenarios=scenarios, golden=golden)
