# -*- coding: utf-8 -*-

"""Reading, overriding and freezing run configurations."""

import pathlib
from typing import Any, Dict, List, Optional, Union

import pydantic
import yaml

from implantlab.core import ConfigurationError, PathConstants
from implantlab.envs import env_defaults
from implantlab.harness.models import Algorithm
from implantlab.perturb import PerturbationKind

from .models import RunConfig


def _describe(error: pydantic.ValidationError) -> str:
    details = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        details.append(f"{location}: {item['msg']}")
    return "; ".join(details)


def parse_run_config(data: Any) -> RunConfig:
    """Validate a mapping as a run configuration.

    Raises:
        ConfigurationError: naming every offending key path.
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigurationError("a run configuration must be a mapping")
    try:
        return RunConfig.model_validate(data)
    except pydantic.ValidationError as e:
        raise ConfigurationError(f"invalid run configuration: {_describe(e)}", inner=e)


def load_run_config(path: Optional[Union[str, pathlib.Path]] = None) -> RunConfig:
    """Read a YAML run configuration; defaults only when ``path`` is None.

    Raises:
        ConfigurationError: if the file is absent, is not YAML or fails validation.
    """
    if path is None:
        return RunConfig()
    path = pathlib.Path(path)
    if not path.is_file():
        raise ConfigurationError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigurationError(f"{path} is not valid YAML", inner=e)
    return parse_run_config(data)


def dump_run_config(config: RunConfig) -> str:
    """Encode a configuration as YAML, keys in declaration order."""
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=False)


def freeze_run_config(config: RunConfig, directory: pathlib.Path) -> pathlib.Path:
    """Write the resolved configuration into a run directory."""
    path = directory / PathConstants.CONFIG_FILE_NAME
    path.write_text(dump_run_config(config), encoding="utf-8")
    return path


def apply_overrides(
    config: RunConfig,
    seed: Optional[int] = None,
    out: Optional[str] = None,
    sigma: Optional[float] = None,
    horizon: Optional[int] = None,
    budget: Optional[int] = None,
    algorithm: Optional[str] = None,
    sweep: Optional[str] = None,
    horizon_sweep: bool = False,
) -> RunConfig:
    """Return ``config`` with command-line overrides applied and re-validated.

    Planner overrides start from the environment's tuned defaults when the
    configuration leaves the planner unset. A sweep replaces the perturbation.

    Raises:
        ConfigurationError: if the result is invalid.
    """
    data: Dict[str, Any] = config.model_dump(mode="json")
    if seed is not None:
        data["seed"] = seed
    if out is not None:
        data["io"]["out"] = out
    if sigma is not None:
        data["perturbation"]["sigma"] = sigma
    if horizon is not None or budget is not None:
        planner = data["planner"]
        if planner is None:
            defaults = env_defaults(config.env.name)
            planner = {"budget": defaults.budget, "horizon": defaults.horizon}
        if horizon is not None:
            planner["horizon"] = horizon
        if budget is not None:
            planner["budget"] = budget
        data["planner"] = planner
    if algorithm is not None:
        data["algorithm"] = [algorithm]
    if sweep is not None:
        data["eval"]["sweep"] = sweep
        data["perturbation"] = {"kind": PerturbationKind.NONE.value}
    if horizon_sweep:
        data["eval"]["horizon_sweep"] = True
    return parse_run_config(data)


def algorithm_names() -> List[str]:
    """Accepted values of ``--algorithm``."""
    return [a.value for a in Algorithm]
