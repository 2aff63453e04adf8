from typing import Any, List, Optional

from pydantic import Field, field_validator, model_validator

from implantlab.core import ConfigModel
from implantlab.envs import ENV_NAMES, env_defaults
from implantlab.imitation import BcConfig, IrlConfig
from implantlab.perturb import PerturbationSpec
from implantlab.planner import CandidateSource, PlannerConfig, RolloutPolicy

from ._algorithm import Algorithm


class DemoProtocol(ConfigModel):
    """How expert demonstrations are recorded."""

    n_traj: int = Field(default=4, ge=1)
    """Expert episodes."""

    subsample: int = Field(default=20, ge=1)
    """Keep every n-th pair."""

    episode_length: Optional[int] = Field(default=1000, ge=1)
    """Steps per expert episode; the environment time limit when unset."""


class ExperimentSpec(ConfigModel):
    """One row of the evaluation matrix, run for every seed."""

    env: str
    """Registry name of the environment."""

    algorithm: Algorithm

    perturbation: PerturbationSpec = PerturbationSpec()

    planner: Optional[PlannerConfig] = None
    """Planner settings; filled with environment defaults for planner algorithms."""

    seeds: List[int] = [0, 1, 2, 3, 4]

    episodes: int = Field(default=20, ge=1)
    """Evaluation episodes per seed."""

    demos: DemoProtocol = DemoProtocol()

    bc: BcConfig = BcConfig()

    irl: IrlConfig = IrlConfig()

    expert_noise_sigma: float = Field(default=0.1, gt=0.0)
    """Expert-batch noise of GAIL-Expert-Noise."""

    @field_validator("env")
    @classmethod
    def _known_env(cls, value: str) -> str:
        if value not in ENV_NAMES:
            raise ValueError(f"unknown environment '{value}'")
        return value

    @field_validator("seeds")
    @classmethod
    def _seeds(cls, value: List[int]) -> List[int]:
        if not value or any(s < 0 for s in value):
            raise ValueError("seeds must be a non-empty list of non-negative integers")
        return value

    @model_validator(mode="before")
    @classmethod
    def _resolve_planner(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        try:
            algorithm = Algorithm(data.get("algorithm"))
        except ValueError:
            return data
        if not algorithm.uses_planner:
            return data
        planner = data.get("planner")
        if planner is None:
            defaults = (
                env_defaults(data["env"]) if data.get("env") in ENV_NAMES else None
            )
            planner = (
                PlannerConfig(budget=defaults.budget, horizon=defaults.horizon)
                if defaults is not None
                else PlannerConfig()
            )
        elif isinstance(planner, dict):
            planner = PlannerConfig(**planner)
        if algorithm is Algorithm.GAIL_REWARD_ONLY:
            planner = planner.model_copy(
                update={
                    "candidate_source": CandidateSource.UNIFORM_RANDOM,
                    "rollout_policy": RolloutPolicy.UNIFORM_RANDOM,
                }
            )
        return {**data, "planner": planner}

    @property
    def irl_config(self) -> IrlConfig:  # noqa: D401
        """The IRL settings, with expert noise applied for GAIL-Expert-Noise."""
        if self.algorithm is Algorithm.GAIL_EXPERT_NOISE:
            return self.irl.model_copy(
                update={"expert_noise_sigma": self.expert_noise_sigma}
            )
        return self.irl

    @property
    def bc_config(self) -> BcConfig:  # noqa: D401
        """The BC settings, with dropout 0.2 for BC-Dropout."""
        if self.algorithm is Algorithm.BC_DROPOUT:
            return self.bc.model_copy(update={"dropout_rate": 0.2})
        return self.bc

    def label(self) -> str:
        """Algorithm and perturbation, for logs."""
        return f"{self.env}/{self.algorithm.value}/{self.perturbation.label()}"
