from typing import Any, List, Optional

from pydantic import Field, field_validator, model_validator

from implantlab.core import ConfigModel
from implantlab.envs import ENV_NAMES
from implantlab.harness.models import Algorithm, DemoProtocol, ExperimentSpec
from implantlab.imitation import BcConfig, IrlConfig
from implantlab.perturb import (
    MOTOR_NOISE_GRID,
    PerturbationKind,
    PerturbationSpec,
    TRANSITION_NOISE_GRID,
)
from implantlab.planner import PlannerConfig


class EnvSection(ConfigModel):
    """Which environment the run uses."""

    name: str = "PointMass2D"
    """Registry name of the environment."""

    @field_validator("name")
    @classmethod
    def _known_env(cls, value: str) -> str:
        if value not in ENV_NAMES:
            raise ValueError(
                f"unknown environment '{value}'; expected one of {', '.join(ENV_NAMES)}"
            )
        return value


class EvalSection(ConfigModel):
    """Evaluation protocol and the optional analyses of ``eval``."""

    seeds: int = Field(default=5, ge=1)
    """Number of experiment seeds; seed ``k`` of the run is ``seed + k``."""

    episodes: int = Field(default=20, ge=1)
    """Evaluation episodes per seed."""

    sweep: Optional[PerturbationKind] = None
    """Noise kind swept over its full sigma grid instead of the single perturbation."""

    horizon_sweep: bool = False
    """Also evaluate the planner over :attr:`horizons` and write a curve table."""

    horizons: List[int] = [0, 10, 50, 100]
    """Horizons of the horizon sweep."""

    sweep_budget: int = Field(default=10, ge=1)
    """Rollout budget of the horizon sweep."""

    histogram_bins: int = Field(default=30, ge=1)
    """Bins of the inferred-reward histograms."""

    dump_trajectories: bool = False
    """Write one CSV per evaluated episode."""

    @field_validator("sweep")
    @classmethod
    def _noise_only(
        cls, value: Optional[PerturbationKind]
    ) -> Optional[PerturbationKind]:
        if value is not None and value not in (
            PerturbationKind.MOTOR_NOISE,
            PerturbationKind.TRANSITION_NOISE,
        ):
            raise ValueError("only motor_noise and transition_noise can be swept")
        return value

    @field_validator("horizons")
    @classmethod
    def _horizons(cls, value: List[int]) -> List[int]:
        if not value or any(h < 0 for h in value):
            raise ValueError("horizons must be non-empty and non-negative")
        return value


class IoSection(ConfigModel):
    """Where artifacts go."""

    out: Optional[str] = None
    """Output root; ``$IMPLANT_OUT`` or ``./implant-runs`` when unset."""


class RunConfig(ConfigModel):
    """The resolved configuration of one pipeline run."""

    seed: int = Field(default=0, ge=0)
    """Root seed; every random stream of the run derives from it."""

    env: EnvSection = EnvSection()

    demos: DemoProtocol = DemoProtocol()

    algorithm: List[Algorithm] = list(Algorithm)
    """Algorithms to train and evaluate, in report order."""

    bc: BcConfig = BcConfig()

    irl: IrlConfig = IrlConfig()

    expert_noise_sigma: float = Field(default=0.1, gt=0.0)
    """Expert-batch noise of GAIL-Expert-Noise."""

    planner: Optional[PlannerConfig] = None
    """Planner settings; environment defaults when unset."""

    perturbation: PerturbationSpec = PerturbationSpec()
    """Test-time perturbation; ignored for evaluation when ``eval.sweep`` is set."""

    eval: EvalSection = EvalSection()

    io: IoSection = IoSection()

    @field_validator("algorithm", mode="before")
    @classmethod
    def _single_algorithm(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [value]
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "RunConfig":
        if not self.algorithm:
            raise ValueError("at least one algorithm is required")
        if len(set(self.algorithm)) != len(self.algorithm):
            raise ValueError("algorithms must not repeat")
        if (
            self.eval.sweep is not None
            and self.perturbation.kind is not PerturbationKind.NONE
        ):
            raise ValueError("eval.sweep replaces the perturbation; leave it unset")
        return self

    @property
    def experiment_seeds(self) -> List[int]:  # noqa: D401
        """Seeds of the experiment matrix."""
        return [self.seed + k for k in range(self.eval.seeds)]

    def evaluation_perturbations(self) -> List[PerturbationSpec]:
        """The perturbations evaluated: the sweep grid, or the single perturbation."""
        if self.eval.sweep is None:
            return [self.perturbation]
        grid = (
            MOTOR_NOISE_GRID
            if self.eval.sweep is PerturbationKind.MOTOR_NOISE
            else TRANSITION_NOISE_GRID
        )
        return [PerturbationSpec(kind=self.eval.sweep, sigma=sigma) for sigma in grid]

    def experiment_spec(
        self,
        algorithm: Algorithm,
        perturbation: Optional[PerturbationSpec] = None,
    ) -> ExperimentSpec:
        """The harness experiment of one algorithm under one perturbation."""
        return ExperimentSpec(
            env=self.env.name,
            algorithm=algorithm,
            perturbation=perturbation or self.perturbation,
            planner=self.planner if algorithm.uses_planner else None,
            seeds=self.experiment_seeds,
            episodes=self.eval.episodes,
            demos=self.demos,
            bc=self.bc,
            irl=self.irl,
            expert_noise_sigma=self.expert_noise_sigma,
        )

    def experiment_specs(self) -> List[ExperimentSpec]:
        """Every experiment of the run, algorithms outermost, in canonical order."""
        return [
            self.experiment_spec(algorithm, perturbation)
            for algorithm in self.algorithm
            for perturbation in self.evaluation_perturbations()
        ]

    def training_specs(self) -> List[ExperimentSpec]:
        """One experiment per distinct training family, in order of first use.

        A horizon sweep needs the GAIL run even when no IRL algorithm is listed.
        """
        perturbation = self.evaluation_perturbations()[0]
        algorithms = list(self.algorithm)
        if self.eval.horizon_sweep:
            algorithms.append(Algorithm.GAIL)
        seen: List[Algorithm] = []
        specs = []
        for algorithm in algorithms:
            family = algorithm.training_family
            if family not in seen:
                seen.append(family)
                specs.append(self.experiment_spec(family, perturbation))
        return specs
