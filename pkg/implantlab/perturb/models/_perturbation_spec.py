from enum import Enum
from typing import Optional, Tuple

from pydantic import Field

from implantlab.core import ConfigModel

MOTOR_NOISE_GRID: Tuple[float, ...] = (0.0, 0.1, 0.2, 0.5, 1.0)
"""Executed-action noise levels swept by the harness."""

TRANSITION_NOISE_GRID: Tuple[float, ...] = (0.0, 0.001, 0.002, 0.005, 0.01)
"""Next-state noise levels swept by the harness."""


class PerturbationKind(str, Enum):
    """Which test-time perturbation wraps an environment."""

    NONE = "none"
    """No perturbation."""

    ACTION_NUISANCE = "action_nuisance"
    """Previous action appended to observations in training, noise at test time."""

    STATE_NUISANCE = "state_nuisance"
    """Speed indicator appended to observations in training, zero at test time."""

    MOTOR_NOISE = "motor_noise"
    """Gaussian noise on executed actions at test time."""

    TRANSITION_NOISE = "transition_noise"
    """Gaussian noise on the next physical state at test time."""


class PerturbationMode(str, Enum):
    """Whether confounders are present (train) or removed or replaced (test)."""

    TRAIN = "train"
    """Training-time behavior."""

    TEST = "test"
    """Evaluation-time behavior."""


class PerturbationSpec(ConfigModel):
    """A perturbation and its parameters."""

    kind: PerturbationKind = PerturbationKind.NONE
    """The perturbation."""

    sigma: float = Field(default=0.0, ge=0.0)
    """Noise standard deviation for the noise kinds."""

    v_th: Optional[float] = None
    """Speed threshold of the state nuisance; the environment default when unset."""

    mode: PerturbationMode = PerturbationMode.TEST
    """Train or test behavior."""

    @property
    def is_nuisance(self) -> bool:  # noqa: D401
        """Whether this perturbation only changes observations."""
        return self.kind in (
            PerturbationKind.ACTION_NUISANCE,
            PerturbationKind.STATE_NUISANCE,
        )

    @property
    def is_noise(self) -> bool:  # noqa: D401
        """Whether this perturbation changes dynamics at test time."""
        return self.kind in (
            PerturbationKind.MOTOR_NOISE,
            PerturbationKind.TRANSITION_NOISE,
        )

    def for_mode(self, mode: PerturbationMode) -> "PerturbationSpec":
        """Return a copy in another mode."""
        return self.model_copy(update={"mode": mode})

    def training_view(self) -> "PerturbationSpec":
        """The perturbation as seen during training and by the planner's model.

        Nuisances keep their kind in train mode; noise kinds are absent.
        """
        if self.is_noise:
            return PerturbationSpec(mode=PerturbationMode.TRAIN)
        return self.for_mode(PerturbationMode.TRAIN)

    def label(self) -> str:
        """Short text used in result tables."""
        return self.kind.value
