from enum import Enum

from pydantic import Field

from implantlab.core import ConfigModel


class RolloutPolicy(str, Enum):
    """How actions after the first are chosen inside a candidate rollout."""

    POLICY_MEAN = "policy_mean"
    """The clipped policy mean."""

    POLICY_SAMPLE = "policy_sample"
    """A clipped sample of the policy."""

    UNIFORM_RANDOM = "uniform_random"
    """A uniform draw from the action bounds."""

    MIXTURE = "mixture"
    """A policy sample with probability ``mixture_weight``, else a uniform draw."""


class CandidateSource(str, Enum):
    """Where the first action of each candidate comes from."""

    POLICY_SAMPLE = "policy_sample"
    """A clipped sample of the policy at the observed state."""

    UNIFORM_RANDOM = "uniform_random"
    """A uniform draw from the action bounds."""


class PlannerConfig(ConfigModel):
    """Random-shooting planner settings."""

    budget: int = Field(default=20, ge=1)
    """Number of candidate rollouts B."""

    horizon: int = Field(default=50, ge=0)
    """Simulated steps H per candidate; 0 scores with the value function alone."""

    gamma: float = Field(default=0.99, ge=0.0, lt=1.0)
    """Discount of the return estimate."""

    rollout_policy: RolloutPolicy = RolloutPolicy.POLICY_MEAN
    candidate_source: CandidateSource = CandidateSource.POLICY_SAMPLE

    anchor_mean: bool = True
    """Use the policy mean as candidate 0 when candidates are policy samples."""

    mixture_weight: float = Field(default=0.5, ge=0.0, le=1.0)
    """Probability of a policy action under the mixture rollout policy."""

    workers: int = Field(default=1, ge=1)
    """Threads stepping candidate rollouts; results do not depend on it."""

    diagnostics: bool = False
    """Record per-step planner diagnostics."""

