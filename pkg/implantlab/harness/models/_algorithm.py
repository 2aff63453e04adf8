from enum import Enum


class Algorithm(str, Enum):
    """The compared imitation algorithms."""

    BC = "BC"
    """Behavioral cloning."""

    BC_DROPOUT = "BC-Dropout"
    """Behavioral cloning with dropout 0.2 on hidden units."""

    GAIL = "GAIL"
    """Adversarial IRL; the policy mean is executed."""

    GAIL_EXPERT_NOISE = "GAIL-Expert-Noise"
    """Adversarial IRL with Gaussian noise added to the expert batch."""

    GAIL_REWARD_ONLY = "GAIL-Reward-Only"
    """The planner with uniform candidates and rollouts, scored by the IRL reward."""

    IMPLANT = "IMPLANT"
    """The planner seeded by the IRL policy and scored by its reward and value."""

    @property
    def is_bc(self) -> bool:  # noqa: D401
        """Whether the algorithm trains by behavioral cloning."""
        return self in (Algorithm.BC, Algorithm.BC_DROPOUT)

    @property
    def uses_planner(self) -> bool:  # noqa: D401
        """Whether actions are chosen by the planner at evaluation time."""
        return self in (Algorithm.GAIL_REWARD_ONLY, Algorithm.IMPLANT)

    @property
    def training_family(self) -> "Algorithm":  # noqa: D401
        """The algorithm whose training run this one reuses."""
        if self.uses_planner:
            return Algorithm.GAIL
        return self
