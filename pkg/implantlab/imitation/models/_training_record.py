from implantlab.core import ConfigModel


class TrainingRecord(ConfigModel):
    """One row of the IRL training log."""

    iteration: int
    """Zero-based iteration index."""

    mean_return: float
    """Mean ground-truth return of the deterministic policy, or NaN if unmonitored."""

    disc_loss: float
    """Discriminator cross-entropy after the iteration's update."""

    mean_inferred_reward: float
    """Mean discriminator reward over the collected batch."""

    policy_kl: float
    """Estimated KL between the sampling policy and the updated policy."""

    value_loss: float
    """Mean squared error of the value function after fitting."""
