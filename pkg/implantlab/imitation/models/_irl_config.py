import math
from typing import List, Optional

from pydantic import Field, field_validator

from implantlab.core import ConfigModel
from implantlab.net import OptimizerKind


class IrlConfig(ConfigModel):
    """Hyperparameters of adversarial IRL training."""

    gamma: float = Field(default=0.99, ge=0.0, lt=1.0)
    """Discount of the inferred-reward returns."""

    lam: float = Field(default=0.98, ge=0.0, lt=1.0)
    """GAE parameter."""

    iterations: int = Field(default=300, ge=1)
    """Number of collect-and-update iterations."""

    batch_steps: int = Field(default=1000, ge=1)
    """Environment steps collected per iteration."""

    generator_steps: int = Field(default=3, ge=1)
    """Surrogate epochs per iteration."""

    discriminator_steps: int = Field(default=1, ge=1)
    """Discriminator passes over the agent batch per iteration."""

    value_fn_steps: int = Field(default=3, ge=1)
    """Value regression epochs per iteration."""

    disc_entropy_coeff: float = Field(default=0.01, ge=0.0)
    """Weight of the discriminator's output-entropy bonus."""

    policy_entropy_coeff: float = Field(default=0.0, ge=0.0)
    """Weight of the policy's entropy bonus."""

    clip_ratio: float = Field(default=0.2, gt=0.0, lt=1.0)
    """Importance-ratio clip of the surrogate."""

    target_kl: float = Field(default=0.02, gt=0.0)
    """Surrogate epochs stop once the estimated KL exceeds this."""

    expert_noise_sigma: float = Field(default=0.0, ge=0.0)
    """Std of noise added to the expert batch at every discriminator update."""

    policy_lr: float = Field(default=3e-4, gt=0.0)
    """Policy step size."""

    value_lr: float = Field(default=1e-3, gt=0.0)
    """Value-function step size."""

    disc_lr: float = Field(default=3e-4, gt=0.0)
    """Discriminator step size."""

    minibatch_size: int = Field(default=64, ge=1)
    """Minibatch size of policy and value updates."""

    disc_minibatch_size: int = Field(default=64, ge=1)
    """Agent minibatch size of discriminator updates."""

    hidden_dims: List[int] = [100, 100]
    """Hidden layer sizes of all three networks."""

    init_log_std: float = math.log(0.5)
    """Initial policy log-std."""

    min_log_std: float = math.log(0.05)
    """Floor of the policy log-std."""

    norm_warmup_iterations: int = Field(default=10, ge=0)
    """Iterations during which the discriminator's input statistics are updated."""

    @field_validator("hidden_dims")
    @classmethod
    def _positive_dims(cls, value: List[int]) -> List[int]:
        if any(d <= 0 for d in value):
            raise ValueError("hidden dims must be positive")
        return value


class BcConfig(ConfigModel):
    """Hyperparameters of behavioral cloning."""

    epochs: int = Field(default=500, ge=1)
    """Passes over the demonstrations."""

    learning_rate: float = Field(default=1e-4, gt=0.0)
    """Step size."""

    batch_size: Optional[int] = Field(default=32, ge=1)
    """Minibatch size; None trains on the full batch."""

    dropout_rate: float = Field(default=0.0, ge=0.0, lt=1.0)
    """Hidden-unit dropout; 0.2 gives the BC-Dropout baseline."""

    optimizer: OptimizerKind = OptimizerKind.ADAM
    """Update rule."""

    log_std: float = math.log(0.1)
    """Fixed policy log-std."""

    hidden_dims: List[int] = [100, 100]
    """Hidden layer sizes."""
