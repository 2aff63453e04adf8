import math
from typing import List, Optional

from pydantic import model_validator

from implantlab.core import ConfigModel


class ResultRow(ConfigModel):
    """Evaluation result of one (spec, seed) cell."""

    env: str
    algorithm: str
    perturbation: str
    sigma: float
    seed: int
    mean_return: float
    """Mean ground-truth return over the evaluation episodes."""

    std_return: float
    """Population std of the episode returns."""

    normalized: float
    """``(mean - random) / (expert - random)``."""

    n_episodes: int
    status: str
    """``ok``, or ``failed: <reason>`` with NaN metrics."""

    copy_score: Optional[float] = None
    """Copy-score under the action nuisance; None for every other cell."""

    @property
    def ok(self) -> bool:  # noqa: D401
        """Whether the cell finished."""
        return self.status == "ok"


class EvalReport(ConfigModel):
    """Per-seed and aggregate returns of one spec."""

    env: str
    algorithm: str
    perturbation: str
    sigma: float
    seed_means: List[float]
    """Mean return of every successful seed."""

    seed_stds: List[float]
    """Within-seed std of every successful seed."""

    seed_normalized: List[float]
    """Normalized score of every successful seed."""

    expert_return: float
    """Mean expert return on the unperturbed environment."""

    random_return: float
    """Mean uniform-random return on the unperturbed environment."""

    n_failed: int = 0

    @model_validator(mode="after")
    def _expert_beats_random(self) -> "EvalReport":
        if not self.expert_return > self.random_return:
            raise ValueError("the expert return must exceed the random return")
        return self

    @property
    def mean(self) -> float:  # noqa: D401
        """Mean across seeds."""
        return _mean(self.seed_means)

    @property
    def std(self) -> float:  # noqa: D401
        """Population std across seeds."""
        return _std(self.seed_means)

    @property
    def normalized_mean(self) -> float:  # noqa: D401
        """Mean normalized score across seeds."""
        return _mean(self.seed_normalized)

    @property
    def normalized_std(self) -> float:  # noqa: D401
        """Population std of the normalized score across seeds."""
        return _std(self.seed_normalized)


def _mean(values: List[float]) -> float:
    return math.fsum(values) / len(values) if values else math.nan


def _std(values: List[float]) -> float:
    if not values:
        return math.nan
    m = _mean(values)
    return math.sqrt(math.fsum((v - m) ** 2 for v in values) / len(values))
