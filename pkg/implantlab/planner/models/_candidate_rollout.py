from typing import List, NamedTuple

import numpy as np


class CandidateRollout(NamedTuple):
    """One simulated future of the planner."""

    index: int
    """Candidate index; ties are broken towards the lowest."""

    first_action: np.ndarray
    observations: List[np.ndarray]
    """Model observations at which each action was taken."""

    actions: List[np.ndarray]
    """Executed actions, the first one included."""

    rewards: List[float]
    """Inferred rewards of the visited pairs."""

    terminal_observation: np.ndarray
    terminated: bool
    """The model episode ended in a true terminal state before the horizon."""

    diverged: bool
    """The model simulation diverged; the candidate scores minus infinity."""

    estimated_return: float


class PlanDiagnostics(NamedTuple):
    """What the planner saw at one decision step."""

    step: int
    chosen_index: int
    scores: np.ndarray
    """Estimated return of every candidate, minus infinity for diverged ones."""

    diverged: List[int]
    """Indices of diverged candidates."""

    @property
    def best_score(self) -> float:  # noqa: D401
        """Score of the chosen candidate."""
        return float(self.scores[self.chosen_index])

    @property
    def mean_score(self) -> float:  # noqa: D401
        """Mean score over candidates that did not diverge."""
        return float(np.mean(self.scores[np.isfinite(self.scores)]))

    @property
    def score_std(self) -> float:  # noqa: D401
        """Score std over candidates that did not diverge."""
        return float(np.std(self.scores[np.isfinite(self.scores)]))
