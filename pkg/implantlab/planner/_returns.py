# -*- coding: utf-8 -*-

"""Truncated inferred-reward return with a terminal value bootstrap."""

from typing import Callable, Optional, Protocol, Sequence, Union

import numpy as np

from implantlab.core import ImplantError, PlanningAbortedError, RejectedInputError

ValueEstimate = Callable[[np.ndarray], float]


class ValueModel(Protocol):
    """Anything exposing ``value(observation)``, such as a ValueFn."""

    def value(self, observations: np.ndarray) -> Union[float, np.ndarray]:
        ...  # pragma: no cover


def discounted_return(
    rewards: Sequence[float],
    terminal_value: float,
    gamma: float,
    terminated: bool,
    candidate_index: Optional[int] = None,
) -> float:
    """``sum_k gamma^k r_k + gamma^L * terminal_value``.

    The terminal value is dropped when the rollout terminated.

    Raises:
        PlanningAbortedError: if a reward, or a value that is used, is not finite.
    """
    r = np.asarray(rewards, dtype=np.float64)
    if not np.all(np.isfinite(r)) or (
        not terminated and not np.isfinite(terminal_value)
    ):
        raise PlanningAbortedError(
            "non-finite reward or value in a return estimate",
            ImplantError(name="PlanningAborted", candidate_index=candidate_index),
        )
    total = float(np.sum(r * gamma ** np.arange(r.shape[0]))) if r.size else 0.0
    if terminated:
        return total
    return total + gamma ** r.shape[0] * float(terminal_value)


def estimate_return(
    rewards: Sequence[float],
    terminal_observation: np.ndarray,
    value_fn: Union[ValueModel, ValueEstimate],
    gamma: float,
    terminated: bool,
    horizon: Optional[int] = None,
) -> float:
    """Score one candidate rollout.

    With no rewards and no termination the result is exactly ``V(s_t)``. A rollout
    that terminated early contributes no terminal value.

    Args:
        rewards: Inferred rewards ``r(s_t', a_t')`` along the rollout.
        terminal_observation: The observation reached after the last reward.
        value_fn: A :class:`~implantlab.imitation.ValueFn` or any callable ``V(s)``.
        gamma: Discount.
        terminated: Whether the rollout ended in a true terminal state.
        horizon: If given, the maximal number of rewards.

    Returns:
        The estimated return.

    Raises:
        RejectedInputError: if more than ``horizon`` rewards are given.
        PlanningAbortedError: if a reward or the used value is not finite.
    """
    if horizon is not None and len(rewards) > horizon:
        raise RejectedInputError(
            f"{len(rewards)} rewards exceed the planning horizon {horizon}"
        )
    value = 0.0
    if not terminated:
        if hasattr(value_fn, "value"):
            evaluate = value_fn.value  # type: ignore[union-attr]
            value = float(evaluate(terminal_observation))
        else:
            value = float(value_fn(terminal_observation))  # type: ignore[operator]
    return discounted_return(rewards, value, gamma, terminated)

