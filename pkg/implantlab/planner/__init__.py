# -*- coding: utf-8 -*-

from .models import (
    CandidateRollout,
    CandidateSource,
    PlanDiagnostics,
    PlannerConfig,
    RolloutPolicy,
)
from ._returns import discounted_return, estimate_return, ValueModel
from ._planner import (
    discriminator_reward_fn,
    plan_action,
    RewardFn,
    simulate_candidates,
)
from ._episode import episode_reset_rng, run_episode_with_planning, run_policy_episode
from ._diagnostics import (
    DIAGNOSTICS_COLUMNS,
    diagnostics_to_dataframe,
    write_diagnostics_csv,
)

# flake8: noqa
