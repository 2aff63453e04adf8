# -*- coding: utf-8 -*-

from ._planner_config import CandidateSource, PlannerConfig, RolloutPolicy
from ._candidate_rollout import CandidateRollout, PlanDiagnostics

# flake8: noqa
