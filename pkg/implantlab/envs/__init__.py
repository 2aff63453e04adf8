# -*- coding: utf-8 -*-

from ._mdp import BaseEnv, EnvState, EnvWrapper, Mdp, StepResult
from ._trajectory import Trajectory, rollout
from ._point_mass import PointMass2D
from ._pendulum import Pendulum, angle_normalize
from ._linear_quadratic import LinearQuadratic, riccati_gain
from ._reward_free import RewardFreeEnv
from ._demos import DemoSet, collect_demos
from ._registry import ENV_NAMES, EnvDefaults, env_defaults, make_env

# flake8: noqa
