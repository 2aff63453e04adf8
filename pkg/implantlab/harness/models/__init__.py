# -*- coding: utf-8 -*-

from ._algorithm import Algorithm
from ._experiment_spec import DemoProtocol, ExperimentSpec
from ._eval_report import EvalReport, ResultRow

# flake8: noqa
