# -*- coding: utf-8 -*-

from .models import EnvSection, EvalSection, IoSection, RunConfig
from ._config_loader import (
    apply_overrides,
    dump_run_config,
    freeze_run_config,
    load_run_config,
    parse_run_config,
)
from ._plotting import plot_curve, plot_histogram, plot_noise_sweep, swept_groups
from ._commands import (
    BC_LOG_FILE,
    checkpoint_directory,
    cmd_all,
    cmd_demos,
    cmd_eval,
    cmd_plot,
    cmd_train,
    curve_file_name,
    demos_file_name,
    DIAGNOSTICS_FILE,
    HISTOGRAM_FILE,
    IRL_LOG_FILE,
    RESULTS_FILE,
    SUMMARY_FILE,
    TRAJECTORY_DIRECTORY,
)
from ._main import build_parser, main

# flake8: noqa
