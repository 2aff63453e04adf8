# -*- coding: utf-8 -*-

from .models import Algorithm, DemoProtocol, EvalReport, ExperimentSpec, ResultRow
from ._references import (
    episode_seeds,
    expert_return,
    measure_references,
    random_return,
    ReferenceReturns,
)
from ._training import (
    collect_cell_demos,
    demo_key,
    DemoKey,
    DISCRIMINATOR_FILE,
    make_return_monitor,
    POLICY_FILE,
    train_cell,
    TrainedArtifacts,
    training_env,
    training_key,
    TrainingKey,
    VALUE_FILE,
)
from ._evaluation import build_test_env, CellEvaluation, evaluate_cell, failed_row
from ._matrix import ArtifactProvider, MatrixResult, run_matrix, trajectories_of
from ._confusion import (
    causal_confusion_probe,
    cell_copy_score,
    collect_confounded_observations,
    confounded_env,
)
from ._analysis import (
    HORIZON_GRID,
    horizon_sweep,
    reward_histogram_table,
    reward_histograms,
    SWEEP_BUDGET,
)

# flake8: noqa
