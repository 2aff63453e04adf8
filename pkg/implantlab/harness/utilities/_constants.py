class ResultColumns:
    ENV = "env"

    ALGORITHM = "algorithm"

    PERTURBATION = "perturbation"

    SIGMA = "sigma"

    SEED = "seed"

    MEAN_RETURN = "mean_return"

    STD_RETURN = "std_return"

    NORMALIZED = "normalized"

    N_EPISODES = "n_episodes"

    COPY_SCORE = "copy_score"

    STATUS = "status"

    STATUS_OK = "ok"

    FAILED_PREFIX = "failed: "

    RESULT_COLUMNS = [
        ENV,
        ALGORITHM,
        PERTURBATION,
        SIGMA,
        SEED,
        MEAN_RETURN,
        STD_RETURN,
        NORMALIZED,
        N_EPISODES,
        COPY_SCORE,
        STATUS,
    ]

    GROUP_COLUMNS = [ENV, ALGORITHM, PERTURBATION, SIGMA]

    SUMMARY_COLUMNS = GROUP_COLUMNS + [
        "mean_return",
        "std_return",
        "mean_normalized",
        "std_normalized",
        "mean_copy_score",
        "n_seeds",
        "n_failed",
    ]


class CurveColumns:
    HORIZON = "H"

    MEAN_NORMALIZED = "mean_normalized"

    STDERR = "stderr"

    CURVE_COLUMNS = [HORIZON, MEAN_NORMALIZED, STDERR]


class HistogramColumns:
    BIN_LEFT = "bin_left"

    BIN_RIGHT = "bin_right"

    DENSITY_POLICY = "density_policy"

    DENSITY_EXPERT = "density_expert"

    HISTOGRAM_COLUMNS = [BIN_LEFT, BIN_RIGHT, DENSITY_POLICY, DENSITY_EXPERT]


class TrainingLogColumns:
    ITERATION = "iteration"

    EPOCH = "epoch"

    LOSS = "loss"

    IRL_LOG_COLUMNS = [
        ITERATION,
        "mean_return",
        "disc_loss",
        "mean_inferred_reward",
        "policy_kl",
        "value_loss",
    ]

    BC_LOG_COLUMNS = [EPOCH, LOSS]


FLOAT_FORMAT = "%.10g"
"""Float format of every result table written to disk."""
