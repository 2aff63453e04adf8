from ._constants import (
    CurveColumns,
    FLOAT_FORMAT,
    HistogramColumns,
    ResultColumns,
    TrainingLogColumns,
)
from ._dataframe_utilities import (
    convert_bc_log_to_dataframe,
    convert_irl_log_to_dataframe,
    convert_rows_to_dataframe,
    convert_trajectory_to_dataframe,
    read_table,
    reports_from_results,
    summarize_results,
    write_table,
)

# flake8: noqa
