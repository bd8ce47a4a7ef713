from .grids import (
    GRID_BUILDERS,
    ExperimentGrid,
    SkippedCell,
    grid_final,
    grid_multi_epoch,
    grid_single_epoch,
    grid_sub_epoch,
)
from .profiles import CHANNEL_PROFILES, CORPUS_PROFILES, CorpusProfile, channel_profile
from .runner import CellFailed, CellResult, ResultsTable, RunnerConfig, run_grid

__all__ = [
    "CHANNEL_PROFILES",
    "CORPUS_PROFILES",
    "CellFailed",
    "CellResult",
    "CorpusProfile",
    "ExperimentGrid",
    "GRID_BUILDERS",
    "ResultsTable",
    "RunnerConfig",
    "SkippedCell",
    "channel_profile",
    "grid_final",
    "grid_multi_epoch",
    "grid_single_epoch",
    "grid_sub_epoch",
    "run_grid",
]
