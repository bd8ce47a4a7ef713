from .edf import ChannelSignal, MalformedHeader, RawRecording, ScalingDegenerate, parse_edf, write_edf
from .resample import EmptySignal, resample
from .splits import (
    DatasetSplit,
    InsufficientTrainRecordings,
    InvalidRatios,
    hold_out_validation,
    make_splits,
    read_split,
    rng_from_seed,
    write_split,
)
from .stages import (
    CLASS_NAMES,
    EXCLUDED,
    NUM_CLASSES,
    RawStageLabel,
    map_labels,
    read_hypnogram,
    write_hypnogram,
)
from .synthetic import InvalidConfig, SyntheticConfig, generate_synthetic

__all__ = [
    "ChannelSignal",
    "CLASS_NAMES",
    "DatasetSplit",
    "EXCLUDED",
    "EmptySignal",
    "InsufficientTrainRecordings",
    "InvalidConfig",
    "InvalidRatios",
    "MalformedHeader",
    "NUM_CLASSES",
    "RawRecording",
    "RawStageLabel",
    "ScalingDegenerate",
    "SyntheticConfig",
    "generate_synthetic",
    "hold_out_validation",
    "make_splits",
    "map_labels",
    "parse_edf",
    "read_hypnogram",
    "read_split",
    "resample",
    "rng_from_seed",
    "write_edf",
    "write_hypnogram",
    "write_split",
]
