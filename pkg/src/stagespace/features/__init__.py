from .epochs import (
    EPOCH_SAMPLES,
    TARGET_RATE,
    ChannelConfig,
    EpochTensor,
    MissingChannel,
    RateMismatch,
    segment_epochs,
)
from .sets import (
    feature_path,
    load_features,
    load_split_features,
    model_input,
    modality_of,
    save_features,
)
from .spectrogram import (
    STFTConfig,
    SpectrogramTensor,
    compute_spectrogram,
    frame_signal,
    hamming_window,
)

__all__ = [
    "feature_path",
    "load_features",
    "load_split_features",
    "modality_of",
    "model_input",
    "save_features",
    "ChannelConfig",
    "EPOCH_SAMPLES",
    "EpochTensor",
    "MissingChannel",
    "RateMismatch",
    "STFTConfig",
    "SpectrogramTensor",
    "TARGET_RATE",
    "compute_spectrogram",
    "frame_signal",
    "hamming_window",
    "segment_epochs",
]
