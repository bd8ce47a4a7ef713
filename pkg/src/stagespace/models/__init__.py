from .build import SleepStageModel, build_model, count_parameters
from .encoders import (
    ConvEncoderSpec,
    ConvEncoderTS,
    EpochEncoder,
    IdentityEncoderSpec,
    IdentityEncoderTS,
    StridedConvEncoder,
    SubWindowIndivisible,
)
from .heads import IndivisibleTokens, PredictionHead
from .predictors import LSTMPredictor, TransformerPredictor, sinusoidal_positions
from .s4 import (
    DiagonalSSM,
    S4Block,
    S4Layer,
    S4LayerParams,
    S4Stack,
    UnstableState,
    random_params,
    s4_kernel,
    ssm_recurrent,
)
from .spec import (
    EPOCH_ENCODERS,
    ArchConfig,
    IncompatibleSpec,
    ModelSpec,
    flagship_spec,
    spec_from_text,
    spec_to_text,
)

__all__ = [
    "ArchConfig",
    "ConvEncoderSpec",
    "ConvEncoderTS",
    "DiagonalSSM",
    "EPOCH_ENCODERS",
    "EpochEncoder",
    "IdentityEncoderSpec",
    "IdentityEncoderTS",
    "IncompatibleSpec",
    "IndivisibleTokens",
    "LSTMPredictor",
    "ModelSpec",
    "PredictionHead",
    "S4Block",
    "S4Layer",
    "S4LayerParams",
    "S4Stack",
    "SleepStageModel",
    "StridedConvEncoder",
    "SubWindowIndivisible",
    "TransformerPredictor",
    "UnstableState",
    "build_model",
    "count_parameters",
    "flagship_spec",
    "random_params",
    "s4_kernel",
    "sinusoidal_positions",
    "spec_from_text",
    "spec_to_text",
    "ssm_recurrent",
]
