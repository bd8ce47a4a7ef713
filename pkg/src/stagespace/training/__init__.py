from .checkpoint import CheckpointRecord, load_checkpoint, save_checkpoint
from .crops import Crop, assemble_batch, crop_dataset
from .losses import focal_loss
from .lr_finder import DivergedImmediately, lr_finder
from .trainer import NonFiniteLoss, TrainConfig, make_optimizer, train, validation_macro_f1

__all__ = [
    "CheckpointRecord",
    "Crop",
    "DivergedImmediately",
    "NonFiniteLoss",
    "TrainConfig",
    "assemble_batch",
    "crop_dataset",
    "focal_loss",
    "load_checkpoint",
    "lr_finder",
    "make_optimizer",
    "save_checkpoint",
    "train",
    "validation_macro_f1",
]
