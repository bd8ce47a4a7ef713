"""Assembly of full models from design-space specifications."""

from __future__ import annotations

import torch
from torch import nn

from .encoders import FRAMES_PER_EPOCH, FREQ_BINS, SAMPLES_PER_EPOCH, make_encoder
from .heads import PredictionHead
from .predictors import make_predictor, predictor_dim
from .spec import ArchConfig, ModelSpec


class SleepStageModel(nn.Module):
    """encoder -> (adapter) -> predictor -> head; emits (B, E, 5) logits."""

    def __init__(self, spec: ModelSpec, arch: ArchConfig):
        super().__init__()
        spec.validate()
        self.spec = spec
        self.arch = arch
        self.encoder = make_encoder(spec, arch)
        dim = predictor_dim(spec.predictor, arch)
        self.adapter = (
            nn.Linear(self.encoder.out_dim, dim)
            if self.encoder.out_dim != dim
            else nn.Identity()
        )
        self.predictor = make_predictor(spec.predictor, arch)
        self.head = PredictionHead(dim, spec.input_epochs, spec.num_classes)

    def input_shape(self, batch: int = 1) -> tuple:
        """Expected input shape for this spec (without feature extraction)."""
        s, c, e = self.spec, self.spec.num_channels, self.spec.input_epochs
        if s.modality == "ts":
            return (batch, c, e * SAMPLES_PER_EPOCH)
        return (batch, c, e * FRAMES_PER_EPOCH, FREQ_BINS)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        tokens = self.adapter(self.encoder(x))
        return self.head(self.predictor(tokens))


def build_model(spec: ModelSpec, arch: ArchConfig | None = None,
                seed: int | None = None) -> SleepStageModel:
    """Build a trainable model; seeding makes initialization reproducible."""
    if seed is not None:
        torch.manual_seed(seed)
    return SleepStageModel(spec, arch or ArchConfig())


def count_parameters(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters() if p.requires_grad)
