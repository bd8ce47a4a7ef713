"""Non-overlapping training crops over epoch-aligned features."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..features.sets import model_input


@dataclass(frozen=True)
class Crop:
    recording_index: int
    start_epoch: int


def crop_dataset(recordings, input_epochs: int) -> list[Crop]:
    """floor(L / E) consecutive segments per recording, remainder dropped."""
    if input_epochs < 1:
        raise ValueError("input_epochs must be >= 1")
    crops = []
    for idx, rec in enumerate(recordings):
        n_segments = rec.labels.shape[0] // input_epochs
        crops.extend(Crop(idx, s * input_epochs) for s in range(n_segments))
    return crops


def assemble_batch(recordings, crops, input_epochs: int) -> tuple[torch.Tensor, torch.Tensor]:
    """Stack crops into model inputs (B, C, ...) and targets (B, E)."""
    xs, ys = [], []
    for crop in crops:
        rec = recordings[crop.recording_index]
        window = rec.data[crop.start_epoch : crop.start_epoch + input_epochs]
        xs.append(model_input(window))
        ys.append(rec.labels[crop.start_epoch : crop.start_epoch + input_epochs])
    x = torch.from_numpy(np.stack(xs)).float()
    y = torch.from_numpy(np.stack(ys)).long()
    return x, y
