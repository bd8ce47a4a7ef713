"""Prediction head: local average pooling plus a shared linear layer."""

from __future__ import annotations

import torch
from torch import nn


class IndivisibleTokens(ValueError):
    pass


class PredictionHead(nn.Module):
    """Pool each epoch's token group to one vector, then map to logits.

    (B, T, dim) -> (B, E, num_classes), requiring T % E == 0. With a
    single epoch this is global average pooling over all tokens.
    """

    def __init__(self, dim: int, num_epochs: int, num_classes: int = 5):
        super().__init__()
        self.num_epochs = num_epochs
        self.linear = nn.Linear(dim, num_classes)

    def forward(self, tokens: torch.Tensor) -> torch.Tensor:
        b, t, d = tokens.shape
        if t % self.num_epochs:
            raise IndivisibleTokens(
                f"{t} tokens cannot be pooled into {self.num_epochs} epochs"
            )
        pooled = tokens.reshape(b, self.num_epochs, t // self.num_epochs, d).mean(dim=2)
        return self.linear(pooled)
