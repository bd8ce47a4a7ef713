"""Focal loss for imbalanced multiclass epoch labeling."""

from __future__ import annotations

import math

import torch

PROB_FLOOR = 1e-12


def focal_loss(logits: torch.Tensor, targets: torch.Tensor, gamma: float = 2.0) -> torch.Tensor:
    """Mean of -(1 - p_t)^gamma * log(p_t) over all (batch, epoch) positions.

    logits: (..., num_classes); targets: integer class indices of the
    matching leading shape. gamma=0 reduces exactly to cross-entropy.
    """
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    logp = torch.log_softmax(logits, dim=-1)
    logp_t = logp.gather(-1, targets.unsqueeze(-1)).squeeze(-1)
    logp_t = logp_t.clamp(min=math.log(PROB_FLOOR))
    p_t = torch.exp(logp_t)
    return (-((1.0 - p_t) ** gamma) * logp_t).mean()
