"""Learning-rate range scan with geometric sweep and smoothed-loss pick."""

from __future__ import annotations

import copy
import math

import torch

from .losses import focal_loss


class DivergedImmediately(RuntimeError):
    """Loss was already non-finite at the smallest scanned rate."""


def lr_finder(model, batches, lr_min: float = 1e-7, lr_max: float = 1.0,
              steps: int = 100, gamma: float = 2.0, smoothing: float = 0.98,
              weight_decay: float = 0.0) -> float:
    """Scan rates geometrically and return one decade below the minimum
    of the exponentially smoothed loss, clamped to [lr_min, lr_max].

    Operates on a deep copy, so the caller's model and its optimizer
    state are untouched. `batches` is a sequence of (input, target)
    pairs, cycled as needed.
    """
    if not batches:
        raise ValueError("lr_finder needs at least one batch")
    probe = copy.deepcopy(model)
    probe.train()
    optimizer = torch.optim.AdamW(probe.parameters(), lr=lr_min, weight_decay=weight_decay)

    ratio = (lr_max / lr_min) ** (1.0 / max(1, steps - 1))
    rates, smoothed = [], []
    avg = 0.0
    for i in range(steps):
        lr = lr_min * ratio**i
        for group in optimizer.param_groups:
            group["lr"] = lr
        x, y = batches[i % len(batches)]
        loss = focal_loss(probe(x), y, gamma=gamma)
        value = float(loss.detach())
        if not math.isfinite(value):
            if i == 0:
                raise DivergedImmediately(f"loss {value} at lr_min={lr_min}")
            break
        avg = smoothing * avg + (1.0 - smoothing) * value
        rates.append(lr)
        smoothed.append(avg / (1.0 - smoothing ** (i + 1)))  # bias-corrected
        if loss.requires_grad:  # frozen models scan without stepping
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()

    best = min(range(len(smoothed)), key=smoothed.__getitem__)
    chosen = rates[best] / 10.0
    return min(max(chosen, lr_min), lr_max)
