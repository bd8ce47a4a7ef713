"""Whole-recording inference: consecutive crops and sliding windows."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..features.sets import model_input


@dataclass
class ProbabilityMatrix:
    probs: np.ndarray  # (num_epochs, 5), rows sum to 1
    labels: np.ndarray  # (num_epochs,)
    recording_id: str = ""

    def validate(self) -> None:
        if self.probs.ndim != 2 or self.probs.shape[0] != self.labels.shape[0]:
            raise ValueError("probability matrix misaligned with labels")
        if np.any(self.probs < 0) or np.any(np.abs(self.probs.sum(axis=1) - 1) > 1e-6):
            raise ValueError("rows must be probability distributions")


def _window_probs(model, features, starts, input_epochs: int, micro_batch: int) -> np.ndarray:
    """Softmax probabilities for windows starting at the given epochs."""
    outs = []
    model.eval()
    with torch.no_grad():
        for i in range(0, len(starts), micro_batch):
            chunk = starts[i : i + micro_batch]
            x = np.stack(
                [model_input(features.data[s : s + input_epochs]) for s in chunk]
            )
            logits = model(torch.from_numpy(x).float())
            outs.append(torch.softmax(logits, dim=-1).numpy())
    return np.concatenate(outs, axis=0)


def _padded(features, input_epochs: int):
    """Right-pad a short recording by repeating its final epoch."""
    length = features.data.shape[0]
    pad = input_epochs - length
    data = np.concatenate([features.data, np.repeat(features.data[-1:], pad, axis=0)])
    padded = type(features)(data=data, labels=features.labels)
    return padded


def predict_consecutive(model, features, input_epochs: int,
                        micro_batch: int = 8) -> ProbabilityMatrix:
    """Non-overlapping segment inference (training/validation protocol).

    Trailing epochs past the last full segment are dropped; recordings
    shorter than the input size are right-padded by repeating the last
    epoch and the padded positions discarded.
    """
    length = features.data.shape[0]
    if length < input_epochs:
        probs = _window_probs(model, _padded(features, input_epochs),
                              [0], input_epochs, micro_batch)[0][:length]
        return ProbabilityMatrix(probs=probs, labels=features.labels.copy(),
                                 recording_id=features.recording_id)
    n_segments = length // input_epochs
    starts = [s * input_epochs for s in range(n_segments)]
    probs = _window_probs(model, features, starts, input_epochs, micro_batch)
    probs = probs.reshape(n_segments * input_epochs, -1)
    kept = n_segments * input_epochs
    return ProbabilityMatrix(
        probs=probs,
        labels=features.labels[:kept].copy(),
        recording_id=features.recording_id,
    )


def sliding_window_predict(model, features, input_epochs: int,
                           micro_batch: int = 8) -> ProbabilityMatrix:
    """Stride-1 sliding-window inference with probability averaging.

    Windows start at every offset 0..L-E; each epoch's probability is
    the mean over all windows covering it, renormalized to sum to 1.
    """
    length = features.data.shape[0]
    if length < input_epochs:
        probs = _window_probs(model, _padded(features, input_epochs),
                              [0], input_epochs, micro_batch)[0][:length]
        probs = probs / probs.sum(axis=1, keepdims=True)
        return ProbabilityMatrix(probs=probs, labels=features.labels.copy(),
                                 recording_id=features.recording_id)

    starts = list(range(length - input_epochs + 1))
    window_probs = _window_probs(model, features, starts, input_epochs, micro_batch)

    total = np.zeros((length, window_probs.shape[-1]))
    cover = np.zeros(length)
    for w, s in enumerate(starts):
        total[s : s + input_epochs] += window_probs[w]
        cover[s : s + input_epochs] += 1
    probs = total / cover[:, None]
    probs = probs / probs.sum(axis=1, keepdims=True)
    return ProbabilityMatrix(
        probs=probs, labels=features.labels.copy(), recording_id=features.recording_id
    )


def coverage_counts(length: int, input_epochs: int) -> np.ndarray:
    """How many stride-1 windows cover each epoch of a recording."""
    if length < input_epochs:
        return np.ones(length, dtype=np.int64)
    counts = np.zeros(length, dtype=np.int64)
    for s in range(length - input_epochs + 1):
        counts[s : s + input_epochs] += 1
    return counts
