"""Segmentation of recordings into labeled 30-second epoch tensors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data.edf import RawRecording
from ..data.stages import map_labels

EPOCH_SAMPLES = 3000  # 30 s x 100 Hz
TARGET_RATE = 100.0


class MissingChannel(KeyError):
    pass


class RateMismatch(ValueError):
    pass


@dataclass
class ChannelConfig:
    modality_name: str
    selected_channels: list[str]


@dataclass
class EpochTensor:
    data: np.ndarray  # (num_epochs, num_channels, 3000) float32
    labels: np.ndarray  # (num_epochs,) int64, canonical classes 0..4
    sample_rate: float = TARGET_RATE
    recording_id: str = ""
    channel_names: tuple = ()

    @property
    def num_epochs(self) -> int:
        return self.data.shape[0]

    @property
    def num_channels(self) -> int:
        return self.data.shape[1]


def segment_epochs(rec: RawRecording, cfg: ChannelConfig) -> EpochTensor:
    """Cut a recording into non-excluded labeled epochs.

    Channels follow cfg order and must already be at 100 Hz. Epoch i of
    the output covers samples [3000*i, 3000*(i+1)) of the kept epochs;
    MOVEMENT/UNKNOWN epochs are dropped, remainder samples past the
    hypnogram extent are truncated.
    """
    chans = []
    for name in cfg.selected_channels:
        try:
            ch = rec.channel(name)
        except KeyError:
            raise MissingChannel(
                f"recording {rec.recording_id!r} lacks channel {name!r}"
            ) from None
        if abs(ch.sample_rate - TARGET_RATE) > 1e-9:
            raise RateMismatch(
                f"channel {name!r} is at {ch.sample_rate} Hz; resample to {TARGET_RATE} first"
            )
        chans.append(ch.physical)

    if not rec.hypnogram:
        raise ValueError(f"recording {rec.recording_id!r} has no hypnogram")
    labels, mask = map_labels(rec.hypnogram)
    n_epochs = min(len(labels), min(len(c) for c in chans) // EPOCH_SAMPLES)
    labels, mask = labels[:n_epochs], mask[:n_epochs]

    stacked = np.stack([c[: n_epochs * EPOCH_SAMPLES] for c in chans])  # (C, N*3000)
    epochs = stacked.reshape(len(chans), n_epochs, EPOCH_SAMPLES).transpose(1, 0, 2)

    keep = ~mask
    return EpochTensor(
        data=np.ascontiguousarray(epochs[keep], dtype=np.float32),
        labels=labels[keep],
        recording_id=rec.recording_id,
        channel_names=tuple(cfg.selected_channels),
    )
