"""Feature caching and model-input packing for both modalities."""

from __future__ import annotations

import os
from dataclasses import asdict

import numpy as np

from .. import tensorio
from .epochs import EpochTensor
from .spectrogram import SpectrogramTensor, STFTConfig

FeatureSet = EpochTensor | SpectrogramTensor


def modality_of(features: FeatureSet) -> str:
    return "ts" if features.data.ndim == 3 else "spec"


def model_input(data: np.ndarray) -> np.ndarray:
    """Pack consecutive epochs into one model input.

    ts  : (E, C, 3000)    -> (C, E*3000)
    spec: (E, C, 29, 129) -> (C, E*29, 129)
    """
    if data.ndim == 3:
        e, c, n = data.shape
        return data.transpose(1, 0, 2).reshape(c, e * n)
    e, c, t, f = data.shape
    return data.transpose(1, 0, 2, 3).reshape(c, e * t, f)


def save_features(path, features: FeatureSet) -> None:
    meta = {
        "modality": modality_of(features),
        "recording_id": features.recording_id,
        "channel_names": list(features.channel_names),
        "labels": features.labels.tolist(),
    }
    if isinstance(features, SpectrogramTensor) and features.config is not None:
        meta["stft"] = asdict(features.config)
    tensorio.write_tensor(path, features.data.astype(np.float32), meta)


def load_features(path) -> FeatureSet:
    data, meta = tensorio.read_tensor(path, with_meta=True)
    if meta is None:
        raise ValueError(f"{path}: missing JSON sidecar")
    labels = np.asarray(meta["labels"], dtype=np.int64)
    common = dict(
        labels=labels,
        recording_id=meta.get("recording_id", ""),
        channel_names=tuple(meta.get("channel_names", ())),
    )
    if meta["modality"] == "ts":
        return EpochTensor(data=data, **common)
    cfg = STFTConfig(**meta["stft"]) if "stft" in meta else None
    return SpectrogramTensor(data=data, config=cfg, **common)


def feature_path(features_dir, recording_id: str) -> str:
    return os.path.join(features_dir, f"{recording_id}.stt")


def load_split_features(features_dir, recording_ids) -> list:
    return [load_features(feature_path(features_dir, rid)) for rid in recording_ids]
