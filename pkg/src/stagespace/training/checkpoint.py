"""Versioned checkpoint container: weights + producing spec + metadata."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

import torch

from ..models.build import SleepStageModel, build_model
from ..models.spec import ArchConfig, ModelSpec

SCHEMA_VERSION = 1


@dataclass
class CheckpointRecord:
    epoch_index: int
    val_macro_f1: float
    weights_path: str
    model_spec: ModelSpec


def save_checkpoint(path, model: SleepStageModel, epoch_index: int,
                    val_macro_f1: float, extra: dict | None = None) -> None:
    """Atomic write: serialize to a temp file, then rename into place."""
    payload = {
        "schema": SCHEMA_VERSION,
        "model_spec": asdict(model.spec),
        "arch": asdict(model.arch),
        "state_dict": model.state_dict(),
        "epoch_index": epoch_index,
        "val_macro_f1": val_macro_f1,
        "extra": extra or {},
    }
    tmp = str(path) + ".tmp"
    torch.save(payload, tmp)
    os.replace(tmp, path)


def load_checkpoint(path) -> tuple[SleepStageModel, dict]:
    payload = torch.load(path, map_location="cpu", weights_only=False)
    if payload.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported checkpoint schema {payload.get('schema')!r}")
    spec = ModelSpec(**payload["model_spec"])
    arch = ArchConfig(**payload["arch"])
    model = build_model(spec, arch)
    model.load_state_dict(payload["state_dict"])
    model.eval()
    meta = {k: payload[k] for k in ("epoch_index", "val_macro_f1", "extra")}
    return model, meta
