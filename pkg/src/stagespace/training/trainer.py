"""Training loop: gradient accumulation to a fixed effective batch,
per-epoch validation, best-macro-F1 checkpoint selection."""

from __future__ import annotations

import copy
import json
import math
import os
from dataclasses import asdict, dataclass

import numpy as np
import torch

from ..data.splits import rng_from_seed
from ..evaluation.inference import predict_consecutive
from ..evaluation.metrics import f1_scores
from .checkpoint import CheckpointRecord, save_checkpoint
from .crops import assemble_batch, crop_dataset
from .losses import focal_loss
from .lr_finder import lr_finder


class NonFiniteLoss(RuntimeError):
    def __init__(self, message: str, record: CheckpointRecord | None = None):
        super().__init__(message)
        self.record = record


@dataclass
class TrainConfig:
    effective_batch: int = 64
    micro_batch: int = 8
    lr_mode: str = "fixed"  # "fixed" | "finder"
    learning_rate: float = 1e-3
    max_epochs: int = 50
    weight_decay: float = 0.01
    focal_gamma: float = 2.0
    seed: int = 0

    @property
    def accumulation_steps(self) -> int:
        return self.effective_batch // self.micro_batch

    def validate(self) -> None:
        if self.effective_batch % self.micro_batch:
            raise ValueError("micro_batch must divide effective_batch")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.lr_mode not in ("fixed", "finder"):
            raise ValueError(f"unknown lr_mode {self.lr_mode!r}")


def make_optimizer(model, lr: float, weight_decay: float) -> torch.optim.AdamW:
    """AdamW with decay applied only to weight matrices, not biases/norms."""
    decay, no_decay = [], []
    for name, p in model.named_parameters():
        if not p.requires_grad:
            continue
        (no_decay if p.ndim < 2 else decay).append(p)
    return torch.optim.AdamW(
        [
            {"params": decay, "weight_decay": weight_decay},
            {"params": no_decay, "weight_decay": 0.0},
        ],
        lr=lr,
    )


def validation_macro_f1(model, val_sets, input_epochs: int, micro_batch: int = 8) -> float:
    """Pooled macro F1 over consecutive non-overlapping val segments."""
    preds, labels = [], []
    for features in val_sets:
        pm = predict_consecutive(model, features, input_epochs, micro_batch)
        preds.append(pm.probs.argmax(axis=1))
        labels.append(pm.labels)
    _, macro = f1_scores(np.concatenate(preds), np.concatenate(labels))
    return macro


def train(model, train_sets, val_sets, cfg: TrainConfig,
          out_dir=None, log=None) -> CheckpointRecord:
    """Train up to cfg.max_epochs passes; return the best-validation
    checkpoint (ties broken by earliest epoch)."""
    cfg.validate()
    if not train_sets or not val_sets:
        raise ValueError("train and validation sets must be non-empty")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    torch.manual_seed(cfg.seed)

    input_epochs = model.spec.input_epochs
    crops = crop_dataset(train_sets, input_epochs)
    if not crops:
        raise ValueError("no training crops; recordings shorter than input size")

    lr = cfg.learning_rate
    if cfg.lr_mode == "finder":
        scan_rng = rng_from_seed(cfg.seed, stream=9)
        scan = [
            crops[i]
            for i in scan_rng.integers(0, len(crops), size=min(len(crops), 32))
        ]
        batches = [
            assemble_batch(train_sets, scan[i : i + cfg.micro_batch], input_epochs)
            for i in range(0, len(scan), cfg.micro_batch)
        ]
        lr = lr_finder(model, batches, gamma=cfg.focal_gamma, weight_decay=cfg.weight_decay)
    optimizer = make_optimizer(model, lr, cfg.weight_decay)

    if out_dir:
        with open(os.path.join(out_dir, "seed.txt"), "w") as f:
            f.write(str(cfg.seed) + "\n")
        with open(os.path.join(out_dir, "config.snapshot"), "w") as f:
            json.dump(
                {"train": asdict(cfg), "model_spec": asdict(model.spec),
                 "arch": asdict(model.arch), "learning_rate_used": lr},
                f, indent=1,
            )
        metrics_path = os.path.join(out_dir, "metrics.csv")
        with open(metrics_path, "w") as f:
            f.write("epoch,train_loss,val_macro_f1,lr\n")

    best: CheckpointRecord | None = None
    accum = cfg.accumulation_steps
    for epoch in range(cfg.max_epochs):
        model.train()
        order = rng_from_seed(cfg.seed, stream=100 + epoch).permutation(len(crops))
        losses = []
        optimizer.zero_grad()
        pending = 0
        for step, start in enumerate(range(0, len(order), cfg.micro_batch)):
            batch = [crops[i] for i in order[start : start + cfg.micro_batch]]
            x, y = assemble_batch(train_sets, batch, input_epochs)
            loss = focal_loss(model(x), y, gamma=cfg.focal_gamma)
            value = float(loss.detach())
            if not math.isfinite(value):
                raise NonFiniteLoss(
                    f"loss became {value} at epoch {epoch}, step {step}", best
                )
            losses.append(value)
            (loss / accum).backward()
            pending += 1
            if pending == accum:
                optimizer.step()
                optimizer.zero_grad()
                pending = 0
        if pending:  # leftover micro-batches still form a (smaller) step
            optimizer.step()
            optimizer.zero_grad()

        val_f1 = validation_macro_f1(model, val_sets, input_epochs, cfg.micro_batch)
        train_loss = float(np.mean(losses)) if losses else float("nan")
        if log:
            log(f"epoch {epoch}: train_loss={train_loss:.4f} val_macro_f1={val_f1:.4f}")
        if out_dir:
            with open(metrics_path, "a") as f:
                f.write(f"{epoch},{train_loss:.6f},{val_f1:.6f},{lr:.3e}\n")
            save_checkpoint(os.path.join(out_dir, "last.ckpt"), model, epoch, val_f1)
        if best is None or val_f1 > best.val_macro_f1:
            weights_path = os.path.join(out_dir, "best.ckpt") if out_dir else ""
            if out_dir:
                save_checkpoint(weights_path, model, epoch, val_f1)
            best = CheckpointRecord(
                epoch_index=epoch,
                val_macro_f1=val_f1,
                weights_path=weights_path,
                model_spec=model.spec,
            )
            best_state = copy.deepcopy(model.state_dict())

    model.load_state_dict(best_state)  # leave the model at its best epoch
    return best
