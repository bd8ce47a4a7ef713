"""Deterministic train/val/test splitting of recording ids.

A split is a pure function of (ids, ratios, seed): ids are sorted,
shuffled with a counter-based Philox generator, and allocated by
floor counts for val/test with the remainder going to train.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np


class InvalidRatios(ValueError):
    pass


class InsufficientTrainRecordings(ValueError):
    pass


def rng_from_seed(seed: int, stream: int = 0) -> np.random.Generator:
    """The package-wide PRNG: Philox keyed by (seed, stream).

    Philox is counter-based, so streams derived from the same seed are
    independent and reproducible across platforms.
    """
    return np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))


@dataclass
class DatasetSplit:
    train_ids: list[str]
    val_ids: list[str] = field(default_factory=list)
    test_ids: list[str] = field(default_factory=list)

    def all_ids(self) -> list[str]:
        return list(self.train_ids) + list(self.val_ids) + list(self.test_ids)

    def validate(self) -> None:
        groups = [set(self.train_ids), set(self.val_ids), set(self.test_ids)]
        for i in range(3):
            for j in range(i + 1, 3):
                overlap = groups[i] & groups[j]
                if overlap:
                    raise ValueError(f"split groups overlap: {sorted(overlap)}")


def make_splits(recording_ids, ratios, seed: int) -> DatasetSplit:
    """Partition recording ids into train/val/test by the given ratios."""
    ids = sorted(recording_ids)
    if not ids:
        raise InvalidRatios("no recording ids to split")
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate recording ids")
    ratios = tuple(float(r) for r in ratios)
    if len(ratios) != 3 or any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise InvalidRatios(f"ratios must be non-negative and sum to 1, got {ratios}")

    rng = rng_from_seed(seed, stream=0)
    order = rng.permutation(len(ids))
    shuffled = [ids[i] for i in order]

    n = len(ids)
    n_val = int(n * ratios[1])
    n_test = int(n * ratios[2])
    n_train = n - n_val - n_test
    return DatasetSplit(
        train_ids=shuffled[:n_train],
        val_ids=shuffled[n_train : n_train + n_val],
        test_ids=shuffled[n_train + n_val :],
    )


def hold_out_validation(split: DatasetSplit, n: int) -> DatasetSplit:
    """Move the last n train recordings into an (empty) validation set."""
    if split.val_ids:
        raise ValueError("validation set is already populated")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > len(split.train_ids):
        raise InsufficientTrainRecordings(
            f"cannot hold out {n} of {len(split.train_ids)} train recordings"
        )
    if n == 0:
        return DatasetSplit(list(split.train_ids), [], list(split.test_ids))
    return DatasetSplit(
        train_ids=list(split.train_ids[:-n]),
        val_ids=list(split.train_ids[-n:]),
        test_ids=list(split.test_ids),
    )


def write_split(split: DatasetSplit, out_dir) -> None:
    """Write train/val/test manifests: newline-delimited recording ids."""
    os.makedirs(out_dir, exist_ok=True)
    for name, ids in [("train", split.train_ids), ("val", split.val_ids), ("test", split.test_ids)]:
        with open(os.path.join(out_dir, f"{name}.txt"), "w") as f:
            for rid in ids:
                f.write(rid + "\n")


def read_split(split_dir) -> DatasetSplit:
    def read(name):
        path = os.path.join(split_dir, f"{name}.txt")
        if not os.path.exists(path):
            return []
        with open(path) as f:
            return [line.strip() for line in f if line.strip()]

    return DatasetSplit(train_ids=read("train"), val_ids=read("val"), test_ids=read("test"))
