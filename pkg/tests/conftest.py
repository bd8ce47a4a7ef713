import numpy as np
import pytest
import torch

from stagespace.data import SyntheticConfig, generate_synthetic
from stagespace.features import ChannelConfig, segment_epochs
from stagespace.models import ArchConfig


@pytest.fixture(autouse=True)
def _seeded_torch():
    torch.manual_seed(0)


@pytest.fixture(scope="session")
def tiny_arch() -> ArchConfig:
    return ArchConfig(
        cnn_features=8,
        scnn_features=8,
        s4_dim=8,
        s4_state=4,
        s4_layers=1,
        s4_dropout=0.0,
        tf_dim=8,
        tf_heads=2,
        tf_ff=16,
        tf_layers=1,
        tf_dropout=0.0,
        lstm_hidden=4,
        lstm_layers=1,
    )


@pytest.fixture(scope="session")
def small_corpus():
    """Eight 40-epoch single-channel recordings, segmented."""
    cfg = SyntheticConfig(num_channels=1, num_epochs=40)
    cc = ChannelConfig("synth-1", ["ch0"])
    return [segment_epochs(generate_synthetic(cfg, seed=s), cc) for s in range(8)]


def rel_close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
