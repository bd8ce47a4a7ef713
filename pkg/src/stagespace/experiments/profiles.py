"""Shipped channel and corpus profiles."""

from __future__ import annotations

from dataclasses import dataclass

from ..features.epochs import ChannelConfig

CHANNEL_PROFILES: dict[str, ChannelConfig] = {
    "sedf-multi": ChannelConfig("sedf-multi", ["EEG Fpz-Cz", "EEG Pz-Oz", "EOG horizontal"]),
    "sedf-single": ChannelConfig("sedf-single", ["EEG Fpz-Cz"]),
    "shhs-multi": ChannelConfig(
        "shhs-multi", ["EEG C4-A1", "EEG C3-A2", "EOG left", "EOG right", "EMG"]
    ),
    "shhs-single": ChannelConfig("shhs-single", ["EEG C4-A1"]),
    "synth-1": ChannelConfig("synth-1", ["ch0"]),
    "synth-3": ChannelConfig("synth-3", ["ch0", "ch1", "ch2"]),
    "synth-5": ChannelConfig("synth-5", ["ch0", "ch1", "ch2", "ch3", "ch4"]),
}


@dataclass(frozen=True)
class CorpusProfile:
    name: str
    ratios: tuple
    holdout_n: int  # recordings moved from train to val after splitting
    max_epochs: int


CORPUS_PROFILES: dict[str, CorpusProfile] = {
    # Medium corpus: 8:1:1 split, longer training.
    "sedf": CorpusProfile("sedf", (0.8, 0.1, 0.1), holdout_n=0, max_epochs=50),
    # Large corpus: 7:3 split with 100 train recordings held out for
    # validation, fewer passes (more iterations per pass).
    "shhs": CorpusProfile("shhs", (0.7, 0.0, 0.3), holdout_n=100, max_epochs=30),
    "synth": CorpusProfile("synth", (0.8, 0.1, 0.1), holdout_n=0, max_epochs=20),
}


def channel_profile(name: str) -> ChannelConfig:
    try:
        return CHANNEL_PROFILES[name]
    except KeyError:
        raise KeyError(
            f"unknown channel profile {name!r}; available: {sorted(CHANNEL_PROFILES)}"
        ) from None
