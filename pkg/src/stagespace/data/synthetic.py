"""Synthetic PSG corpus with stage-dependent spectral structure.

Stage sequences follow a sticky first-order Markov chain whose
stationary distribution equals the configured priors. Each stage
imprints a distinct oscillation on every channel:

    W   : 8-12 Hz, strong
    N1  : 4-7 Hz, medium amplitude
    N2  : 4-7 Hz base plus 12-14 Hz spindle bursts
    N3  : 0.5-2 Hz, high amplitude
    REM : 4-7 Hz, low amplitude

N1 and REM share a band and overlap in amplitude, so single-epoch
classification of those two is deliberately noisy while the sticky
chain makes temporal context informative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .edf import ChannelSignal, RawRecording
from .splits import rng_from_seed
from .stages import RawStageLabel

_STAGES = [RawStageLabel.W, RawStageLabel.N1, RawStageLabel.N2, RawStageLabel.N3, RawStageLabel.REM]


class InvalidConfig(ValueError):
    pass


@dataclass
class SyntheticConfig:
    num_channels: int = 3
    num_epochs: int = 100
    sample_rate: float = 100.0
    priors: tuple = (0.2, 0.2, 0.2, 0.2, 0.2)
    stickiness: float = 0.8  # prob of keeping the current stage verbatim
    noise_sigma: float = 1.0
    artifact_fraction: float = 0.0  # fraction of epochs relabeled MOVEMENT

    def validate(self) -> None:
        if self.num_channels < 1 or self.num_epochs < 1:
            raise InvalidConfig("channel and epoch counts must be >= 1")
        if self.sample_rate <= 0:
            raise InvalidConfig("sample rate must be positive")
        if len(self.priors) != 5 or any(p < 0 for p in self.priors):
            raise InvalidConfig("priors must be 5 non-negative values")
        if abs(sum(self.priors) - 1.0) > 1e-9:
            raise InvalidConfig("priors must sum to 1")
        if not 0.7 <= self.stickiness < 1.0:
            raise InvalidConfig("stickiness must be in [0.7, 1)")
        if not 0.0 <= self.artifact_fraction < 1.0:
            raise InvalidConfig("artifact_fraction must be in [0, 1)")


def sample_stage_sequence(cfg: SyntheticConfig, rng: np.random.Generator) -> np.ndarray:
    """Markov stage indices; stationary distribution equals cfg.priors."""
    priors = np.asarray(cfg.priors, dtype=np.float64)
    seq = np.empty(cfg.num_epochs, dtype=np.int64)
    seq[0] = rng.choice(5, p=priors)
    for i in range(1, cfg.num_epochs):
        if rng.random() < cfg.stickiness:
            seq[i] = seq[i - 1]
        else:
            seq[i] = rng.choice(5, p=priors)
    return seq


def _tone(n: int, rate: float, freq: float, amp: float, phase: float) -> np.ndarray:
    t = np.arange(n) / rate
    return amp * np.sin(2.0 * np.pi * freq * t + phase)


def _epoch_signal(stage: int, n: int, rate: float, rng: np.random.Generator,
                  num_channels: int, noise_sigma: float) -> np.ndarray:
    """One epoch of shape (channels, n). Stage-level draws (frequency,
    amplitude, burst positions) are shared across channels; phases and
    noise are per-channel."""
    out = np.zeros((num_channels, n))
    if stage == 0:  # W
        f, a = rng.uniform(8.0, 12.0), rng.uniform(1.6, 2.4)
        for c in range(num_channels):
            out[c] = _tone(n, rate, f, a, rng.uniform(0, 2 * np.pi))
    elif stage == 1:  # N1
        f, a = rng.uniform(4.0, 7.0), rng.uniform(0.7, 1.6)
        for c in range(num_channels):
            out[c] = _tone(n, rate, f, a, rng.uniform(0, 2 * np.pi))
    elif stage == 2:  # N2: theta base + spindle bursts
        f, a = rng.uniform(4.0, 7.0), rng.uniform(1.0, 1.4)
        burst_len = int(rate)  # 1 s
        starts = rng.integers(0, n - burst_len, size=2)
        bf = rng.uniform(12.0, 14.0)
        window = np.hanning(burst_len)
        for c in range(num_channels):
            out[c] = _tone(n, rate, f, a, rng.uniform(0, 2 * np.pi))
            for s in starts:
                out[c, s : s + burst_len] += 3.0 * window * _tone(
                    burst_len, rate, bf, 1.0, rng.uniform(0, 2 * np.pi)
                )
    elif stage == 3:  # N3
        f, a = rng.uniform(0.5, 2.0), rng.uniform(5.0, 7.0)
        for c in range(num_channels):
            out[c] = _tone(n, rate, f, a, rng.uniform(0, 2 * np.pi))
    else:  # REM
        f, a = rng.uniform(4.0, 7.0), rng.uniform(0.4, 1.2)
        for c in range(num_channels):
            out[c] = _tone(n, rate, f, a, rng.uniform(0, 2 * np.pi))
    out += rng.normal(0.0, noise_sigma, size=out.shape)
    return out


def generate_synthetic(config: SyntheticConfig, seed: int) -> RawRecording:
    """Generate one recording; bit-identical for a fixed (config, seed)."""
    config.validate()
    rng = rng_from_seed(seed, stream=1)

    stages = sample_stage_sequence(config, rng)
    n = int(round(config.sample_rate * 30))
    signals = np.empty((config.num_channels, config.num_epochs * n))
    hypnogram: list[RawStageLabel] = []
    for i, stage in enumerate(stages):
        epoch = _epoch_signal(
            int(stage), n, config.sample_rate, rng, config.num_channels, config.noise_sigma
        )
        label = _STAGES[int(stage)]
        if config.artifact_fraction > 0 and rng.random() < config.artifact_fraction:
            epoch = rng.normal(0.0, 8.0, size=epoch.shape)  # artifact burst
            label = RawStageLabel.MOVEMENT
        signals[:, i * n : (i + 1) * n] = epoch
        hypnogram.append(label)

    channels = [
        ChannelSignal(
            name=f"ch{c}",
            sample_rate=config.sample_rate,
            physical_unit="uV",
            physical=signals[c],
            phys_min=-50.0,
            phys_max=50.0,
        )
        for c in range(config.num_channels)
    ]
    rec = RawRecording(
        recording_id=f"synth-{seed:06d}",
        patient_id=f"synth-{seed:06d}",
        channels=channels,
        hypnogram=hypnogram,
    )
    rec.validate()
    return rec
