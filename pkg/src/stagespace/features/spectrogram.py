"""Log-magnitude STFT images of epoch tensors.

Every 30 s epoch at 100 Hz becomes a (29, 129) image per channel:
2 s Hamming-windowed frames hopped by 1 s, zero-padded to a 256-point
FFT, one-sided magnitude, log with a small additive floor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .epochs import EpochTensor


@dataclass
class STFTConfig:
    window_length: int = 200  # 2 s at 100 Hz
    hop: int = 100  # 1 s
    fft_size: int = 256
    log_floor: float = 1e-10

    def validate(self) -> None:
        if self.window_length > self.fft_size:
            raise ValueError("window_length must not exceed fft_size")
        if self.hop > self.window_length:
            raise ValueError("hop must not exceed window_length")

    @property
    def num_frames_per_epoch(self) -> int:
        from .epochs import EPOCH_SAMPLES

        return (EPOCH_SAMPLES - self.window_length) // self.hop + 1

    @property
    def num_bins(self) -> int:
        return self.fft_size // 2 + 1


@dataclass
class SpectrogramTensor:
    data: np.ndarray  # (num_epochs, num_channels, 29, 129) float32
    labels: np.ndarray
    recording_id: str = ""
    channel_names: tuple = ()
    config: STFTConfig | None = None


def hamming_window(n: int) -> np.ndarray:
    """Periodic-convention Hamming window: 0.54 - 0.46 cos(2 pi k / n)."""
    k = np.arange(n)
    return 0.54 - 0.46 * np.cos(2.0 * np.pi * k / n)


def frame_signal(x: np.ndarray, window_length: int, hop: int) -> np.ndarray:
    """(..., L) -> (..., frames, window_length) views at hop spacing."""
    n_frames = (x.shape[-1] - window_length) // hop + 1
    frames = np.lib.stride_tricks.sliding_window_view(x, window_length, axis=-1)
    return frames[..., ::hop, :][..., :n_frames, :]


def compute_spectrogram(x: EpochTensor, cfg: STFTConfig | None = None) -> SpectrogramTensor:
    cfg = cfg or STFTConfig()
    cfg.validate()
    frames = frame_signal(x.data.astype(np.float64), cfg.window_length, cfg.hop)
    win = hamming_window(cfg.window_length)
    spectrum = np.fft.rfft(frames * win, n=cfg.fft_size, axis=-1)
    image = np.log(np.abs(spectrum) + cfg.log_floor)
    return SpectrogramTensor(
        data=np.ascontiguousarray(image, dtype=np.float32),
        labels=x.labels.copy(),
        recording_id=x.recording_id,
        channel_names=x.channel_names,
        config=cfg,
    )
