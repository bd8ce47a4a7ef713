"""Polyphase sample-rate conversion with windowed-sinc anti-aliasing.

The low-pass cutoff sits at 0.9x the Nyquist frequency of whichever
rate is lower, so downsampling to 100 Hz keeps content below 45 Hz
essentially untouched. Output length is round(n * dst / src).
"""

from __future__ import annotations

from math import gcd

import numpy as np
from scipy import signal as sps


class EmptySignal(ValueError):
    pass


def resample(x: np.ndarray, src_rate: float, dst_rate: float) -> np.ndarray:
    """Resample a 1-d signal from src_rate to dst_rate."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise EmptySignal("cannot resample an empty signal")
    if src_rate <= 0 or dst_rate <= 0:
        raise ValueError("sample rates must be positive")
    if src_rate == dst_rate:
        return x.copy()

    # Rational factors; rates assumed representable as integers after
    # scaling (EDF rates are rational with small denominators).
    scale = 1
    while (src_rate * scale) % 1 or (dst_rate * scale) % 1:
        scale *= 10
        if scale > 10**6:
            raise ValueError(f"rates {src_rate}/{dst_rate} are not rational enough")
    src_i, dst_i = int(src_rate * scale), int(dst_rate * scale)
    g = gcd(src_i, dst_i)
    up, down = dst_i // g, src_i // g

    max_rate = max(up, down)
    half_len = 10 * max_rate
    taps = sps.firwin(2 * half_len + 1, 0.9 / max_rate, window=("kaiser", 8.0))
    y = sps.resample_poly(x, up, down, window=taps)

    n_out = int(round(len(x) * dst_rate / src_rate))
    return y[:n_out]
