"""Encoders mapping raw model inputs to token sequences.

Inputs are (B, C, L) sample arrays for time series or (B, C, T, F)
log-magnitude images for spectrograms. Every encoder produces
(B, tokens, out_dim). Strided convolutions use same-padding, so each
layer maps length L to ceil(L / stride) exactly.
"""

from __future__ import annotations

import math

import torch
from torch import nn

from .predictors import make_predictor, predictor_dim

SAMPLES_PER_EPOCH = 3000
FRAMES_PER_EPOCH = 29
FREQ_BINS = 129


class SubWindowIndivisible(ValueError):
    """Epoch length is not divisible by the sub-epoch fraction."""


class SameConv1d(nn.Conv1d):
    """Conv1d with TensorFlow-style SAME padding: out = ceil(in / stride)."""

    def __init__(self, in_ch: int, out_ch: int, kernel: int, stride: int):
        super().__init__(in_ch, out_ch, kernel, stride=stride, padding=0)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        length = x.shape[-1]
        out_len = -(-length // self.stride[0])
        total = max(0, (out_len - 1) * self.stride[0] + self.kernel_size[0] - length)
        x = nn.functional.pad(x, (total // 2, total - total // 2))
        return super().forward(x)


class ConvEncoderTS(nn.Module):
    """Two strided conv layers for raw time series; downsamples by 4."""

    def __init__(self, in_channels: int, features: int = 128):
        super().__init__()
        self.out_dim = features
        self.conv1 = SameConv1d(in_channels, features, kernel=3, stride=2)
        self.conv2 = SameConv1d(features, features, kernel=3, stride=2)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        h = self.conv2(torch.relu(self.conv1(x)))
        return h.transpose(1, 2)


class ConvEncoderSpec(nn.Module):
    """Channel+frequency axes folded into features, two stride-1 convs."""

    def __init__(self, in_channels: int, features: int = 128, freq_bins: int = FREQ_BINS):
        super().__init__()
        self.out_dim = features
        self.conv1 = SameConv1d(in_channels * freq_bins, features, kernel=3, stride=1)
        self.conv2 = SameConv1d(features, features, kernel=3, stride=1)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        b, c, t, f = x.shape
        h = x.permute(0, 1, 3, 2).reshape(b, c * f, t)
        h = self.conv2(nn.functional.gelu(self.conv1(h)))
        return h.transpose(1, 2)


class IdentityEncoderTS(nn.Module):
    """Per-timestep linear map from channels to the model dimension."""

    def __init__(self, in_channels: int, out_dim: int):
        super().__init__()
        self.out_dim = out_dim
        self.proj = nn.Linear(in_channels, out_dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.proj(x.transpose(1, 2))


class IdentityEncoderSpec(nn.Module):
    """Channel+frequency axes folded, then a linear map per frame."""

    def __init__(self, in_channels: int, out_dim: int, freq_bins: int = FREQ_BINS):
        super().__init__()
        self.out_dim = out_dim
        self.proj = nn.Linear(in_channels * freq_bins, out_dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        b, c, t, f = x.shape
        return self.proj(x.permute(0, 2, 1, 3).reshape(b, t, c * f))


class StridedConvEncoder(nn.Module):
    """Four strided conv layers for raw time series; downsamples by 100."""

    def __init__(self, in_channels: int, features: int = 512):
        super().__init__()
        self.out_dim = features
        kernels, strides = (9, 9, 3, 3), (5, 5, 2, 2)
        layers = []
        prev = in_channels
        for i, (k, s) in enumerate(zip(kernels, strides)):
            if i:
                layers.append(nn.ReLU())
            layers.append(SameConv1d(prev, features, kernel=k, stride=s))
            prev = features
        self.net = nn.Sequential(*layers)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.net(x).transpose(1, 2)


_EPOCH_ENCODER_INNER = {
    "EES4": ("CNN", "S4"),
    "EENS4": ("NONE", "S4"),
    "EELSTM": ("CNN", "LSTM"),
    "EETF": ("CNN", "TF"),
}


class EpochEncoder(nn.Module):
    """A full single-epoch model reused as encoder with shared weights.

    The input splits into input_epochs * fraction non-overlapping
    sub-windows; each passes independently through the inner
    encoder+predictor and is average-pooled to one token.
    """

    def __init__(self, kind: str, modality: str, in_channels: int, fraction: int, arch):
        super().__init__()
        inner_enc, inner_pred = _EPOCH_ENCODER_INNER[kind]
        self.modality = modality
        self.fraction = fraction
        if modality == "ts":
            if SAMPLES_PER_EPOCH % fraction:
                raise SubWindowIndivisible(
                    f"{SAMPLES_PER_EPOCH} samples not divisible by fraction {fraction}"
                )
            self.window = SAMPLES_PER_EPOCH // fraction
        else:
            if FRAMES_PER_EPOCH % fraction:
                raise SubWindowIndivisible(
                    f"{FRAMES_PER_EPOCH} frames not divisible by fraction {fraction}"
                )
            self.window = FRAMES_PER_EPOCH // fraction

        dim = predictor_dim(inner_pred, arch)
        if inner_enc == "CNN":
            enc = ConvEncoderTS(in_channels, arch.cnn_features)
        else:
            enc = IdentityEncoderSpec(in_channels, dim)
        self.encoder = enc
        self.adapter = (
            nn.Linear(enc.out_dim, dim) if enc.out_dim != dim else nn.Identity()
        )
        self.predictor = make_predictor(inner_pred, arch)
        self.out_dim = dim

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if self.modality == "ts":
            b, c, length = x.shape
            n_win = length // self.window
            h = x.reshape(b, c, n_win, self.window).permute(0, 2, 1, 3)
            h = h.reshape(b * n_win, c, self.window)
        else:
            b, c, t, f = x.shape
            n_win = t // self.window
            h = x.reshape(b, c, n_win, self.window, f).permute(0, 2, 1, 3, 4)
            h = h.reshape(b * n_win, c, self.window, f)
        tokens = self.predictor(self.adapter(self.encoder(h)))
        pooled = tokens.mean(dim=1)
        return pooled.reshape(b, n_win, self.out_dim)


def make_encoder(spec, arch) -> nn.Module:
    """Instantiate the encoder named by a ModelSpec."""
    c = spec.num_channels
    if spec.encoder in _EPOCH_ENCODER_INNER:
        return EpochEncoder(spec.encoder, spec.modality, c, spec.sub_epoch_fraction, arch)
    if spec.encoder == "CNN":
        if spec.modality == "ts":
            return ConvEncoderTS(c, arch.cnn_features)
        return ConvEncoderSpec(c, arch.cnn_features)
    if spec.encoder == "NONE":
        dim = predictor_dim(spec.predictor, arch)
        if spec.modality == "ts":
            return IdentityEncoderTS(c, dim)
        return IdentityEncoderSpec(c, dim)
    if spec.encoder == "SCNN":
        return StridedConvEncoder(c, arch.scnn_features)
    raise ValueError(f"unknown encoder {spec.encoder!r}")
