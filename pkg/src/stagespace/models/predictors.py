"""Sequence predictors: S4 stack, transformer, bidirectional LSTM.

All predictors are sequence-preserving maps (B, T, dim) -> (B, T, dim).
"""

from __future__ import annotations

import math

import torch
from torch import nn

from .s4 import S4Stack


def sinusoidal_positions(length: int, dim: int, device=None) -> torch.Tensor:
    """Absolute sinusoidal position encodings, (length, dim)."""
    if dim % 2:
        raise ValueError("position encoding dimension must be even")
    pos = torch.arange(length, dtype=torch.float32, device=device)[:, None]
    idx = torch.arange(0, dim, 2, dtype=torch.float32, device=device)
    angles = pos / torch.pow(10000.0, idx / dim)
    pe = torch.zeros(length, dim, device=device)
    pe[:, 0::2] = torch.sin(angles)
    pe[:, 1::2] = torch.cos(angles)
    return pe


class TransformerBlock(nn.Module):
    """Pre-norm self-attention block with a GELU feed-forward."""

    def __init__(self, dim: int, heads: int, ff_dim: int, dropout: float):
        super().__init__()
        self.norm1 = nn.LayerNorm(dim)
        self.attn = nn.MultiheadAttention(dim, heads, batch_first=True)
        self.norm2 = nn.LayerNorm(dim)
        self.ff = nn.Sequential(
            nn.Linear(dim, ff_dim), nn.GELU(), nn.Linear(ff_dim, dim)
        )
        self.dropout = nn.Dropout(dropout)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        h = self.norm1(x)
        x = x + self.attn(h, h, h, need_weights=False)[0]
        x = x + self.ff(self.norm2(x))
        return self.dropout(x)


class TransformerPredictor(nn.Module):
    def __init__(self, dim: int = 256, heads: int = 8, ff_dim: int = 1024,
                 layers: int = 4, dropout: float = 0.1, use_positions: bool = True):
        super().__init__()
        self.dim = dim
        self.use_positions = use_positions
        self.blocks = nn.ModuleList(
            [TransformerBlock(dim, heads, ff_dim, dropout) for _ in range(layers)]
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if self.use_positions:
            x = x + sinusoidal_positions(x.shape[1], self.dim, x.device)
        for block in self.blocks:
            x = block(x)
        return x


class LSTMPredictor(nn.Module):
    """Bidirectional LSTM; forward/backward halves concatenate to dim."""

    def __init__(self, hidden: int = 256, layers: int = 2):
        super().__init__()
        self.dim = 2 * hidden
        self.lstm = nn.LSTM(
            input_size=self.dim,
            hidden_size=hidden,
            num_layers=layers,
            bidirectional=True,
            batch_first=True,
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.lstm(x)[0]


def make_predictor(kind: str, arch) -> nn.Module:
    """Instantiate a predictor by its design-space name."""
    if kind == "S4":
        return S4Stack(arch.s4_dim, arch.s4_state, arch.s4_layers, arch.s4_dropout)
    if kind == "TF":
        return TransformerPredictor(
            arch.tf_dim, arch.tf_heads, arch.tf_ff, arch.tf_layers, arch.tf_dropout
        )
    if kind == "LSTM":
        return LSTMPredictor(arch.lstm_hidden, arch.lstm_layers)
    raise ValueError(f"unknown predictor kind {kind!r}")


def predictor_dim(kind: str, arch) -> int:
    return {"S4": arch.s4_dim, "TF": arch.tf_dim, "LSTM": 2 * arch.lstm_hidden}[kind]
