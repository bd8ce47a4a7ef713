"""Diagonal structured state space sequence layer.

Each of H model channels carries an independent linear state space
system x' = A x + B u, y = Re(C x) + D u with diagonal complex A.
Zero-order-hold discretization at step dt gives the discrete system

    x_k = exp(dt A) x_{k-1} + Btilde u_k,   Btilde = (exp(dt A) - 1) / A * B

whose convolution kernel is K[l] = sum_s Re(C_s exp(dt A_s)^l Btilde_s).
Training evaluates the layer as an FFT convolution with K; a stepwise
recurrence over the same parameters serves as the numerical oracle.

The nominal state dimension N counts real states; parameters are stored
as N//2 complex states (the remaining half is the implicit conjugate
partner, a constant factor absorbed into the trainable C).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import torch
from torch import nn


class UnstableState(ValueError):
    """Some Re(A) >= 0: the continuous-time system would diverge."""


@dataclass
class S4LayerParams:
    """Explicit per-channel diagonal SSM parameters (numpy, complex)."""

    a: np.ndarray  # (H, S) complex, Re < 0
    b: np.ndarray  # (H, S) complex
    c: np.ndarray  # (H, S) complex
    dt: np.ndarray  # (H,) positive
    d: np.ndarray  # (H,) real skip term

    def validate(self) -> None:
        if np.any(self.a.real >= 0):
            raise UnstableState("all Re(A) must be negative")
        if np.any(self.dt <= 0):
            raise ValueError("dt must be positive")


def s4_kernel(params: S4LayerParams, length: int) -> np.ndarray:
    """Convolution kernel K of shape (H, length) for the discrete system."""
    params.validate()
    dta = params.dt[:, None] * params.a  # (H, S)
    btilde = (np.exp(dta) - 1.0) / params.a * params.b
    powers = np.exp(dta[:, :, None] * np.arange(length))  # exp(l * dt * A)
    return np.einsum("hs,hsl->hl", params.c * btilde, powers).real


def ssm_recurrent(params: S4LayerParams, u: np.ndarray) -> np.ndarray:
    """Stepwise recurrent evaluation; the oracle for the conv path.

    u: (H, L) real input per channel; returns (H, L) output including
    the D skip term.
    """
    params.validate()
    abar = np.exp(params.dt[:, None] * params.a)
    btilde = (abar - 1.0) / params.a * params.b
    h, length = u.shape
    x = np.zeros_like(params.a)
    y = np.empty((h, length))
    for k in range(length):
        x = abar * x + btilde * u[:, k, None]
        y[:, k] = (params.c * x).sum(axis=1).real + params.d * u[:, k]
    return y


class DiagonalSSM(nn.Module):
    """One direction of the S4 mixing layer: H independent SSM channels."""

    def __init__(self, channels: int, state_dim: int = 64,
                 dt_min: float = 1e-3, dt_max: float = 1e-1):
        super().__init__()
        if state_dim < 2 or state_dim % 2:
            raise ValueError("state_dim must be an even number >= 2")
        self.channels = channels
        self.state_dim = state_dim
        stored = state_dim // 2

        self.log_a_real = nn.Parameter(torch.full((channels, stored), math.log(0.5)))
        self.a_imag = nn.Parameter(
            math.pi * torch.arange(stored, dtype=torch.float32).repeat(channels, 1)
        )
        self.b_real = nn.Parameter(torch.ones(channels, stored))
        self.b_imag = nn.Parameter(torch.zeros(channels, stored))
        c = torch.randn(channels, stored, 2) * 0.5**0.5
        self.c_real = nn.Parameter(c[..., 0])
        self.c_imag = nn.Parameter(c[..., 1])
        self.log_dt = nn.Parameter(
            torch.rand(channels) * (math.log(dt_max) - math.log(dt_min)) + math.log(dt_min)
        )
        self.d = nn.Parameter(torch.ones(channels))

    def _complex(self):
        a = torch.complex(-torch.exp(self.log_a_real), self.a_imag)
        b = torch.complex(self.b_real, self.b_imag)
        c = torch.complex(self.c_real, self.c_imag)
        return a, b, c, torch.exp(self.log_dt)

    def kernel(self, length: int, chunk: int = 0) -> torch.Tensor:
        """Differentiable (H, length) convolution kernel."""
        a, b, c, dt = self._complex()
        dta = dt[:, None] * a
        btilde = (torch.exp(dta) - 1.0) / a * b
        cb = c * btilde
        steps = torch.arange(length, dtype=torch.float32, device=dta.device)
        if chunk <= 0:
            # Cap the (H, S, L) intermediate near 2^23 elements.
            per_row = max(1, dta.shape[1] * length)
            chunk = max(1, (1 << 23) // per_row)
        outs = []
        for h0 in range(0, self.channels, chunk):
            powers = torch.exp(dta[h0 : h0 + chunk, :, None] * steps)
            outs.append(torch.einsum("hs,hsl->hl", cb[h0 : h0 + chunk], powers).real)
        return torch.cat(outs, dim=0)

    def forward(self, u: torch.Tensor) -> torch.Tensor:
        """Causal convolution; u and output are (B, H, L)."""
        length = u.shape[-1]
        k = self.kernel(length)
        n = 2 * length
        y = torch.fft.irfft(torch.fft.rfft(u, n=n) * torch.fft.rfft(k, n=n), n=n)[..., :length]
        return y + self.d[:, None] * u

    def step_scan(self, u: torch.Tensor) -> torch.Tensor:
        """Recurrent-mode evaluation of the same system; u is (B, H, L)."""
        a, b, c, dt = self._complex()
        abar = torch.exp(dt[:, None] * a)
        btilde = (abar - 1.0) / a * b
        batch = u.shape[0]
        x = torch.zeros(batch, *a.shape, dtype=abar.dtype, device=u.device)
        ys = []
        for k_step in range(u.shape[-1]):
            x = abar * x + btilde * u[:, :, k_step, None]
            ys.append((c * x).sum(-1).real + self.d * u[:, :, k_step])
        return torch.stack(ys, dim=-1)

    def params(self) -> S4LayerParams:
        """Detach current parameters into the explicit numpy form."""
        with torch.no_grad():
            a, b, c, dt = self._complex()
        return S4LayerParams(
            a=a.numpy().astype(np.complex128),
            b=b.numpy().astype(np.complex128),
            c=c.numpy().astype(np.complex128),
            dt=dt.numpy().astype(np.float64),
            d=self.d.detach().numpy().astype(np.float64),
        )

    def load_params(self, params: S4LayerParams) -> None:
        params.validate()
        if params.a.shape != (self.channels, self.state_dim // 2):
            raise ValueError("parameter shape mismatch")
        with torch.no_grad():
            self.log_a_real.copy_(torch.from_numpy(np.log(-params.a.real)).float())
            self.a_imag.copy_(torch.from_numpy(params.a.imag).float())
            self.b_real.copy_(torch.from_numpy(params.b.real).float())
            self.b_imag.copy_(torch.from_numpy(params.b.imag).float())
            self.c_real.copy_(torch.from_numpy(params.c.real).float())
            self.c_imag.copy_(torch.from_numpy(params.c.imag).float())
            self.log_dt.copy_(torch.from_numpy(np.log(params.dt)).float())
            self.d.copy_(torch.from_numpy(params.d).float())


class S4Layer(nn.Module):
    """Bidirectional S4 mixing layer on (B, T, H) token sequences.

    Two independent kernels: one convolves the sequence forward, the
    other the time-reversed sequence; outputs concatenate and project
    back to H. With bidirectional=False the forward branch is returned
    directly.
    """

    def __init__(self, dim: int, state_dim: int = 64, bidirectional: bool = True):
        super().__init__()
        self.bidirectional = bidirectional
        self.fwd = DiagonalSSM(dim, state_dim)
        if bidirectional:
            self.bwd = DiagonalSSM(dim, state_dim)
            self.out_proj = nn.Linear(2 * dim, dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        u = x.transpose(1, 2)  # (B, H, T)
        y_f = self.fwd(u)
        if not self.bidirectional:
            return y_f.transpose(1, 2)
        y_b = self.bwd(u.flip(-1)).flip(-1)
        y = torch.cat([y_f, y_b], dim=1).transpose(1, 2)
        return self.out_proj(y)


class S4Block(nn.Module):
    """S4 mixing + pointwise GELU + residual + LayerNorm (+ dropout)."""

    def __init__(self, dim: int, state_dim: int = 64, dropout: float = 0.2):
        super().__init__()
        self.mix = S4Layer(dim, state_dim)
        self.norm = nn.LayerNorm(dim)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        y = torch.nn.functional.gelu(self.mix(x))
        return self.dropout(self.norm(x + y))


class S4Stack(nn.Module):
    """Sequence-preserving stack of S4 blocks; (B, T, dim) -> (B, T, dim)."""

    def __init__(self, dim: int, state_dim: int = 64, layers: int = 4, dropout: float = 0.2):
        super().__init__()
        self.blocks = nn.ModuleList(
            [S4Block(dim, state_dim, dropout) for _ in range(layers)]
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        for block in self.blocks:
            x = block(x)
        return x


def random_params(rng: np.random.Generator, channels: int, state_dim: int) -> S4LayerParams:
    """Random stable parameters for oracle comparisons."""
    stored = state_dim // 2
    a = -rng.uniform(0.1, 1.5, (channels, stored)) + 1j * rng.normal(0, 3.0, (channels, stored))
    b = rng.normal(0, 1, (channels, stored)) + 1j * rng.normal(0, 1, (channels, stored))
    c = rng.normal(0, 1, (channels, stored)) + 1j * rng.normal(0, 1, (channels, stored))
    dt = np.exp(rng.uniform(np.log(1e-3), np.log(0.5), channels))
    d = rng.normal(0, 1, channels)
    return S4LayerParams(a=a, b=b, c=c, dt=dt, d=d)
