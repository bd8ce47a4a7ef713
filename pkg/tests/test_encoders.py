import numpy as np
import pytest
import torch

from stagespace.models import (
    ConvEncoderSpec,
    ConvEncoderTS,
    EpochEncoder,
    IdentityEncoderSpec,
    IdentityEncoderTS,
    StridedConvEncoder,
    SubWindowIndivisible,
)


def test_cnn_ts_token_counts():
    enc = ConvEncoderTS(1, features=8)
    assert enc(torch.randn(2, 1, 3000)).shape == (2, 750, 8)
    assert enc(torch.randn(2, 1, 4)).shape == (2, 1, 8)  # ceil(ceil(4/2)/2)
    assert enc(torch.randn(2, 1, 45000)).shape == (2, 11250, 8)


def test_cnn_ts_zero_input_zero_biases():
    enc = ConvEncoderTS(2, features=4)
    with torch.no_grad():
        enc.conv1.bias.zero_()
        enc.conv2.bias.zero_()
    out = enc(torch.zeros(1, 2, 100))
    assert torch.all(out == 0)


def test_cnn_spec_token_counts():
    enc = ConvEncoderSpec(1, features=8)
    assert enc(torch.randn(2, 1, 29, 129)).shape == (2, 29, 8)
    enc3 = ConvEncoderSpec(3, features=8)
    assert enc3(torch.randn(2, 3, 435, 129)).shape == (2, 435, 8)


def test_cnn_spec_single_channel_reduces_to_base_design():
    # With one channel the reshape is a no-op: conv input dim equals the
    # frequency axis, matching the single-channel architecture exactly.
    enc = ConvEncoderSpec(1, features=8)
    assert enc.conv1.in_channels == 129


def test_identity_ts_counts_and_identity_init():
    enc = IdentityEncoderTS(3, out_dim=3)
    with torch.no_grad():
        enc.proj.weight.copy_(torch.eye(3))
        enc.proj.bias.zero_()
    x = torch.randn(2, 3, 50)
    out = enc(x)
    assert out.shape == (2, 50, 3)
    np.testing.assert_allclose(out.numpy(), x.transpose(1, 2).numpy(), atol=1e-7)
    assert IdentityEncoderTS(1, 16)(torch.randn(1, 1, 3000)).shape == (1, 3000, 16)


def test_identity_spec_counts():
    enc = IdentityEncoderSpec(3, out_dim=16)
    assert enc(torch.randn(2, 3, 435, 129)).shape == (2, 435, 16)


def test_scnn_downsampling_factor():
    enc = StridedConvEncoder(1, features=8)
    assert enc(torch.randn(1, 1, 45000)).shape == (1, 450, 8)
    assert enc(torch.randn(1, 1, 3000)).shape == (1, 30, 8)
    assert enc(torch.randn(1, 1, 100)).shape == (1, 1, 8)  # 100->20->4->2->1


def test_epoch_encoder_token_counts(tiny_arch):
    enc = EpochEncoder("EES4", "ts", 1, fraction=1, arch=tiny_arch)
    assert enc(torch.randn(2, 1, 15 * 3000)).shape == (2, 15, tiny_arch.s4_dim)
    enc5 = EpochEncoder("EES4", "ts", 1, fraction=5, arch=tiny_arch)
    assert enc5(torch.randn(2, 1, 15 * 3000)).shape == (2, 75, tiny_arch.s4_dim)
    spec_enc = EpochEncoder("EENS4", "spec", 2, fraction=1, arch=tiny_arch)
    assert spec_enc(torch.randn(2, 2, 15 * 29, 129)).shape == (2, 15, tiny_arch.s4_dim)


def test_epoch_encoder_permutation_equivariance(tiny_arch):
    torch.manual_seed(0)
    enc = EpochEncoder("EES4", "ts", 1, fraction=1, arch=tiny_arch).eval()
    x = torch.randn(1, 1, 4 * 3000)
    perm = [2, 0, 3, 1]
    x_perm = x.reshape(1, 1, 4, 3000)[:, :, perm].reshape(1, 1, 4 * 3000)
    with torch.no_grad():
        tokens = enc(x)
        tokens_perm = enc(x_perm)
    np.testing.assert_allclose(
        tokens_perm.numpy(), tokens[:, perm].numpy(), atol=1e-5
    )


def test_epoch_encoder_locality(tiny_arch):
    # Zeroing epoch j's input changes only token group j.
    torch.manual_seed(0)
    enc = EpochEncoder("EES4", "ts", 1, fraction=2, arch=tiny_arch).eval()
    x = torch.randn(1, 1, 3 * 3000)
    x_zeroed = x.clone()
    x_zeroed[:, :, 3000:6000] = 0
    with torch.no_grad():
        t_full = enc(x)
        t_zero = enc(x_zeroed)
    np.testing.assert_allclose(t_full[:, :2].numpy(), t_zero[:, :2].numpy(), atol=1e-6)
    np.testing.assert_allclose(t_full[:, 4:].numpy(), t_zero[:, 4:].numpy(), atol=1e-6)
    assert not np.allclose(t_full[:, 2:4].numpy(), t_zero[:, 2:4].numpy(), atol=1e-3)


def test_spec_fractions_indivisible(tiny_arch):
    with pytest.raises(SubWindowIndivisible):
        EpochEncoder("EENS4", "spec", 1, fraction=5, arch=tiny_arch)
