import numpy as np
import pytest
import torch

from stagespace.models import (
    ArchConfig,
    IncompatibleSpec,
    IndivisibleTokens,
    ModelSpec,
    PredictionHead,
    build_model,
    count_parameters,
    flagship_spec,
    spec_from_text,
    spec_to_text,
)


def test_head_pooling_groups():
    head = PredictionHead(dim=4, num_epochs=15)
    tokens = torch.randn(2, 450, 4)
    assert head(tokens).shape == (2, 15, 5)
    single = PredictionHead(dim=4, num_epochs=1)
    assert single(torch.randn(2, 37, 4)).shape == (2, 1, 5)


def test_head_constant_tokens_pool_to_constant():
    head = PredictionHead(dim=3, num_epochs=2)
    token = torch.tensor([1.0, -2.0, 0.5])
    tokens = token.expand(1, 8, 3).clone()
    pooled = tokens.reshape(1, 2, 4, 3).mean(dim=2)
    with torch.no_grad():
        out = head(tokens)
        direct = head.linear(pooled)
    np.testing.assert_allclose(out.numpy(), direct.numpy(), atol=1e-7)


def test_head_rejects_indivisible():
    head = PredictionHead(dim=4, num_epochs=15)
    with pytest.raises(IndivisibleTokens):
        head(torch.randn(1, 451, 4))


def test_incompatible_specs_rejected():
    for bad in [
        ModelSpec("spec", "SCNN", "S4"),
        ModelSpec("ts", "EENS4", "S4"),
        ModelSpec("spec", "EES4", "TF"),
        ModelSpec("ts", "CNN", "S4", sub_epoch_fraction=5),
        ModelSpec("ts", "CNN", "S4", num_classes=4),
        ModelSpec("ts", "CNN", "XX"),
    ]:
        with pytest.raises(IncompatibleSpec):
            bad.validate()


def test_flagship_specs():
    ts = flagship_spec("ts")
    assert (ts.encoder, ts.predictor, ts.sub_epoch_fraction) == ("EES4", "S4", 5)
    sp = flagship_spec("spec")
    assert (sp.encoder, sp.predictor, sp.sub_epoch_fraction) == ("EENS4", "TF", 1)


def test_spec_text_round_trip():
    spec = ModelSpec("spec", "EENS4", "TF", 1, 3, 15)
    assert spec_from_text(spec_to_text(spec)) == spec
    parsed = spec_from_text("modality=ts\nencoder=CNN\npredictor=S4\n")
    assert parsed == ModelSpec("ts", "CNN", "S4")


def test_single_linear_param_count():
    layer = torch.nn.Linear(512, 5)
    assert count_parameters(layer) == 512 * 5 + 5


def test_parameter_counts_at_full_dims():
    ts = build_model(flagship_spec("ts", 1))
    spec = build_model(flagship_spec("spec", 1))
    assert abs(count_parameters(ts) - 4.90e6) <= 0.30 * 4.90e6
    assert abs(count_parameters(spec) - 5.70e6) <= 0.30 * 5.70e6


def test_forward_determinism(tiny_arch):
    model = build_model(ModelSpec("ts", "EES4", "S4", 5, 1, 2), tiny_arch, seed=3).eval()
    x = torch.randn(2, 1, 6000)
    with torch.no_grad():
        y1 = model(x)
        y2 = model(x)
    assert torch.equal(y1, y2)


def test_adapter_inserted_only_when_needed():
    arch = ArchConfig(cnn_features=6, s4_dim=8, s4_state=4, s4_layers=1)
    model = build_model(ModelSpec("ts", "CNN", "S4", 1, 1, 1), arch)
    assert isinstance(model.adapter, torch.nn.Linear)
    none_model = build_model(ModelSpec("ts", "NONE", "S4", 1, 1, 1), arch)
    assert isinstance(none_model.adapter, torch.nn.Identity)
