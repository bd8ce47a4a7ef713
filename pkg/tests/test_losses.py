import math

import numpy as np
import pytest
import torch

from stagespace.training import focal_loss


def test_gamma_zero_equals_cross_entropy():
    torch.manual_seed(0)
    logits = torch.randn(4, 15, 5, dtype=torch.float64)
    targets = torch.randint(0, 5, (4, 15))
    ce = torch.nn.functional.cross_entropy(
        logits.reshape(-1, 5), targets.reshape(-1)
    )
    fl = focal_loss(logits, targets, gamma=0.0)
    assert abs(float(fl) - float(ce)) < 1e-7


def test_closed_form_single_position():
    # p_t = 0.9, gamma = 2: loss = -(0.1)^2 * ln(0.9)
    p = torch.tensor([[0.9, 0.025, 0.025, 0.025, 0.025]], dtype=torch.float64)
    logits = torch.log(p)
    target = torch.tensor([0])
    expected = -((0.1) ** 2) * math.log(0.9)
    assert abs(float(focal_loss(logits, target, gamma=2.0)) - expected) < 1e-6
    assert expected == pytest.approx(1.054e-3, abs=5e-7)


def test_certain_predictions_give_zero_loss():
    logits = torch.full((2, 3, 5), -40.0)
    targets = torch.tensor([[0, 1, 2], [3, 4, 0]])
    for b in range(2):
        for e in range(3):
            logits[b, e, targets[b, e]] = 40.0
    assert float(focal_loss(logits, targets, gamma=2.0)) == pytest.approx(0.0, abs=1e-9)


def test_focal_strictly_below_cross_entropy_when_uncertain():
    torch.manual_seed(1)
    logits = torch.randn(8, 4, 5, dtype=torch.float64)
    targets = torch.randint(0, 5, (8, 4))
    fl = float(focal_loss(logits, targets, gamma=2.0))
    ce = float(focal_loss(logits, targets, gamma=0.0))
    assert 0.0 <= fl < ce


def test_probability_floor_keeps_loss_finite():
    logits = torch.tensor([[1000.0, -1000.0, 0.0, 0.0, 0.0]])
    value = float(focal_loss(logits, torch.tensor([1]), gamma=2.0))
    assert math.isfinite(value)


def test_negative_gamma_rejected():
    with pytest.raises(ValueError):
        focal_loss(torch.zeros(1, 5), torch.tensor([0]), gamma=-1.0)
