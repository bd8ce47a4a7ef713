"""Points in the architecture design space and their validity rules."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

MODALITIES = ("ts", "spec")
ENCODERS = ("CNN", "NONE", "SCNN", "EES4", "EENS4", "EELSTM", "EETF")
PREDICTORS = ("S4", "TF", "LSTM")
FRACTIONS = (1, 2, 5, 10)

# Encoders built around a full single-epoch model.
EPOCH_ENCODERS = ("EES4", "EENS4", "EELSTM", "EETF")
_TS_ONLY = ("SCNN", "EES4", "EELSTM", "EETF")
_SPEC_ONLY = ("EENS4",)


class IncompatibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    modality: str
    encoder: str
    predictor: str
    sub_epoch_fraction: int = 1
    num_channels: int = 1
    input_epochs: int = 1
    num_classes: int = 5

    def validate(self) -> None:
        if self.modality not in MODALITIES:
            raise IncompatibleSpec(f"unknown modality {self.modality!r}")
        if self.encoder not in ENCODERS:
            raise IncompatibleSpec(f"unknown encoder {self.encoder!r}")
        if self.predictor not in PREDICTORS:
            raise IncompatibleSpec(f"unknown predictor {self.predictor!r}")
        if self.encoder in _TS_ONLY and self.modality != "ts":
            raise IncompatibleSpec(f"encoder {self.encoder} requires modality=ts")
        if self.encoder in _SPEC_ONLY and self.modality != "spec":
            raise IncompatibleSpec(f"encoder {self.encoder} requires modality=spec")
        if self.sub_epoch_fraction not in FRACTIONS:
            raise IncompatibleSpec(f"sub-epoch fraction must be one of {FRACTIONS}")
        if self.sub_epoch_fraction > 1 and self.encoder not in EPOCH_ENCODERS:
            raise IncompatibleSpec("sub-epoch fractions require an epoch encoder")
        if self.num_channels < 1 or self.input_epochs < 1:
            raise IncompatibleSpec("channel count and input epochs must be >= 1")
        if self.num_classes != 5:
            raise IncompatibleSpec("only the 5-class scheme is supported")

    def key(self) -> str:
        """Stable identifier used for run directories and deduplication."""
        return (
            f"{self.modality}-{self.encoder}-{self.predictor}"
            f"-n{self.sub_epoch_fraction}-c{self.num_channels}-e{self.input_epochs}"
        )


@dataclass(frozen=True)
class ArchConfig:
    """Width/depth knobs; defaults are the full-scale reference values.

    Scaled-down configurations (for tests and desk-scale runs) change
    these without touching the ModelSpec axes.
    """

    cnn_features: int = 128
    scnn_features: int = 512
    s4_dim: int = 512
    s4_state: int = 64
    s4_layers: int = 4
    s4_dropout: float = 0.2
    tf_dim: int = 256
    tf_heads: int = 8
    tf_ff: int = 1024
    tf_layers: int = 4
    tf_dropout: float = 0.1
    lstm_hidden: int = 256  # per direction; outputs concatenate to 512
    lstm_layers: int = 2

    def scaled(self, model_dim: int) -> "ArchConfig":
        """Shrink every width proportionally to model_dim/512."""
        f = model_dim / 512.0
        return replace(
            self,
            cnn_features=max(4, int(round(128 * f))),
            scnn_features=max(4, int(round(512 * f))),
            s4_dim=model_dim,
            s4_state=max(2, int(round(64 * f / 2)) * 2),
            tf_dim=max(8, int(round(256 * f / 8)) * 8),
            tf_ff=max(16, int(round(1024 * f))),
            lstm_hidden=max(4, int(round(256 * f))),
        )


def spec_to_text(spec: ModelSpec) -> str:
    lines = [f"{k}={v}" for k, v in asdict(spec).items()]
    return "\n".join(lines) + "\n"


def spec_from_text(text: str) -> ModelSpec:
    values: dict = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    kwargs = {
        "modality": values["modality"],
        "encoder": values["encoder"],
        "predictor": values["predictor"],
        "sub_epoch_fraction": int(values.get("sub_epoch_fraction", 1)),
        "num_channels": int(values.get("num_channels", 1)),
        "input_epochs": int(values.get("input_epochs", 1)),
        "num_classes": int(values.get("num_classes", 5)),
    }
    spec = ModelSpec(**kwargs)
    spec.validate()
    return spec


def flagship_spec(modality: str, num_channels: int = 1) -> ModelSpec:
    """The selected reference architecture per input modality."""
    if modality == "ts":
        return ModelSpec("ts", "EES4", "S4", sub_epoch_fraction=5,
                         num_channels=num_channels, input_epochs=15)
    if modality == "spec":
        return ModelSpec("spec", "EENS4", "TF", sub_epoch_fraction=1,
                         num_channels=num_channels, input_epochs=15)
    raise IncompatibleSpec(f"unknown modality {modality!r}")
