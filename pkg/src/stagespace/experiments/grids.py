"""Enumerate the architecture grids as runnable experiment cells.

Every grid records both the generated cells and the combinations it
skipped (with a reason), so that generated + skipped always equals the
full cartesian product of its axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..models.spec import IncompatibleSpec, ModelSpec

PREDICTOR_AXIS = ("S4", "TF", "LSTM")


@dataclass
class SkippedCell:
    modality: str
    encoder: str
    predictor: str
    fraction: int
    reason: str


@dataclass
class ExperimentGrid:
    name: str
    cells: list[ModelSpec]
    skipped: list[SkippedCell] = field(default_factory=list)
    runs_per_cell: int = 1

    def cell_keys(self) -> list[str]:
        return [c.key() for c in self.cells]


def _build_cells(name, axes, num_channels, input_epochs, skip_rules, fraction=1,
                 runs_per_cell=1) -> ExperimentGrid:
    """axes: list of (modality, encoder_list). skip_rules maps
    (modality, encoder, predictor) -> reason."""
    cells, skipped = [], []
    for channels in num_channels:
        for modality, encoders in axes:
            for encoder in encoders:
                for predictor in PREDICTOR_AXIS:
                    reason = skip_rules.get((modality, encoder, predictor))
                    if reason is None and fraction > 1 and modality == "spec":
                        reason = (
                            "sub-epoch fractions are disabled for spectrograms: "
                            "29 frames per epoch are not divisible"
                        )
                    if reason is not None:
                        skipped.append(
                            SkippedCell(modality, encoder, predictor, fraction, reason)
                        )
                        continue
                    spec = ModelSpec(
                        modality=modality,
                        encoder=encoder,
                        predictor=predictor,
                        sub_epoch_fraction=fraction,
                        num_channels=channels,
                        input_epochs=input_epochs,
                    )
                    spec.validate()
                    cells.append(spec)
    return ExperimentGrid(name=name, cells=cells, skipped=skipped,
                          runs_per_cell=runs_per_cell)


def grid_single_epoch(num_channels=(1,), runs_per_cell: int = 1) -> ExperimentGrid:
    """E=1 stage: {CNN, NONE} x {S4, TF, LSTM} per modality, minus the
    raw-input NONE+TF cell (prohibitively slow: 3000 tokens of
    quadratic attention)."""
    axes = [("ts", ("CNN", "NONE")), ("spec", ("CNN", "NONE"))]
    skip = {
        ("ts", "NONE", "TF"): (
            "excluded: full-rate attention over 3000 tokens is computationally "
            "impractical at scale"
        )
    }
    return _build_cells("single-epoch", axes, num_channels, 1, skip,
                        runs_per_cell=runs_per_cell)


def grid_multi_epoch(num_channels=(1,), runs_per_cell: int = 1) -> ExperimentGrid:
    """E=15 stage: ts {EES4, SCNN} and spec {EENS4, CNN, NONE} crossed
    with the three predictors."""
    axes = [("ts", ("EES4", "SCNN")), ("spec", ("EENS4", "CNN", "NONE"))]
    return _build_cells("multi-epoch", axes, num_channels, 15, {},
                        runs_per_cell=runs_per_cell)


def grid_sub_epoch(num_channels=(1,), runs_per_cell: int = 1) -> ExperimentGrid:
    """Sub-epoch fractions {1, 1/2, 1/5, 1/10} for the two selected
    encoder-predictor pairs; spectrogram fractions above 1 are listed
    as skipped. The n=1 cells coincide with multi-epoch cells and
    deduplicate by spec key at run time."""
    cells, skipped = [], []
    for fraction in (1, 2, 5, 10):
        for modality, encoder, predictor in [("ts", "EES4", "S4"), ("spec", "EENS4", "TF")]:
            for channels in num_channels:
                if modality == "spec" and fraction > 1:
                    skipped.append(
                        SkippedCell(
                            modality, encoder, predictor, fraction,
                            "sub-epoch fractions are disabled for spectrograms: "
                            "29 frames per epoch are not divisible",
                        )
                    )
                    continue
                cells.append(
                    ModelSpec(modality, encoder, predictor, sub_epoch_fraction=fraction,
                              num_channels=channels, input_epochs=15)
                )
    return ExperimentGrid("sub-epoch", cells, skipped, runs_per_cell)


def grid_final(num_channels=(1,), runs_per_cell: int = 3) -> ExperimentGrid:
    """Final evaluation: the two flagship architectures, 3 runs each."""
    from ..models.spec import flagship_spec

    cells = [flagship_spec(m, c) for c in num_channels for m in ("ts", "spec")]
    return ExperimentGrid("final", cells, [], runs_per_cell)


GRID_BUILDERS = {
    "single-epoch": grid_single_epoch,
    "multi-epoch": grid_multi_epoch,
    "sub-epoch": grid_sub_epoch,
    "final": grid_final,
}
