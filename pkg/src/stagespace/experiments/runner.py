"""Grid orchestration: train -> evaluate -> compare, with resumability.

Every cell trains in its own run directory keyed by the model spec;
completed runs (an existing best checkpoint / prediction dump) are
reused, so re-invoking a partially failed grid only runs what is
missing. Reports are always recomputed from the prediction dumps on
disk, keeping every table cell traceable to its artifacts.
"""

from __future__ import annotations

import csv
import dataclasses
import os
import traceback
from dataclasses import dataclass, field

from ..evaluation import (
    MetricReport,
    compute_report,
    load_predictions,
    pairwise_significance,
    pool_runs,
    save_predictions,
    sliding_window_predict,
    summarize_runs,
)
from ..models.build import build_model
from ..models.spec import ArchConfig, ModelSpec
from ..training.checkpoint import load_checkpoint
from ..training.trainer import TrainConfig, train
from .grids import ExperimentGrid


class CellFailed(RuntimeError):
    pass


@dataclass
class RunnerConfig:
    arch: ArchConfig = field(default_factory=ArchConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    eval_split: str = "val"  # "val" during selection, "test" for finals
    n_bootstrap: int = 1000
    comparison_seed: int = 0


@dataclass
class CellResult:
    spec: ModelSpec
    run_dirs: list
    reports: list  # MetricReport per run
    summary: object = None  # UncertaintySummary when 3 runs
    best_in_block: bool = False
    error: str | None = None

    @property
    def macro_f1(self) -> float:
        if not self.reports:
            return float("nan")
        import numpy as np

        return float(np.median([r.macro_f1 for r in self.reports]))


@dataclass
class ResultsTable:
    grid_name: str
    rows: list  # CellResult
    skipped: list
    comparisons: list = field(default_factory=list)  # (key_a, key_b, verdict, fraction)

    def to_csv(self, path) -> None:
        fields = [
            "modality", "encoder", "predictor", "fraction", "channels", "epochs",
            "runs", "macro_f1", "f1_W", "f1_N1", "f1_N2", "f1_N3", "f1_REM",
            "accuracy", "macro_auroc", "summary", "best_in_block", "error", "run_dirs",
        ]
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fields)
            writer.writeheader()
            for row in self.rows:
                s = row.spec
                record = {
                    "modality": s.modality, "encoder": s.encoder,
                    "predictor": s.predictor, "fraction": s.sub_epoch_fraction,
                    "channels": s.num_channels, "epochs": s.input_epochs,
                    "runs": len(row.reports),
                    "summary": row.summary.formatted() if row.summary else "",
                    "best_in_block": row.best_in_block,
                    "error": row.error or "",
                    "run_dirs": ";".join(row.run_dirs),
                }
                if row.reports:
                    record.update(_median_report(row.reports).as_row())
                writer.writerow(record)

    def format_text(self) -> str:
        header = (
            f"{'ch':>3} {'mod':>5} {'encoder':>8} {'pred':>5} {'1/n':>4} "
            f"{'macroF1':>9} {'W':>6} {'N1':>6} {'N2':>6} {'N3':>6} {'REM':>6} "
            f"{'acc':>6} {'AUROC':>6}"
        )
        lines = [f"== grid: {self.grid_name} ==", header, "-" * len(header)]
        for row in self.rows:
            s = row.spec
            mark = "*" if row.best_in_block else " "
            if row.error:
                lines.append(
                    f"{s.num_channels:>3} {s.modality:>5} {s.encoder:>8} "
                    f"{s.predictor:>5} {s.sub_epoch_fraction:>4} FAILED: {row.error}"
                )
                continue
            r = _median_report(row.reports)
            f1s = " ".join(f"{v:6.3f}" for v in r.per_class_f1)
            macro = row.summary.formatted() if row.summary else f"{r.macro_f1:8.3f}"
            lines.append(
                f"{s.num_channels:>3} {s.modality:>5} {s.encoder:>8} {s.predictor:>5} "
                f"{s.sub_epoch_fraction:>4} {macro:>9}{mark} {f1s} "
                f"{r.accuracy:6.3f} {r.macro_auroc:6.3f}"
            )
        if self.skipped:
            lines.append("-- skipped --")
            for sk in self.skipped:
                lines.append(
                    f"   {sk.modality} {sk.encoder}+{sk.predictor} 1/{sk.fraction}: {sk.reason}"
                )
        if self.comparisons:
            lines.append("-- pairwise comparisons (best vs rest per block) --")
            for a, b, verdict, fraction in self.comparisons:
                lines.append(f"   {a} vs {b}: {verdict} ({fraction:.0%} significant pairs)")
        return "\n".join(lines)


def _median_report(reports: list) -> MetricReport:
    import numpy as np

    order = sorted(range(len(reports)), key=lambda i: reports[i].macro_f1)
    return reports[order[len(order) // 2]]


def _cell_features(features_by_modality, spec: ModelSpec, split_name: str):
    store = features_by_modality[spec.modality]
    sets = store[split_name]
    if sets and sets[0].data.shape[1] != spec.num_channels:
        raise CellFailed(
            f"features carry {sets[0].data.shape[1]} channels, "
            f"cell expects {spec.num_channels}"
        )
    return sets


def _run_single(spec: ModelSpec, features_by_modality, cfg: RunnerConfig,
                run_dir, run_seed: int, log=None):
    os.makedirs(run_dir, exist_ok=True)
    best_path = os.path.join(run_dir, "best.ckpt")
    if os.path.exists(best_path):
        model, _ = load_checkpoint(best_path)
    else:
        train_sets = _cell_features(features_by_modality, spec, "train")
        val_sets = _cell_features(features_by_modality, spec, "val")
        run_cfg = dataclasses.replace(cfg.train, seed=run_seed)
        model = build_model(spec, cfg.arch, seed=run_seed)
        train(model, train_sets, val_sets, run_cfg, out_dir=run_dir, log=log)

    preds_dir = os.path.join(run_dir, f"preds-{cfg.eval_split}")
    if not os.path.isdir(preds_dir) or not os.listdir(preds_dir):
        eval_sets = _cell_features(features_by_modality, spec, cfg.eval_split)
        matrices = [
            sliding_window_predict(model, fs, spec.input_epochs, cfg.train.micro_batch)
            for fs in eval_sets
        ]
        save_predictions(preds_dir, matrices)
    matrices = load_predictions(preds_dir)
    probs, labels = pool_runs(matrices)
    return compute_report(probs, labels), matrices


def run_grid(grid: ExperimentGrid, features_by_modality: dict, cfg: RunnerConfig,
             out_dir, log=print) -> ResultsTable:
    """Execute every cell of a grid; failures are recorded, not fatal.

    features_by_modality maps modality -> {"train": [...], "val": [...],
    "test": [...]} lists of per-recording feature sets.
    """
    os.makedirs(out_dir, exist_ok=True)
    rows: list[CellResult] = []
    predictions: dict[str, list] = {}
    for spec in grid.cells:
        cell_dir = os.path.join(out_dir, "cells", spec.key())
        run_dirs, reports, run_preds = [], [], []
        error = None
        try:
            for k in range(grid.runs_per_cell):
                run_dir = os.path.join(cell_dir, f"run{k}")
                run_seed = cfg.train.seed + k
                if log:
                    log(f"[{grid.name}] {spec.key()} run {k}")
                report, matrices = _run_single(
                    spec, features_by_modality, cfg, run_dir, run_seed, log=log
                )
                run_dirs.append(run_dir)
                reports.append(report)
                run_preds.append(matrices)
        except Exception as exc:  # noqa: BLE001 - grid must survive cell failures
            error = f"{type(exc).__name__}: {exc}"
            if log:
                log(f"[{grid.name}] {spec.key()} FAILED: {error}")
                log(traceback.format_exc())
        summary = None
        if error is None and grid.runs_per_cell == 3:
            summary = summarize_runs(
                run_preds, n=cfg.n_bootstrap, seed=cfg.comparison_seed
            )
        rows.append(
            CellResult(spec=spec, run_dirs=run_dirs, reports=reports,
                       summary=summary, error=error)
        )
        if error is None:
            predictions[spec.key()] = run_preds

    _mark_block_maxima(rows)
    comparisons = []
    if grid.runs_per_cell == 3:
        comparisons = _compare_best_vs_rest(rows, predictions, cfg)
    table = ResultsTable(grid.name, rows, list(grid.skipped), comparisons)
    table.to_csv(os.path.join(out_dir, "results.csv"))
    with open(os.path.join(out_dir, "results.txt"), "w") as f:
        f.write(table.format_text() + "\n")
    return table


def _mark_block_maxima(rows) -> None:
    blocks: dict[tuple, list] = {}
    for row in rows:
        if row.error:
            continue
        blocks.setdefault((row.spec.modality, row.spec.num_channels), []).append(row)
    for members in blocks.values():
        best = max(members, key=lambda r: r.macro_f1)
        best.best_in_block = True


def _compare_best_vs_rest(rows, predictions, cfg: RunnerConfig):
    comparisons = []
    blocks: dict[tuple, list] = {}
    for row in rows:
        if row.error:
            continue
        blocks.setdefault((row.spec.modality, row.spec.num_channels), []).append(row)
    for members in blocks.values():
        best = max(members, key=lambda r: r.macro_f1)
        for other in members:
            if other is best:
                continue
            outcome = pairwise_significance(
                predictions[best.spec.key()],
                predictions[other.spec.key()],
                n=cfg.n_bootstrap,
                seed=cfg.comparison_seed,
            )
            comparisons.append(
                (best.spec.key(), other.spec.key(), outcome.verdict,
                 outcome.fraction_significant)
            )
    return comparisons
