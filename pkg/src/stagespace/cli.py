"""Command-line entry point.

Verbs: synth, prepare, featurize, train, evaluate, compare,
grid {single-epoch|multi-epoch|sub-epoch|final}, report.

A corpus directory holds one <id>.edf plus one <id>.hyp per recording
(the .hyp file lists one stage token per line). `prepare` writes split
manifests, `featurize` caches model-ready tensors per modality, and
the remaining verbs operate on those artifacts.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from .data import (
    SyntheticConfig,
    generate_synthetic,
    hold_out_validation,
    make_splits,
    parse_edf,
    read_hypnogram,
    read_split,
    resample,
    write_edf,
    write_hypnogram,
    write_split,
)
from .evaluation import (
    bootstrap_diff,
    compute_report,
    load_predictions,
    pairwise_significance,
    pool_runs,
    save_predictions,
    sliding_window_predict,
)
from .experiments import GRID_BUILDERS, RunnerConfig, channel_profile, run_grid
from .features import (
    ChannelConfig,
    TARGET_RATE,
    compute_spectrogram,
    feature_path,
    load_split_features,
    save_features,
    segment_epochs,
)
from .models import ArchConfig, build_model, count_parameters, spec_from_text
from .training import TrainConfig, load_checkpoint, train


def _corpus_ids(corpus_dir) -> list[str]:
    ids = sorted(
        name[:-4] for name in os.listdir(corpus_dir) if name.endswith(".edf")
    )
    if not ids:
        raise SystemExit(f"no .edf recordings found in {corpus_dir}")
    return ids


def _load_recording(corpus_dir, rid):
    rec = parse_edf(os.path.join(corpus_dir, rid + ".edf"))
    hyp_path = os.path.join(corpus_dir, rid + ".hyp")
    if os.path.exists(hyp_path):
        rec.hypnogram = read_hypnogram(hyp_path)
    return rec


def cmd_synth(args) -> None:
    os.makedirs(args.out, exist_ok=True)
    cfg = SyntheticConfig(
        num_channels=args.channels,
        num_epochs=args.epochs,
        artifact_fraction=args.artifact_fraction,
    )
    for i in range(args.recordings):
        rec = generate_synthetic(cfg, seed=args.seed + i)
        write_edf(rec, os.path.join(args.out, rec.recording_id + ".edf"))
        write_hypnogram(os.path.join(args.out, rec.recording_id + ".hyp"), rec.hypnogram)
    print(f"wrote {args.recordings} recordings to {args.out}")


def cmd_prepare(args) -> None:
    ids = _corpus_ids(args.corpus)
    ratios = tuple(float(r) for r in args.ratios.split(","))
    split = make_splits(ids, ratios, args.seed)
    if args.holdout:
        split = hold_out_validation(split, args.holdout)
    write_split(split, args.out)
    meta = {
        "corpus": os.path.abspath(args.corpus),
        "channels": args.channels,
        "ratios": list(ratios),
        "seed": args.seed,
        "holdout": args.holdout,
    }
    with open(os.path.join(args.out, "prepare.json"), "w") as f:
        json.dump(meta, f, indent=1)
    print(
        f"split {len(ids)} recordings -> train {len(split.train_ids)}, "
        f"val {len(split.val_ids)}, test {len(split.test_ids)}"
    )


def _resample_recording(rec):
    for ch in rec.channels:
        if abs(ch.sample_rate - TARGET_RATE) > 1e-9:
            ch.physical = resample(ch.physical, ch.sample_rate, TARGET_RATE)
            ch.digital = None
            ch.sample_rate = TARGET_RATE
    return rec


def cmd_featurize(args) -> None:
    with open(os.path.join(args.split, "prepare.json")) as f:
        meta = json.load(f)
    corpus = args.corpus or meta["corpus"]
    channels = channel_profile(args.channels or meta["channels"])
    split = read_split(args.split)
    out = os.path.join(args.out, args.modality)
    os.makedirs(out, exist_ok=True)
    for rid in split.all_ids():
        rec = _resample_recording(_load_recording(corpus, rid))
        epochs = segment_epochs(rec, channels)
        features = epochs if args.modality == "ts" else compute_spectrogram(epochs)
        save_features(feature_path(out, rid), features)
    print(f"featurized {len(split.all_ids())} recordings -> {out}")


def _train_config(path) -> TrainConfig:
    if not path:
        return TrainConfig()
    with open(path) as f:
        return TrainConfig(**json.load(f))


def _arch_config(args) -> ArchConfig:
    if args.model_dim:
        return ArchConfig().scaled(args.model_dim)
    return ArchConfig()


def cmd_train(args) -> None:
    with open(args.spec) as f:
        spec_text = f.read()
    base = spec_from_text(spec_text)
    cfg = _train_config(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    split = read_split(args.split)
    features_dir = os.path.join(args.features, base.modality)
    train_sets = load_split_features(features_dir, split.train_ids)
    val_sets = load_split_features(features_dir, split.val_ids)
    spec = dataclasses.replace(base, num_channels=train_sets[0].data.shape[1])
    model = build_model(spec, _arch_config(args), seed=cfg.seed)
    print(f"model {spec.key()}: {count_parameters(model):,} parameters")
    record = train(model, train_sets, val_sets, cfg, out_dir=args.out, log=print)
    print(
        f"best epoch {record.epoch_index}: val macro-F1 {record.val_macro_f1:.4f} "
        f"-> {record.weights_path}"
    )


def cmd_evaluate(args) -> None:
    model, meta = load_checkpoint(os.path.join(args.run, "best.ckpt"))
    split = read_split(args.split_dir)
    ids = getattr(split, f"{args.split}_ids")
    features_dir = os.path.join(args.features, model.spec.modality)
    sets = load_split_features(features_dir, ids)
    matrices = [
        sliding_window_predict(model, fs, model.spec.input_epochs) for fs in sets
    ]
    out = args.out or os.path.join(args.run, f"preds-{args.split}")
    save_predictions(out, matrices)
    probs, labels = pool_runs(matrices)
    report = compute_report(probs, labels)
    print(json.dumps(report.as_row(), indent=1))
    print(f"predictions -> {out}")


def _load_run_predictions(dirs, split_name):
    runs = []
    for d in dirs:
        preds = d if os.path.basename(d).startswith("preds-") else os.path.join(
            d, f"preds-{split_name}"
        )
        runs.append(load_predictions(preds))
    return runs


def cmd_compare(args) -> None:
    runs_a = _load_run_predictions(args.runs_a, args.split)
    runs_b = _load_run_predictions(args.runs_b, args.split)
    if len(runs_a) == 1 and len(runs_b) == 1:
        result = bootstrap_diff(runs_a[0], runs_b[0], metric=args.metric,
                                n=args.n, seed=args.seed)
        print(json.dumps(dataclasses.asdict(result), indent=1))
        return
    outcome = pairwise_significance(runs_a, runs_b, metric=args.metric,
                                    n=args.n, seed=args.seed)
    print(f"verdict: {outcome.verdict}")
    print(f"significant pairs (consistent sign): {outcome.fraction_significant:.0%} "
          f"(threshold {outcome.threshold:.0%})")


def cmd_grid(args) -> None:
    split = read_split(args.split)
    features = {}
    for modality in ("ts", "spec"):
        directory = os.path.join(args.features, modality)
        if not os.path.isdir(directory):
            continue
        features[modality] = {
            name: load_split_features(directory, getattr(split, f"{name}_ids"))
            for name in ("train", "val", "test")
        }
    if not features:
        raise SystemExit(f"no featurized modalities under {args.features}")
    some = next(iter(features.values()))["train"]
    num_channels = some[0].data.shape[1]
    grid = GRID_BUILDERS[args.stage](num_channels=(num_channels,))
    grid.cells = [c for c in grid.cells if c.modality in features]
    cfg = RunnerConfig(
        arch=_arch_config(args),
        train=_train_config(args.config),
        eval_split="test" if args.stage == "final" else "val",
        n_bootstrap=args.n,
    )
    table = run_grid(grid, features, cfg, args.out)
    print(table.format_text())


def cmd_report(args) -> None:
    path = os.path.join(args.grid, "results.txt")
    if not os.path.exists(path):
        raise SystemExit(f"no results at {path}; run the grid first")
    with open(path) as f:
        print(f.read())
    print(f"(CSV at {os.path.join(args.grid, 'results.csv')})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stagespace",
        description="Sleep-stage annotation design space: data, models, experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic EDF corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--recordings", type=int, default=40)
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--channels", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--artifact-fraction", type=float, default=0.0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("prepare", help="split a corpus into train/val/test manifests")
    p.add_argument("--corpus", required=True)
    p.add_argument("--channels", required=True, help="channel profile name")
    p.add_argument("--ratios", default="0.8,0.1,0.1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--holdout", type=int, default=0,
                   help="move N train recordings to validation after splitting")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("featurize", help="cache model-ready tensors for a split")
    p.add_argument("--split", required=True, help="directory with split manifests")
    p.add_argument("--modality", choices=("ts", "spec"), required=True)
    p.add_argument("--corpus", default=None, help="override corpus directory")
    p.add_argument("--channels", default=None, help="override channel profile")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("train", help="train one model spec")
    p.add_argument("--spec", required=True, help="flat key=value model spec file")
    p.add_argument("--split", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--config", default=None, help="JSON training config")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--model-dim", type=int, default=0,
                   help="scale widths to this model dimension (0 = full)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="sliding-window evaluation of a run")
    p.add_argument("--run", required=True)
    p.add_argument("--split", default="test", choices=("train", "val", "test"))
    p.add_argument("--split-dir", dest="split_dir", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="bootstrap comparison of run predictions")
    p.add_argument("--runs-a", nargs="+", required=True)
    p.add_argument("--runs-b", nargs="+", required=True)
    p.add_argument("--metric", default="macro_f1", choices=("macro_f1", "accuracy"))
    p.add_argument("--split", default="test")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("grid", help="run an architecture grid stage")
    p.add_argument("stage", choices=sorted(GRID_BUILDERS))
    p.add_argument("--split", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--model-dim", type=int, default=0)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("report", help="print a grid's results table")
    p.add_argument("--grid", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
