"""Command-line entry point: ``digitfeat {gen,extract,train,eval,bench,sweep}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import harness
from .dataset import generate_synthetic, load_manifest_file, write_pbm
from .errors import DigitFeatError
from .features import SET_IDS, extract_matrix, get_set
from .mlp import TrainConfig, evaluate, load_model, save_model


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _targets(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return lo, hi


def _hidden_overrides(text: str) -> dict:
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected SetK=H pairs, got {item!r}")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad hidden size in {item!r}")
    return out


def _add_data(p, split_opts=True):
    src = p.add_argument_group("data")
    which = src.add_mutually_exclusive_group(required=True)
    which.add_argument("--data", metavar="MANIFEST", help="manifest of 'path,label' lines")
    which.add_argument("--synthetic", type=int, metavar="N",
                       help="generate N synthetic samples per class")
    src.add_argument("--data-seed", type=int, default=1, help="seed for --synthetic")
    if split_opts:
        src.add_argument("--split-seed", type=int, default=1)
        src.add_argument("--train-per-class", type=int, default=200)
        src.add_argument("--test-per-class", type=int, default=100)


def _add_training(p):
    t = p.add_argument_group("training")
    t.add_argument("--eta", type=float, default=0.8, help="learning rate")
    t.add_argument("--alpha", type=float, default=0.7, help="momentum")
    t.add_argument("--epochs", type=int, default=300, help="epoch cap")
    t.add_argument("--tol", type=float, default=0.01,
                   help="stop once the mean pattern error falls below this")
    t.add_argument("--seed", type=int, default=1, help="training seed")
    t.add_argument("--targets", type=_targets, default=(0.1, 0.9), metavar="LO,HI",
                   help="output targets for wrong and right classes")


def _add_parallel(p):
    p.add_argument("--restarts", type=int, default=1,
                   help="independent runs per configuration; the best test accuracy is kept")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitfeat", description="Digit feature extraction and MLP experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a synthetic corpus as PBM files plus manifest.csv")
    p.add_argument("--per-class", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--format", choices=("P1", "P4"), default="P4")

    p = sub.add_parser("extract", help="write a feature CSV for every sample")
    _add_data(p, split_opts=False)
    p.add_argument("--set", required=True, help="feature set id, e.g. Set1")
    p.add_argument("--out", required=True, metavar="FILE")

    p = sub.add_parser("train", help="train one network on the training split")
    _add_data(p)
    p.add_argument("--set", required=True)
    p.add_argument("--hidden", type=int, help="hidden neurons (default per set)")
    _add_training(p)
    p.add_argument("--model-out", required=True, metavar="FILE")

    p = sub.add_parser("eval", help="print accuracy and confusion matrix of a saved model")
    p.add_argument("--model", required=True, metavar="FILE")
    _add_data(p)
    p.add_argument("--set", required=True)
    p.add_argument("--whole", action="store_true",
                   help="evaluate on every sample instead of the test split")

    p = sub.add_parser("bench", help="train and score one network per feature set")
    _add_data(p)
    p.add_argument("--sets", default="all", help="'all' or a comma list such as Set1,Set3")
    p.add_argument("--hidden", type=_hidden_overrides, default={}, metavar="SetK=H,...")
    _add_training(p)
    _add_parallel(p)
    p.add_argument("--out", required=True, metavar="FILE")

    p = sub.add_parser("sweep", help="test accuracy over a range of hidden-layer sizes")
    _add_data(p)
    p.add_argument("--set", required=True)
    p.add_argument("--hidden", type=_int_list, required=True, metavar="H1,H2,...")
    _add_training(p)
    _add_parallel(p)
    p.add_argument("--out", required=True, metavar="FILE")
    return parser


def _train_config(args) -> TrainConfig:
    lo, hi = args.targets
    return TrainConfig(eta=args.eta, alpha=args.alpha, max_epochs=args.epochs,
                       sse_tol=args.tol, seed=args.seed, target_lo=lo, target_hi=hi)


def _experiment(args, **extra) -> harness.ExperimentConfig:
    return harness.ExperimentConfig(
        manifest=args.data, synthetic_per_class=args.synthetic, data_seed=args.data_seed,
        split_seed=args.split_seed, train_per_class=args.train_per_class,
        test_per_class=args.test_per_class, **extra)


def cmd_gen(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ds = generate_synthetic(args.per_class, args.seed)
    lines = []
    for n, sample in enumerate(ds):
        name = f"d{sample.label}_{n:05d}.pbm"
        (out / name).write_bytes(write_pbm(sample.image, args.format))
        lines.append(f"{name},{sample.label}")
    harness.write_text(out / "manifest.csv", "\n".join(lines) + "\n")
    print(f"wrote {len(ds)} images to {out}")


def cmd_extract(args):
    fset = get_set(args.set)
    if args.data is not None:
        ds = load_manifest_file(args.data)
    else:
        ds = generate_synthetic(args.synthetic, args.data_seed)
    X = extract_matrix(ds.images, fset)
    harness.write_text(args.out, harness.write_features(X, ds.labels))
    print(f"wrote {len(ds)} rows of {fset.dimension} features to {args.out}")


def cmd_train(args):
    fset = get_set(args.set)
    cfg = _experiment(args)
    pair = harness.load_split(cfg)
    Xtr = extract_matrix(pair.train.images, fset)
    n_hidden = args.hidden if args.hidden is not None else cfg.hidden_for(fset.id)
    model, epochs = harness.fit(Xtr, pair.train.labels, n_hidden, _train_config(args))
    harness.write_text(args.model_out, save_model(model))
    train_acc = evaluate(model, Xtr, pair.train.labels)[0]
    line = f"{fset.id} {model.architecture} epochs={epochs} train_acc={100 * train_acc:.2f}"
    if len(pair.test):
        test_acc = evaluate(model, extract_matrix(pair.test.images, fset), pair.test.labels)[0]
        line += f" test_acc={100 * test_acc:.2f}"
    print(line)


def cmd_eval(args):
    fset = get_set(args.set)
    model = load_model(Path(args.model).read_text(encoding="utf-8"))
    cfg = _experiment(args)
    ds = harness.load_data(cfg) if args.whole else harness.load_split(cfg).test
    acc, confusion = evaluate(model, extract_matrix(ds.images, fset), ds.labels)
    print(f"accuracy {100 * acc:.2f} ({int(np.trace(confusion))}/{len(ds)})")
    print(harness.confusion_text(confusion))


def cmd_bench(args):
    sets = SET_IDS if args.sets == "all" else [s for s in args.sets.split(",") if s]
    cfg = _experiment(args, train=_train_config(args), sets=tuple(sets), hidden=args.hidden,
                      restarts=args.restarts, jobs=args.jobs)
    text = harness.write_report(harness.run_bench(cfg), "bench")
    harness.write_text(args.out, text)
    sys.stdout.write(text)


def cmd_sweep(args):
    cfg = _experiment(args, train=_train_config(args), restarts=args.restarts, jobs=args.jobs)
    rows, best = harness.run_sweep(cfg, args.set, args.hidden)
    text = harness.write_report(rows, "sweep")
    harness.write_text(args.out, text)
    sys.stdout.write(text)
    print(f"best hidden size: {best}")


COMMANDS = {"gen": cmd_gen, "extract": cmd_extract, "train": cmd_train, "eval": cmd_eval,
            "bench": cmd_bench, "sweep": cmd_sweep}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (DigitFeatError, OSError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"digitfeat {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
