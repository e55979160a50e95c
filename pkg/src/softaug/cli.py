"""Command-line entry points.

Exit codes: 0 success, 1 usage error, 2 data/ingestion error, 3
runtime/training error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .classifier import TrainConfig, evaluate, load_model, save_model, train
from .datasets import load_dataset, make_val_split, subsample
from .errors import DataError, DomainError, TrainingError
from .harness import ExperimentConfig, run_experiment
from .policy import AugmentationPolicy, PolicySpace, apply_policy, write_augmented_jsonl
from .search import SearchConfig, optimize
from .textops import load_bundled_lexicon, load_lexicon


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="softaug", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--input", required=True, help="dataset file (csv/tsv/jsonl)")
        p.add_argument("--format", choices=["csv", "tsv", "jsonl"], default=None)

    p = sub.add_parser("augment", help="apply a policy file, write augmented JSONL")
    add_common(p)
    p.add_argument("--lexicon", default=None, help="TSV lexicon (default: bundled)")
    p.add_argument("--policy", required=True, help="policy JSON file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("search", help="optimize the augmentation policy")
    add_common(p)
    p.add_argument("--lexicon", default=None)
    p.add_argument("--n-train", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--no-label-smoothing", action="store_true")
    p.add_argument("--output", required=True, help="output directory")

    p = sub.add_parser("train", help="one training run with a policy")
    add_common(p)
    p.add_argument("--lexicon", default=None)
    p.add_argument("--policy", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", required=True, help="model checkpoint path")

    p = sub.add_parser("eval", help="print test accuracy of a checkpoint")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "tsv", "jsonl"], default=None)

    p = sub.add_parser("compare", help="full multi-seed experiment from a config")
    p.add_argument("--config", required=True, help="experiment config JSON")
    return parser


def _lexicon(path):
    return load_lexicon(path) if path else load_bundled_lexicon()


def _read_policy(path) -> AugmentationPolicy:
    try:
        with open(path, encoding="utf-8") as f:
            return AugmentationPolicy.from_dict(json.load(f))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise DataError(f"cannot read policy file {path}: {e}")


def _eval_split(data):
    return data.splits.get("test") or data.split("train")


def _cmd_augment(args) -> int:
    data = load_dataset(args.input, args.format)
    policy = _read_policy(args.policy)
    examples = apply_policy(
        data.split("train"), data.n_class, policy, _lexicon(args.lexicon),
        random.Random(args.seed),
    )
    write_augmented_jsonl(args.output, examples)
    print(f"wrote {len(examples)} examples to {args.output}")
    return 0


def _cmd_search(args) -> int:
    data = load_dataset(args.input, args.format)
    sub_data = subsample(data, args.n_train, args.seed)
    tr, val = make_val_split(sub_data.split("train"), 0.2, args.seed)
    cfg = SearchConfig(
        n_trials=args.trials,
        n_startup=min(5, max(1, args.trials - 1)),
        seed=args.seed,
        fix_smoothing_to_zero=args.no_label_smoothing,
    )
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "trials.jsonl", "w", encoding="utf-8") as log:
        best, history = optimize(
            tr, val, data.n_class, PolicySpace(), _lexicon(args.lexicon), cfg, log
        )
    (out / "best_policy.json").write_text(best.to_json() + "\n", encoding="utf-8")
    best_score = max(r.score for r in history)
    print(f"best policy (val accuracy {best_score:.4f}) -> {out / 'best_policy.json'}")
    return 0


def _cmd_train(args) -> int:
    data = load_dataset(args.input, args.format)
    policy = _read_policy(args.policy)
    rng = random.Random(args.seed)
    if "val" in data.splits:
        tr, val = data.split("train"), data.split("val")
    else:
        tr, val = make_val_split(data.split("train"), 0.2, args.seed)
    examples = apply_policy(tr, data.n_class, policy, _lexicon(args.lexicon), rng)
    model, history = train(examples, val, data.n_class, TrainConfig(seed=args.seed), rng)
    save_model(model, args.output)
    print(
        f"trained {len(history)} epochs, best val accuracy "
        f"{max(h.val_accuracy for h in history):.4f} -> {args.output}"
    )
    return 0


def _cmd_eval(args) -> int:
    data = load_dataset(args.input, args.format)
    model = load_model(args.model)
    print(f"{evaluate(model, _eval_split(data)):.4f}")
    return 0


def _cmd_compare(args) -> int:
    try:
        cfg = ExperimentConfig.from_json_file(args.config)
    except (OSError, json.JSONDecodeError, TypeError) as e:
        raise DataError(f"cannot read config {args.config}: {e}")
    report = run_experiment(cfg)
    from .harness import render_report

    print(render_report(report), end="")
    return 0


_COMMANDS = {
    "augment": _cmd_augment,
    "search": _cmd_search,
    "train": _cmd_train,
    "eval": _cmd_eval,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except (DataError,) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (DomainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (TrainingError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
