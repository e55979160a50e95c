"""Train the hashed n-gram linear classifier on policy-augmented data.

Uses the bundled synthetic movie-review surrogate in a low-resource
setting (100 originals) and compares plain training against training on
soft-labeled augmented data.
"""
import random

from softaug import (
    AugmentationPolicy,
    TrainConfig,
    apply_policy,
    evaluate,
    load_bundled_lexicon,
    make_synthetic_reviews,
    make_val_split,
    smooth_label,
    subsample,
    train,
)
from softaug.policy import AugmentedExample

data = make_synthetic_reviews()
lex = load_bundled_lexicon()

sub = subsample(data, 100, seed=0)
train_split, val_split = make_val_split(sub.split("train"), 0.2, seed=0)
test_split = data.split("test")
print(f"train {len(train_split)}, val {len(val_split)}, test {len(test_split)}")

# Baseline: originals only, hard labels.
originals = [
    AugmentedExample(text, smooth_label(y, 2, 0.0), "original", i)
    for i, (text, y) in enumerate(train_split)
]
model, history = train(originals, val_split, 2, TrainConfig(), random.Random(0))
print(f"baseline: {len(history)} epochs, test accuracy {evaluate(model, test_split):.3f}")

# Augmented: a hand-picked policy leaning on synonym replacement.
policy = AugmentationPolicy(
    p_aug=1.0, p_sr=0.5, p_ri=0.2, p_rs=0.15, p_rd=0.15,
    alpha_sr=0.25, alpha_ri=0.1, alpha_rs=0.1, alpha_rd=0.1,
    n_aug=4, eps_ori=0.0, eps_aug=0.2,
)
examples = apply_policy(train_split, 2, policy, lex, random.Random(0))
model, history = train(examples, val_split, 2, TrainConfig(), random.Random(0))
print(
    f"augmented ({len(examples)} examples): {len(history)} epochs, "
    f"test accuracy {evaluate(model, test_split):.3f}"
)
